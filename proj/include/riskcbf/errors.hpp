#pragma once

#include <stdexcept>
#include <string>

namespace riskcbf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numerics
struct NotPositiveDefinite : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// geometry / collision
struct DegenerateCloud : Error { using Error::Error; };
struct SolverFailure : Error { using Error::Error; };

// conformal calibration
struct InsufficientCalibration : Error { using Error::Error; };
struct Unachievable : Error { using Error::Error; };

// feasibility / control
struct EmptyInterior : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

}  // namespace riskcbf
