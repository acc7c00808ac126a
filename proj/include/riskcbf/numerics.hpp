#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>

#include "riskcbf/errors.hpp"

namespace riskcbf {

// Fixed-capacity dense kernels. Domain vectors/matrices are 2- or 3-dimensional;
// the extra capacity (up to 6) serves internal solver systems (barrier Newton,
// QP Schur complements) without heap traffic.
inline constexpr int kMaxDim = 6;

class Vec {
public:
    Vec() : n_(0), v_{} {}
    explicit Vec(int n, double fill = 0.0);
    Vec(std::initializer_list<double> xs);

    static Vec xy(double x, double y) { return Vec{x, y}; }
    static Vec xyz(double x, double y, double z) { return Vec{x, y, z}; }

    int dim() const { return n_; }
    double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec operator*(double s) const;
    Vec operator-() const { return *this * -1.0; }
    Vec& operator+=(const Vec& o);

    double dot(const Vec& o) const;
    double norm() const;
    bool all_finite() const;

private:
    int n_;
    std::array<double, kMaxDim> v_;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

// Symmetric real matrix with runtime dimension. Full row-major storage; the
// two triangles are kept identical by construction.
class SymMat {
public:
    SymMat() : n_(0), a_{} {}
    explicit SymMat(int n);

    static SymMat identity(int n);
    static SymMat diag(std::initializer_list<double> d);
    // Validates symmetry of row-major entries to 1e-12 absolute.
    static SymMat from_rows(int n, const double* entries);

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, double v) { a_[idx(i, j)] = v; a_[idx(j, i)] = v; }
    void add(int i, int j, double v) {
        a_[idx(i, j)] += v;
        if (i != j) a_[idx(j, i)] += v;
    }

    Vec mul(const Vec& x) const;
    SymMat operator+(const SymMat& o) const;
    SymMat operator*(double s) const;
    double max_abs_diag() const;
    double quad(const Vec& x) const;  // xᵀ A x

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * kMaxDim + static_cast<std::size_t>(j);
    }
    int n_;
    std::array<double, kMaxDim * kMaxDim> a_;
};

// Lower-triangular Cholesky factor; solves A x = b via two triangular sweeps.
class LowerTri {
public:
    explicit LowerTri(int n);
    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, double v) { a_[idx(i, j)] = v; }

    Vec solve_forward(const Vec& b) const;   // L y = b
    Vec solve_backward(const Vec& y) const;  // Lᵀ x = y
    Vec solve(const Vec& b) const;           // (L Lᵀ) x = b
    double det() const;                      // det(L)

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * kMaxDim + static_cast<std::size_t>(j);
    }
    int n_;
    std::array<double, kMaxDim * kMaxDim> a_;
};

// Cholesky factorization A = L Lᵀ. Throws NotPositiveDefinite when a pivot
// falls at or below 1e-12 times the largest diagonal entry.
LowerTri cholesky(const SymMat& a);

Vec solve_spd(const SymMat& a, const Vec& b);

// Bisection-safeguarded Newton root finder on a bracket [lo, hi] where f(lo)
// and f(hi) have opposite signs. If no derivative is supplied, secant steps
// are used in place of Newton. The iterate never leaves the bracket.
double root_find_monotone(const std::function<double(double)>& f, double lo, double hi,
                          double tol,
                          const std::function<double(double)>& df = nullptr);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation, and
// its inverse in x (monotone root find).
double reg_inc_beta(double a, double b, double x);
double reg_inc_beta_inv(double a, double b, double p);

struct EigSym {
    Vec values;                     // ascending
    std::array<Vec, 3> vectors;    // orthonormal, vectors[k] pairs with values[k]
};

// Symmetric eigendecomposition, dim ≤ 3. Closed form for 2×2, cyclic Jacobi
// sweeps for 3×3.
EigSym eig_sym(const SymMat& a);

}  // namespace riskcbf
