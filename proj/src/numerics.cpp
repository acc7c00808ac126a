#include "riskcbf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace riskcbf {

namespace {

void check_dim(int n) {
    if (n < 1 || n > kMaxDim) throw DomainError("dimension out of range");
}

}  // namespace

Vec::Vec(int n, double fill) : n_(n), v_{} {
    check_dim(n);
    v_.fill(0.0);
    for (int i = 0; i < n; ++i) v_[static_cast<std::size_t>(i)] = fill;
}

Vec::Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())), v_{} {
    check_dim(n_);
    int i = 0;
    for (double x : xs) v_[static_cast<std::size_t>(i++)] = x;
}

Vec Vec::operator+(const Vec& o) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = (*this)[i] + o[i];
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = (*this)[i] - o[i];
    return r;
}

Vec Vec::operator*(double s) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = (*this)[i] * s;
    return r;
}

Vec& Vec::operator+=(const Vec& o) {
    for (int i = 0; i < n_; ++i) (*this)[i] += o[i];
    return *this;
}

double Vec::dot(const Vec& o) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += (*this)[i] * o[i];
    return s;
}

double Vec::norm() const { return std::sqrt(dot(*this)); }

bool Vec::all_finite() const {
    for (int i = 0; i < n_; ++i)
        if (!std::isfinite((*this)[i])) return false;
    return true;
}

SymMat::SymMat(int n) : n_(n), a_{} {
    check_dim(n);
    a_.fill(0.0);
}

SymMat SymMat::identity(int n) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymMat SymMat::diag(std::initializer_list<double> d) {
    SymMat m(static_cast<int>(d.size()));
    int i = 0;
    for (double x : d) {
        m.set(i, i, x);
        ++i;
    }
    return m;
}

SymMat SymMat::from_rows(int n, const double* entries) {
    SymMat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double hij = entries[i * n + j];
            double hji = entries[j * n + i];
            if (std::fabs(hij - hji) > 1e-12)
                throw DomainError("matrix not symmetric to 1e-12");
            m.a_[m.idx(i, j)] = 0.5 * (hij + hji);
        }
    return m;
}

Vec SymMat::mul(const Vec& x) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

SymMat SymMat::operator+(const SymMat& o) const {
    SymMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) r.set(i, j, (*this)(i, j) + o(i, j));
    return r;
}

SymMat SymMat::operator*(double s) const {
    SymMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) r.set(i, j, (*this)(i, j) * s);
    return r;
}

double SymMat::max_abs_diag() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) m = std::max(m, std::fabs((*this)(i, i)));
    return m;
}

double SymMat::quad(const Vec& x) const { return x.dot(mul(x)); }

LowerTri::LowerTri(int n) : n_(n), a_{} {
    check_dim(n);
    a_.fill(0.0);
}

Vec LowerTri::solve_forward(const Vec& b) const {
    Vec y(n_);
    for (int i = 0; i < n_; ++i) {
        double s = b[i];
        for (int j = 0; j < i; ++j) s -= (*this)(i, j) * y[j];
        y[i] = s / (*this)(i, i);
    }
    return y;
}

Vec LowerTri::solve_backward(const Vec& y) const {
    Vec x(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n_; ++j) s -= (*this)(j, i) * x[j];
        x[i] = s / (*this)(i, i);
    }
    return x;
}

Vec LowerTri::solve(const Vec& b) const { return solve_backward(solve_forward(b)); }

double LowerTri::det() const {
    double d = 1.0;
    for (int i = 0; i < n_; ++i) d *= (*this)(i, i);
    return d;
}

LowerTri cholesky(const SymMat& a) {
    const int n = a.dim();
    const double pivot_floor = 1e-12 * std::max(a.max_abs_diag(), 1e-300);
    LowerTri l(n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= pivot_floor) throw NotPositiveDefinite("cholesky pivot below threshold");
        const double ljj = std::sqrt(d);
        l.set(j, j, ljj);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l.set(i, j, s / ljj);
        }
    }
    return l;
}

Vec solve_spd(const SymMat& a, const Vec& b) { return cholesky(a).solve(b); }

double root_find_monotone(const std::function<double(double)>& f, double lo, double hi,
                          double tol, const std::function<double(double)>& df) {
    double fa = f(lo);
    double fb = f(hi);
    if (std::fabs(fa) <= tol) return lo;
    if (std::fabs(fb) <= tol) return hi;
    if ((fa > 0.0) == (fb > 0.0)) throw NoBracket("f(lo) and f(hi) have the same sign");

    double a = lo, b = hi;
    double x = 0.5 * (a + b);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = f(x);
        if (std::fabs(fx) <= tol) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        double next;
        bool have_step = false;
        if (df) {
            const double d = df(x);
            if (d != 0.0 && std::isfinite(d)) {
                next = x - fx / d;
                have_step = std::isfinite(next) && next > std::min(a, b) && next < std::max(a, b);
            }
        } else {
            const double denom = fb - fa;
            if (denom != 0.0) {
                next = (a * fb - b * fa) / denom;  // secant through the bracket
                have_step = std::isfinite(next) && next > std::min(a, b) && next < std::max(a, b);
            }
        }
        x = have_step ? next : 0.5 * (a + b);
        if (a == b) break;
    }
    throw NoConvergence("root_find_monotone: iteration cap reached");
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw NoConvergence("incomplete beta continued fraction failed");
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta: a, b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double reg_inc_beta_inv(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta_inv: a, b must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("reg_inc_beta_inv: p outside [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const double ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    auto fn = [&](double x) { return reg_inc_beta(a, b, x) - p; };
    auto pdf = [&](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_beta);
    };
    return root_find_monotone(fn, 0.0, 1.0, 1e-13, pdf);
}

namespace {

EigSym eig_sym_2x2(const SymMat& m) {
    const double a11 = m(0, 0), a12 = m(0, 1), a22 = m(1, 1);
    const double mid = 0.5 * (a11 + a22);
    const double disc = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
    EigSym e;
    e.values = Vec{mid - disc, mid + disc};
    for (int k = 0; k < 2; ++k) {
        const double lam = e.values[k];
        Vec v1{a12, lam - a11};
        Vec v2{lam - a22, a12};
        Vec v = (v1.norm() >= v2.norm()) ? v1 : v2;
        if (v.norm() < 1e-300) v = (k == 0) ? Vec{1.0, 0.0} : Vec{0.0, 1.0};
        e.vectors[static_cast<std::size_t>(k)] = v * (1.0 / v.norm());
    }
    // Degenerate (equal eigenvalue) case: force an orthonormal pair.
    if (disc < 1e-300) {
        e.vectors[0] = Vec{1.0, 0.0};
        e.vectors[1] = Vec{0.0, 1.0};
    }
    return e;
}

EigSym eig_sym_3x3(const SymMat& m) {
    double a[3][3];
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);

    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::fabs(a[0][1]) + std::fabs(a[0][2]) + std::fabs(a[1][2]);
        if (off < 1e-15 * (1.0 + m.max_abs_diag())) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }

    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int i, int j) { return a[i][i] < a[j][j]; });
    EigSym e;
    e.values = Vec{a[order[0]][order[0]], a[order[1]][order[1]], a[order[2]][order[2]]};
    for (int k = 0; k < 3; ++k)
        e.vectors[static_cast<std::size_t>(k)] =
            Vec{v[0][order[k]], v[1][order[k]], v[2][order[k]]};
    return e;
}

}  // namespace

EigSym eig_sym(const SymMat& a) {
    switch (a.dim()) {
        case 1: {
            EigSym e;
            e.values = Vec{a(0, 0)};
            e.vectors[0] = Vec{1.0};
            return e;
        }
        case 2:
            return eig_sym_2x2(a);
        case 3:
            return eig_sym_3x3(a);
        default:
            throw DomainError("eig_sym: dim must be <= 3");
    }
}

}  // namespace riskcbf
