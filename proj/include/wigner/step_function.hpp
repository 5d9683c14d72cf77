#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wigner/rational.hpp"

namespace wigner {

/// 1-based index range {lo,...,hi} of grid points i/n lying in an interval.
struct IndexRange {
    long long lo;
    long long hi;
    bool empty() const { return lo > hi; }
    long long count() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(long long i) const { return lo <= i && i <= hi; }
};

/// Grid resolution of (a,b]: indices {floor(a n)+1, ..., floor(b n)}.
///
/// This is the single endpoint convention used project-wide; every module
/// that turns an interval into grid indices goes through here.
inline IndexRange grid_indices(const IntervalQ& p, long long n) {
    if (n < 1) throw std::invalid_argument("grid_indices: n >= 1 required");
    return IndexRange{p.a.floor_mul(n) + 1, p.b.floor_mul(n)};
}

/// A vector in L^2({1/n,...,n/n}, mu_n): values[i-1] = f(i/n).
///
/// For the set-function embedding, f is read as the step function equal to
/// values[i-1] on the cell ((i-1)/n, i/n], so the n cells tile (0,1] and the
/// grid point i/n carries its own value.
class StepFunction {
public:
    explicit StepFunction(long long n, double fill = 0.0) : n_(n), v_(check_n(n), fill) {}
    StepFunction(long long n, std::vector<double> values) : n_(n), v_(std::move(values)) {
        check_n(n);
        if (static_cast<long long>(v_.size()) != n_)
            throw std::invalid_argument("StepFunction: values length must equal n");
        for (double x : v_)
            if (!std::isfinite(x)) throw std::invalid_argument("StepFunction: entries must be finite");
    }

    long long n() const { return n_; }

    /// Value at grid point i/n, 1-based.
    double at(long long i) const { return v_[static_cast<std::size_t>(i - 1)]; }
    double& at(long long i) { return v_[static_cast<std::size_t>(i - 1)]; }

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

private:
    static std::size_t check_n(long long n) {
        if (n < 1) throw std::invalid_argument("StepFunction: n >= 1 required");
        return static_cast<std::size_t>(n);
    }
    long long n_;
    std::vector<double> v_;
};

inline void require_same_resolution(const StepFunction& f, const StepFunction& g) {
    if (f.n() != g.n()) throw std::invalid_argument("resolution mismatch between step functions");
}

/// <f,g> = (1/n) sum f(i/n) g(i/n).
inline double inner_mun(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f, g);
    double s = 0.0;
    for (long long i = 1; i <= f.n(); ++i) s += f.at(i) * g.at(i);
    return s / static_cast<double>(f.n());
}

inline double l2_norm_sq_mun(const StepFunction& f) { return inner_mun(f, f); }

inline double l2_norm_mun(const StepFunction& f) { return std::sqrt(l2_norm_sq_mun(f)); }

inline StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f, g);
    StepFunction h(f.n());
    for (long long i = 1; i <= f.n(); ++i) h.at(i) = f.at(i) + g.at(i);
    return h;
}

inline StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f, g);
    StepFunction h(f.n());
    for (long long i = 1; i <= f.n(); ++i) h.at(i) = f.at(i) - g.at(i);
    return h;
}

inline StepFunction operator*(double c, const StepFunction& f) {
    StepFunction h(f.n());
    for (long long i = 1; i <= f.n(); ++i) h.at(i) = c * f.at(i);
    return h;
}

/// Indicator of (a,b] on the grid: 1 exactly on grid_indices(P, n).
inline StepFunction indicator_on_grid(const IntervalQ& p, long long n) {
    StepFunction f(n, 0.0);
    IndexRange r = grid_indices(p, n);
    for (long long i = std::max(1LL, r.lo); i <= std::min(n, r.hi); ++i) f.at(i) = 1.0;
    return f;
}

/// I_{f,1/2}((a,b]) = sum_{j=floor(an)+1}^{floor(bn)} f(j/n) n^{-1/2};
/// the discrete sqrt(dx)-integral bridging grid vectors and set functions.
inline double i_half(const StepFunction& f, const IntervalQ& p) {
    IndexRange r = grid_indices(p, f.n());
    double s = 0.0;
    for (long long i = std::max(1LL, r.lo); i <= std::min(f.n(), r.hi); ++i) s += f.at(i);
    return s / std::sqrt(static_cast<double>(f.n()));
}

}  // namespace wigner
