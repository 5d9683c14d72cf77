#pragma once

#include <vector>

#include "wigner/rational.hpp"
#include "wigner/rng.hpp"

namespace wigner {

/// Brownian motion sampled on {0, 1/n, ..., 1}: B(0) = 0, independent
/// N(0, 1/n) increments per grid cell.
struct GridPath {
    long long n = 0;
    std::vector<double> values;  // size n+1, values[i] = B(i/n)

    double at_index(long long i) const { return values[static_cast<std::size_t>(i)]; }

    /// Value at a rational point, resolved to the grid by floor(x n).
    double at(const Rational& x) const { return values[static_cast<std::size_t>(x.floor_mul(n))]; }
};

GridPath sample_bm(long long n, Rng& rng);

/// Donsker partial-sum path W(i/n) = (X_1 + ... + X_i) / sqrt(n) from an
/// i.i.d. mean-0 variance-1 sample.
GridPath donsker_path(const std::vector<double>& xs);

/// Sum of squared increments over the dyadic partition at the given level;
/// requires the path resolution to be divisible by 2^level.
double dyadic_quadratic_variation(const GridPath& path, int level);

/// Brownian sheet on the unit square at grid resolution n: zero on the axes,
/// cell increments i.i.d. N(0, 1/n^2) cumulated in both directions, so
/// rectangle increments over disjoint rectangles are independent with
/// variance equal to the rectangle area.
struct GridSheet {
    long long n = 0;
    std::vector<double> cum;  // (n+1) x (n+1), row-major; cum[i*(n+1)+j] = B(i/n, j/n)

    double at_index(long long i, long long j) const {
        return cum[static_cast<std::size_t>(i * (n + 1) + j)];
    }

    /// B over the rectangle (i0/n, i1/n] x (j0/n, j1/n].
    double rect(long long i0, long long i1, long long j0, long long j1) const {
        return at_index(i1, j1) - at_index(i0, j1) - at_index(i1, j0) + at_index(i0, j0);
    }

    /// Rectangle increment over rational Q x P, endpoints resolved by floor.
    double rect(const IntervalQ& q, const IntervalQ& p) const {
        return rect(q.a.floor_mul(n), q.b.floor_mul(n), p.a.floor_mul(n), p.b.floor_mul(n));
    }
};

GridSheet sample_sheet(long long n, Rng& rng);

}  // namespace wigner
