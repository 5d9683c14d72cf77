#include "wigner/brownian.hpp"

#include <cmath>
#include <stdexcept>

namespace wigner {

GridPath sample_bm(long long n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_bm: n >= 1 required");
    GridPath p;
    p.n = n;
    p.values.resize(static_cast<std::size_t>(n) + 1);
    p.values[0] = 0.0;
    const double sd = 1.0 / std::sqrt(static_cast<double>(n));
    for (long long i = 1; i <= n; ++i)
        p.values[static_cast<std::size_t>(i)] =
            p.values[static_cast<std::size_t>(i - 1)] + sd * rng.gaussian();
    return p;
}

GridPath donsker_path(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("donsker_path: empty sample");
    GridPath p;
    p.n = static_cast<long long>(xs.size());
    p.values.resize(xs.size() + 1);
    p.values[0] = 0.0;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        p.values[i + 1] = p.values[i] + xs[i] * inv_sqrt_n;
    return p;
}

double dyadic_quadratic_variation(const GridPath& path, int level) {
    const long long cells = 1LL << level;
    if (path.n % cells != 0)
        throw std::invalid_argument("dyadic_quadratic_variation: resolution not divisible by 2^level");
    const long long stride = path.n / cells;
    double s = 0.0;
    for (long long c = 0; c < cells; ++c) {
        double d = path.at_index((c + 1) * stride) - path.at_index(c * stride);
        s += d * d;
    }
    return s;
}

GridSheet sample_sheet(long long n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_sheet: n >= 1 required");
    GridSheet s;
    s.n = n;
    const std::size_t w = static_cast<std::size_t>(n) + 1;
    s.cum.assign(w * w, 0.0);
    const double sd = 1.0 / static_cast<double>(n);
    // fill cells, then cumulate rows and columns
    for (long long i = 1; i <= n; ++i)
        for (long long j = 1; j <= n; ++j)
            s.cum[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)] = sd * rng.gaussian();
    for (long long i = 1; i <= n; ++i)
        for (long long j = 1; j <= n; ++j)
            s.cum[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)] +=
                s.cum[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j - 1)];
    for (long long j = 1; j <= n; ++j)
        for (long long i = 1; i <= n; ++i)
            s.cum[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)] +=
                s.cum[static_cast<std::size_t>(i - 1) * w + static_cast<std::size_t>(j)];
    return s;
}

}  // namespace wigner
