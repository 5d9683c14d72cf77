#pragma once

#include <stdexcept>
#include <vector>

namespace wigner {

/// Exact binomial coefficient in 64-bit integers (throws on overflow).
inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    __int128 r = 1;
    for (int j = 1; j <= k; ++j) {
        r = r * (n - k + j) / j;
        if (r > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("binomial overflow");
    }
    return static_cast<long long>(r);
}

inline long long catalan(int k) { return binomial(2 * k, k) / (k + 1); }

/// Semicircle moments: beta_{2k} = Catalan(k), odd moments vanish.
inline long long beta_moment(int l) {
    if (l < 0) throw std::invalid_argument("beta_moment: l >= 0 required");
    if (l % 2 == 1) return 0;
    return catalan(l / 2);
}

inline void require_stem_parity(int l, int m) {
    if (m < 1 || m > l || (l - m) % 2 != 0)
        throw std::invalid_argument("stem coefficient needs 1 <= m <= l with l-m even");
}

/// a(l,m) = (m+1)/(l+1) * C(l+1, (l-m)/2); always an integer.
inline long long stem_coeff(int l, int m) {
    require_stem_parity(l, m);
    long long b = binomial(l + 1, (l - m) / 2);
    __int128 num = static_cast<__int128>(m + 1) * b;
    if (num % (l + 1) != 0) throw std::logic_error("stem_coeff: unexpected non-integer value");
    return static_cast<long long>(num / (l + 1));
}

/// Independent route to a(l,m): coefficient of x^{(l-m)/2} in C(x)^{m+1},
/// where C(x) is the Catalan generating function. Computed by repeated
/// series convolution, no binomial formula involved.
inline long long dyck_forest_count(int l, int m) {
    require_stem_parity(l, m);
    const int h = (l - m) / 2;
    std::vector<long long> cat(static_cast<std::size_t>(h) + 1);
    for (int j = 0; j <= h; ++j) cat[static_cast<std::size_t>(j)] = catalan(j);
    std::vector<long long> power(cat);  // C(x)^1
    for (int p = 2; p <= m + 1; ++p) {
        std::vector<long long> next(static_cast<std::size_t>(h) + 1, 0);
        for (int i = 0; i <= h; ++i)
            for (int j = 0; i + j <= h; ++j) {
                __int128 t = static_cast<__int128>(power[static_cast<std::size_t>(i)]) *
                             cat[static_cast<std::size_t>(j)];
                __int128 s = next[static_cast<std::size_t>(i + j)] + t;
                if (s > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("dyck_forest_count overflow");
                next[static_cast<std::size_t>(i + j)] = static_cast<long long>(s);
            }
        power = std::move(next);
    }
    return power[static_cast<std::size_t>(h)];
}

}  // namespace wigner
