#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "wigner/brownian.hpp"
#include "wigner/catalan.hpp"
#include "wigner/linalg.hpp"
#include "wigner/rational.hpp"
#include "wigner/rng.hpp"

namespace wigner {

/// The field Gamma_l(x,y) = (C_l(x,y) + C_l(y,x)) / sqrt(2) with
/// C_l = sum over stem lengths m (same parity as l) of a(l,m) B_m, where the
/// sheets B_m are shared across levels.
struct GammaSpec {
    int level = 0;
    std::vector<std::pair<int, long long>> terms;  // (m, a(l,m))

    static GammaSpec for_level(int l) {
        GammaSpec g;
        g.level = l;
        for (int m = (l % 2 == 0) ? 2 : 1; m <= l; m += 2) g.terms.emplace_back(m, stem_coeff(l, m));
        return g;
    }
};

/// One shared Brownian sheet per stem index m, so Gamma fields at different
/// levels are correlated exactly as the construction requires. Immutable
/// after generation.
class SheetBank {
public:
    static SheetBank generate(int max_m, long long resolution, Rng rng) {
        SheetBank bank;
        bank.resolution_ = resolution;
        for (int m = 1; m <= max_m; ++m) {
            Rng stream = rng.stream(0x53484545ULL, static_cast<std::uint64_t>(m));
            bank.sheets_.emplace(m, sample_sheet(resolution, stream));
        }
        return bank;
    }

    long long resolution() const { return resolution_; }

    const GridSheet& sheet(int m) const {
        auto it = sheets_.find(m);
        if (it == sheets_.end()) throw std::invalid_argument("SheetBank: missing sheet " + std::to_string(m));
        return it->second;
    }

private:
    long long resolution_ = 0;
    std::map<int, GridSheet> sheets_;
};

/// The pairing int_Q psi_{l,P} sqrt(dx): the rectangle increment of Gamma_l
/// over Q x P, i.e. (1/sqrt 2) sum_m a(l,m) (B_m(QxP) + B_m(PxQ)).
double psi_increment(const GammaSpec& spec, const IntervalQ& p, const IntervalQ& q,
                     const SheetBank& bank);

/// Closed-form inner product <psi_{l1,P1}, psi_{l2,P2}> on the limit space:
/// the quadratic covariation of the Gamma slice increments,
///   sum over shared m of a(l1,m) a(l2,m) * |P1 cap P2|,
/// zero when l1, l2 have opposite parity. The symmetrized cross term
/// (direct vs transposed sheet) contributes nothing to quadratic
/// covariation; the Monte Carlo oracle below verifies that.
double psi_cov(int l1, const IntervalQ& p1, int l2, const IntervalQ& p2);

/// Covariance of the pairings int_Q psi_{l,P} sqrt(dx) themselves; unlike
/// the quadratic covariation this keeps the transposed-sheet term:
///   sum over shared m of a(l1,m) a(l2,m) *
///       (|Q1 cap Q2| |P1 cap P2| + |Q1 cap P2| |P1 cap Q2|).
double psi_pairing_cov(int l1, const IntervalQ& p1, const IntervalQ& q1, int l2,
                       const IntervalQ& p2, const IntervalQ& q2);

/// Same pairing covariance for the plain non-backtracking kernels B_{n,l}:
/// one sheet per length, unit coefficient, diagonal in l.
double bnl_pairing_cov(int l1, const IntervalQ& p1, const IntervalQ& q1, int l2,
                       const IntervalQ& p2, const IntervalQ& q2);

/// Monte Carlo oracle for psi_cov: dyadic quadratic covariation of the Gamma
/// slice increments on fresh sheet banks. Returns per-pair mean and standard
/// error over replicas, indexed like the (level, interval) basis: entry
/// (i, j) pairs basis element i = (levels[i / #intervals], intervals[i mod]).
struct PsiCovMc {
    Mat mean;
    Mat se;
    long long replicas = 0;
    long long resolution = 0;
};

PsiCovMc psi_cov_mc(const std::vector<int>& levels, const std::vector<IntervalQ>& intervals,
                    long long resolution, long long replicas, std::uint64_t seed);

}  // namespace wigner
