#pragma once

#include <stdexcept>

#include "wigner/ensembles.hpp"
#include "wigner/rational.hpp"
#include "wigner/step_function.hpp"

namespace wigner {

/// Hard caps for the exact enumeration oracles. Exceeding a cap is an
/// explicit refusal; the oracles never truncate or sample.
struct WalkBudget {
    long long max_n_l_le3 = 40;
    long long max_n_l4 = 16;

    void check(long long n, int l) const {
        if (l < 1) throw std::invalid_argument("walk enumeration: l >= 1 required");
        long long cap = 0;
        if (l <= 3) cap = max_n_l_le3;
        else if (l == 4) cap = max_n_l4;
        if (cap == 0 || n > cap)
            throw BudgetExceeded(n, l, cap);
    }

    struct BudgetExceeded : std::runtime_error {
        BudgetExceeded(long long n, int l, long long cap)
            : std::runtime_error("enumeration budget exceeded: n=" + std::to_string(n) +
                                 ", l=" + std::to_string(l) + ", cap=" + std::to_string(cap)) {}
    };
};

/// l-fold composition of apply_kernel; l = 0 returns f unchanged.
StepFunction apply_power(const KernelOp& k, const StepFunction& f, int l);

/// K_n^l(1_P) split into the closed-walk part, the centered open part and
/// the open part's expectation: V1 + V2 + V3 reconstructs apply_power
/// exactly. V1 is supported on P's grid indices (walks with j_0 = j_l = i);
/// V3 integrates the open walks entry law edge by edge, so it is
/// deterministic given (law, n, l, P).
struct VDecomposition {
    StepFunction v1;
    StepFunction v2;
    StepFunction v3;
};

VDecomposition v_decompose(const WignerSample& w, const EntryLaw& law, const IntervalQ& p, int l,
                           const WalkBudget& budget = {});

/// The V3 component alone. It depends only on (law, n, l, P), not on the
/// sampled entries, so experiments compute it once outside replica loops.
StepFunction v3_exact(const EntryLaw& law, long long n, const IntervalQ& p, int l,
                      const WalkBudget& budget = {});

/// Signed non-backtracking line of length l: the sum over paths
/// i = j_0, ..., j_l = j with all vertices distinct of prod x / n^{l/2};
/// zero on the diagonal, symmetric in (i,j). Exact brute force.
double xi_nb(const WignerSample& w, long long i, long long j, int l, const WalkBudget& budget = {});

/// Kernel action of B_{n,l} = n xi^l on an indicator:
/// out(i/n) = sum_{j in P} xi^l_{i,j}.
StepFunction b_nl_apply(const WignerSample& w, int l, const IntervalQ& p,
                        const WalkBudget& budget = {});

/// X_{Q,l,P,n} = n^{-1/2} sum_{i0 in Q} B_{n,l}(1_P)(i0/n): the aggregated
/// all-distinct path sum from Q to P.
double aggregated_x(const WignerSample& w, const IntervalQ& q, const IntervalQ& p, int l,
                    const WalkBudget& budget = {});

/// Closed form for aggregated_x at l <= 3: the all-distinct constraint is
/// expanded by inclusion-exclusion over coincidence patterns of the l+1
/// indices, leaving only matrix products, Hadamard products and diagonal
/// extractions. Lets desk-scale n exceed the brute-force budget; validated
/// against aggregated_x before use anywhere else.
double fast_simple_path_sum(const WignerSample& w, const IntervalQ& q, const IntervalQ& p, int l);

}  // namespace wigner
