#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wigner/entry_law.hpp"
#include "wigner/linalg.hpp"
#include "wigner/rng.hpp"
#include "wigner/step_function.hpp"

namespace wigner {

/// One realization of the symmetric unscaled entry array x_{i,j}. The kernel
/// scaling K(i/n, j/n) = sqrt(n) x_{i,j} lives in KernelOp. Immutable after
/// sampling; safe to share across Monte Carlo workers.
struct WignerSample {
    long long n = 0;
    Mat entries;            // n x n, entries(i,j) == entries(j,i), raw x
    std::uint64_t seed = 0;
    std::string law = "synthetic";

    double x(long long i, long long j) const {  // 1-based
        return entries.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    }
};

/// Upper triangle and diagonal i.i.d. from the law, mirrored below.
/// The diagonal uses the same mean-0, variance-1 law as the off-diagonal;
/// it contributes O(1/sqrt(n)) to every statistic computed here.
WignerSample sample_wigner(long long n, const EntryLaw& law, std::uint64_t seed);

/// Wraps an explicit symmetric array (synthetic kernels, tests).
WignerSample wigner_from_entries(Mat entries);

/// The scaled matrix W = x / sqrt(n), as a dense matrix.
Mat scaled_matrix(const WignerSample& w);

/// Kernel view of a sample on L^2(mu_n): K(i/n, j/n) = sqrt(n) x_{i,j}.
/// Non-owning; the sample must outlive the view.
class KernelOp {
public:
    explicit KernelOp(const WignerSample& sample) : sample_(&sample) {}
    const WignerSample& sample() const { return *sample_; }
    long long n() const { return sample_->n; }

private:
    const WignerSample* sample_;
};

/// K(f)(i/n) = (1/n) sum_j K(i/n, j/n) f(j/n); with the kernel scaling this
/// is exactly the matrix action of W = x / sqrt(n) on the value vector.
StepFunction apply_kernel(const KernelOp& k, const StepFunction& f);

/// (1/n) tr(W^l) for l = 1..l_max, via matrix powers up to ceil(l_max/2)
/// and symmetric Frobenius pairings tr(W^{p+q}) = <W^p, W^q>_F.
std::vector<double> trace_moments(const WignerSample& w, int l_max);

inline double trace_moment(const WignerSample& w, int l) {
    return trace_moments(w, l).back();
}

/// Power iteration on W^2 (Rayleigh quotients are monotone on a PSD matrix);
/// returns sqrt of the top Rayleigh quotient, i.e. the largest singular value
/// of the mu_n kernel action. Returns 0 for the zero matrix.
double operator_norm_estimate(const KernelOp& k, int iterations);

/// CSV matrix dump with a header line carrying n, law, seed; row-major body.
void save_sample_csv(const WignerSample& w, const std::string& path);
WignerSample load_sample_csv(const std::string& path);

}  // namespace wigner
