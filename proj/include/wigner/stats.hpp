#pragma once

#include <string>
#include <vector>

#include "wigner/linalg.hpp"
#include "wigner/rng.hpp"

namespace wigner {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    long long count = 0;
};

MeanSe mean_se(const std::vector<double>& xs);

/// Sample variance (unbiased) with the standard error of the variance
/// estimate itself (moment method).
struct VarSe {
    double var = 0.0;
    double se = 0.0;
};

VarSe variance_se(const std::vector<double>& xs);

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Inverse standard normal CDF (Acklam's rational approximation).
double normal_quantile(double p);

/// Two-sided z critical value at significance alpha.
inline double z_critical(double alpha) { return normal_quantile(1.0 - alpha / 2.0); }

/// Kolmogorov-Smirnov distance between a sample and the standard normal CDF.
double ks_statistic_normal(std::vector<double> xs);

/// Asymptotic KS critical value c(alpha)/sqrt(n).
double ks_critical(double alpha, long long n);

/// Draw R rows from N(0, cov) (PSD-tolerant Cholesky).
Mat sample_mvn(const Mat& cov, long long rows, Rng& rng);

/// One z-test line in a consistency report; pass means |z| <= zcrit.
struct ConsistencyCheck {
    std::string name;
    double statistic = 0.0;
    double target = 0.0;
    double se = 0.0;
    double z = 0.0;
    double zcrit = 0.0;
    bool pass = false;
};

struct ConsistencyReport {
    double alpha = 0.0;
    double zcrit = 0.0;  // Bonferroni-adjusted per-check critical value
    std::vector<ConsistencyCheck> checks;
    bool pass = true;
    bool degenerate_target = false;  // target direction with ~zero variance but live samples
};

/// Compares replicated functional samples (rows = replicas, cols = basis
/// elements) against a target Gaussian: mean vector 0, covariance = target,
/// and Gaussianity through third and fourth moments against their Wick
/// values. Each check is a z-test with empirical standard error at a
/// Bonferroni-adjusted critical value so the whole report has familywise
/// level alpha under the null.
ConsistencyReport consistency_test(const Mat& samples, const Mat& target_cov, double alpha);

}  // namespace wigner
