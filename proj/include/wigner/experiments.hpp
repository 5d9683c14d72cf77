#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wigner/rational.hpp"
#include "wigner/report.hpp"
#include "wigner/words.hpp"

namespace wigner {

/// Knobs for the experiment runners. Defaults are the --small preset; every
/// field can come from a config file or a command-line override.
struct ExperimentConfig {
    std::vector<long long> n_list;
    std::vector<int> l_list;
    std::vector<IntervalQ> intervals;
    std::string law = "gaussian";
    long long replicas = 64;
    std::uint64_t seed = 1;
    double alpha = 0.01;
    double z_gate = 3.0;          // k-sigma gate for Monte Carlo means
    std::string out_dir = "reports";
    bool small_mode = true;

    // semicircle
    std::vector<long long> semicircle_n_list = {128, 256, 512};
    int semicircle_l_max = 6;

    // operator norm probe
    long long opnorm_n = 1024;
    int opnorm_iterations = 250;
    int opnorm_seeds = 50;

    // psi covariance gate
    long long psicov_resolution = 512;
    long long psicov_replicas = 400;
    int psicov_max_level = 4;

    // consistency experiment
    long long consistency_n = 40;
    long long consistency_replicas = 200;
    int calibration_meta_replicas = 40;

    // V decomposition
    std::vector<int> vdecomp_l_list = {2, 3};
    long long vdecomp_replicas = 200;
    long long vdecomp_oracle_replicas = 5;

    // symbolic truncation
    int symbolic_max_level = 6;

    CltScanConfig clt;

    static ExperimentConfig small_defaults();
    static ExperimentConfig full_defaults();
};

/// Flat key=value config file; unknown keys are an error. Lists are
/// comma-separated; intervals are colon-separated rational pairs like
/// 0/1:1/2. Lines starting with # are comments.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

Report run_semicircle(const ExperimentConfig& cfg);
Report run_vdecomposition(const ExperimentConfig& cfg);
Report run_consistency(const ExperimentConfig& cfg);
Report run_clt_scan(const ExperimentConfig& cfg);
Report run_symbolic(const ExperimentConfig& cfg);

/// The closed-form vs Monte Carlo gate for the psi covariances. Downstream
/// experiments that consume the closed form check this report first and mark
/// themselves blocked if it failed.
Report run_psi_gate(const ExperimentConfig& cfg);

/// Writes one CSV per report into cfg.out_dir plus a JSON summary; returns
/// the number of failed records across all reports.
long long emit_reports(const std::vector<Report>& reports, const ExperimentConfig& cfg);

}  // namespace wigner
