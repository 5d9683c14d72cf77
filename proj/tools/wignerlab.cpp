// wignerlab: command-line driver for the random-matrix limit experiments.
// Subcommands run one experiment family each and emit CSV + JSON reports
// with full reproducibility metadata; exit code is nonzero iff a gate fails.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wigner/experiments.hpp"

namespace {

void print_report(const wigner::Report& rep) {
    std::printf("== %s (seed %llu, %.1fs, %lld failure%s)\n", rep.name.c_str(),
                static_cast<unsigned long long>(rep.seed), rep.wall_seconds,
                static_cast<long long>(rep.failures()), rep.failures() == 1 ? "" : "s");
    for (const auto& r : rep.records) {
        std::printf("  [%s] %-28s n=%-5lld l=%-2d value=%-12.6g target=%-10.6g se=%-10.3g %s\n",
                    r.pass ? "pass" : "FAIL", r.statistic.c_str(), r.n, r.l, r.value, r.target,
                    r.se, r.note.c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wignerlab: kernel-operator limit experiments for Wigner matrices"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global flags after the subcommand

    std::string config_path;
    std::string n_list, l_list, intervals;
    std::string law;
    long long replicas = -1;
    long long seed = -1;
    std::string out_dir;
    bool small_mode = false, full_mode = false;

    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--n-list", n_list, "comma-separated matrix sizes");
    app.add_option("--l-list", l_list, "comma-separated walk lengths");
    app.add_option("--intervals", intervals, "comma-separated intervals a:b with rational endpoints");
    app.add_option("--law", law, "entry law: gaussian | rademacher | uniform-scaled");
    app.add_option("--replicas", replicas, "Monte Carlo replicas");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--out", out_dir, "report output directory");
    app.add_flag("--small", small_mode, "small preset (default)");
    app.add_flag("--full", full_mode, "full preset");

    auto* cmd_semicircle = app.add_subcommand("semicircle", "trace moments against the semicircle");
    auto* cmd_vdecomp = app.add_subcommand("vdecomp", "closed/open walk decomposition gates");
    auto* cmd_consistency = app.add_subcommand("consistency", "finite-n functionals vs Gaussian limits");
    auto* cmd_cltscan = app.add_subcommand("cltscan", "exhaustive word-sentence lemma scan");
    auto* cmd_symbolic = app.add_subcommand("symbolic", "symbolic limit operator checks");
    auto* cmd_all = app.add_subcommand("all", "run every experiment");

    CLI11_PARSE(app, argc, argv);

    try {
        wigner::ExperimentConfig cfg = full_mode ? wigner::ExperimentConfig::full_defaults()
                                                 : wigner::ExperimentConfig::small_defaults();
        if (!config_path.empty()) cfg = wigner::load_config(config_path, cfg);

        // command-line overrides win over config file values
        if (!n_list.empty()) {
            cfg.n_list.clear();
            for (std::size_t pos = 0; pos < n_list.size();) {
                std::size_t comma = n_list.find(',', pos);
                if (comma == std::string::npos) comma = n_list.size();
                cfg.n_list.push_back(std::stoll(n_list.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
        if (!l_list.empty()) {
            cfg.l_list.clear();
            for (std::size_t pos = 0; pos < l_list.size();) {
                std::size_t comma = l_list.find(',', pos);
                if (comma == std::string::npos) comma = l_list.size();
                cfg.l_list.push_back(std::stoi(l_list.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
        if (!law.empty()) cfg.law = law;
        if (replicas > 0) {
            cfg.replicas = replicas;
            cfg.consistency_replicas = replicas;
            cfg.vdecomp_replicas = replicas;
        }
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        std::vector<wigner::Report> reports;
        if (cmd_semicircle->parsed() || cmd_all->parsed()) reports.push_back(run_semicircle(cfg));
        if (cmd_vdecomp->parsed() || cmd_all->parsed()) reports.push_back(run_vdecomposition(cfg));
        if (cmd_consistency->parsed() || cmd_all->parsed()) reports.push_back(run_consistency(cfg));
        if (cmd_cltscan->parsed() || cmd_all->parsed()) reports.push_back(run_clt_scan(cfg));
        if (cmd_symbolic->parsed() || cmd_all->parsed()) reports.push_back(run_symbolic(cfg));

        for (const auto& rep : reports) print_report(rep);
        long long failures = emit_reports(reports, cfg);
        std::printf("reports written to %s (%lld failing record%s)\n", cfg.out_dir.c_str(), failures,
                    failures == 1 ? "" : "s");
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
