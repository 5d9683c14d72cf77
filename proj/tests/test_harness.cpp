#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wigner/experiments.hpp"

using namespace wigner;

TEST_CASE("config files: key=value parsing with strict keys") {
    const std::string path = "/tmp/wigner_test_config.cfg";
    {
        std::ofstream os(path);
        os << "# comment line\n";
        os << "n_list=8,16\n";
        os << "l_list=1,2\n";
        os << "law=rademacher\n";
        os << "replicas=12\n";
        os << "seed=99\n";
        os << "intervals=0/1:1/2,1/2:1/1\n";
        os << "alpha=0.05\n";
    }
    ExperimentConfig cfg = load_config(path, ExperimentConfig::small_defaults());
    CHECK(cfg.n_list == std::vector<long long>{8, 16});
    CHECK(cfg.l_list == std::vector<int>{1, 2});
    CHECK(cfg.law == "rademacher");
    CHECK(cfg.replicas == 12);
    CHECK(cfg.seed == 99);
    REQUIRE(cfg.intervals.size() == 2);
    CHECK(cfg.intervals[0] == IntervalQ::of(0, 1, 1, 2));
    CHECK(cfg.alpha == doctest::Approx(0.05));

    {
        std::ofstream os(path);
        os << "not_a_key=1\n";
    }
    CHECK_THROWS(load_config(path, ExperimentConfig::small_defaults()));
    std::remove(path.c_str());
}

TEST_CASE("reports: CSV layout and JSON summary round out the metadata") {
    Report rep;
    rep.name = "demo";
    rep.seed = 7;
    rep.wall_seconds = 0.25;
    rep.records.push_back(ReportRecord{"demo/x", 16, 2, "statistic, with comma", 1.5, 0.1, 1.4, 0.3,
                                       100, true, "note"});
    rep.records.push_back(ReportRecord{"demo/x", 32, 3, "other", 0.5, 0.0, 0.0, 0.1, 10, false, ""});
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.failures() == 1);

    const std::string csv = "/tmp/wigner_test_report.csv";
    write_report_csv(rep, csv);
    {
        std::ifstream is(csv);
        std::string header, line1;
        std::getline(is, header);
        std::getline(is, line1);
        CHECK(header == "experiment,n,l,statistic,value,se,target,tolerance,samples,pass,note");
        CHECK(line1.find("\"statistic, with comma\"") != std::string::npos);
        CHECK(line1.find("true") != std::string::npos);
    }

    const std::string js = "/tmp/wigner_test_summary.json";
    write_reports_json({rep}, js);
    {
        std::ifstream is(js);
        nlohmann::json root = nlohmann::json::parse(is);
        CHECK(root["reports"].size() == 1);
        CHECK(root["reports"][0]["name"] == "demo");
        CHECK(root["reports"][0]["failures"] == 1);
        CHECK(root["reports"][0]["records"].size() == 2);
    }
    std::remove(csv.c_str());
    std::remove(js.c_str());
}

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg = ExperimentConfig::small_defaults();
    cfg.n_list = {8, 12};
    cfg.l_list = {1, 2};
    cfg.replicas = 8;
    cfg.semicircle_n_list = {8, 12};
    cfg.semicircle_l_max = 3;
    cfg.vdecomp_l_list = {1, 2};
    cfg.vdecomp_replicas = 12;
    cfg.vdecomp_oracle_replicas = 2;
    cfg.consistency_n = 16;
    cfg.consistency_replicas = 120;
    cfg.calibration_meta_replicas = 3;
    cfg.psicov_resolution = 64;
    cfg.psicov_replicas = 60;
    cfg.psicov_max_level = 2;
    cfg.symbolic_max_level = 4;
    cfg.clt.max_words = 2;
    cfg.clt.max_word_len = 3;
    cfg.clt.max_letters = 4;
    cfg.out_dir = "/tmp/wigner_test_reports";
    return cfg;
}

bool records_identical(const Report& a, const Report& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& x = a.records[i];
        const auto& y = b.records[i];
        if (x.statistic != y.statistic || x.value != y.value || x.se != y.se || x.pass != y.pass)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("experiments are bit-reproducible regardless of worker count") {
    ExperimentConfig cfg = tiny_config();

    setenv("WIGNER_THREADS", "1", 1);
    Report serial = run_semicircle(cfg);
    Report serial_v = run_vdecomposition(cfg);
    setenv("WIGNER_THREADS", "2", 1);
    Report threaded = run_semicircle(cfg);
    Report threaded_v = run_vdecomposition(cfg);
    unsetenv("WIGNER_THREADS");

    CHECK(records_identical(serial, threaded));
    CHECK(records_identical(serial_v, threaded_v));

    // a different seed changes the values
    cfg.seed += 1;
    Report other = run_semicircle(cfg);
    CHECK_FALSE(records_identical(serial, other));
}

TEST_CASE("experiment runners produce gated records end to end") {
    ExperimentConfig cfg = tiny_config();

    Report semi = run_semicircle(cfg);
    // per-(n, l) means plus one trend record per even l
    CHECK(semi.records.size() == cfg.semicircle_n_list.size() * 3 + 1);
    for (const auto& r : semi.records) CHECK(r.samples == cfg.replicas);

    Report clt = run_clt_scan(cfg);
    CHECK(clt.all_pass());

    Report sym = run_symbolic(cfg);
    CHECK(sym.all_pass());

    Report cons = run_consistency(cfg);
    bool has_gate_records = false, has_cov_records = false;
    for (const auto& r : cons.records) {
        if (r.experiment == "psicov_gate") has_gate_records = true;
        if (r.statistic.rfind("cov(", 0) == 0 || r.statistic.rfind("cross_parity_cov(", 0) == 0)
            has_cov_records = true;
    }
    CHECK(has_gate_records);
    CHECK(has_cov_records);

    long long failures = emit_reports({semi, clt, sym, cons}, cfg);
    std::ifstream csv(cfg.out_dir + "/semicircle.csv");
    CHECK(csv.good());
    std::ifstream js(cfg.out_dir + "/summary.json");
    CHECK(js.good());
    nlohmann::json root = nlohmann::json::parse(js);
    long long counted = 0;
    for (const auto& rep : root["reports"]) counted += rep["failures"].get<long long>();
    CHECK(counted == failures);
}
