#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "wigner/ensembles.hpp"
#include "wigner/stats.hpp"
#include "wigner/step_function.hpp"

using namespace wigner;

TEST_CASE("entry laws: normalization and exact moments") {
    for (const char* name : {"gaussian", "rademacher", "uniform-scaled"}) {
        EntryLaw law = EntryLaw::from_name(name);
        CHECK(law.moment(0) == 1.0);
        CHECK(law.moment(1) == 0.0);
        CHECK(law.moment(2) == 1.0);
        CHECK(law.moment(3) == 0.0);
        CHECK(law.moment_growth_certified());

        Rng rng(17);
        std::vector<double> xs(20000);
        for (auto& x : xs) x = law.sample(rng);
        MeanSe ms = mean_se(xs);
        VarSe vs = variance_se(xs);
        CHECK(std::fabs(ms.mean) <= 3.0 * ms.se);
        CHECK(std::fabs(vs.var - 1.0) <= 3.0 * vs.se);

        // fourth moment sanity against the sampled law
        std::vector<double> x4(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) x4[i] = xs[i] * xs[i] * xs[i] * xs[i];
        MeanSe m4 = mean_se(x4);
        CHECK(std::fabs(m4.mean - law.moment(4)) <= 4.0 * m4.se);
    }
    CHECK(EntryLaw::gaussian().moment(4) == 3.0);
    CHECK(EntryLaw::rademacher().moment(4) == 1.0);
    CHECK(EntryLaw::uniform_scaled().moment(4) == doctest::Approx(9.0 / 5.0));
    CHECK_THROWS(EntryLaw::from_name("cauchy"));
}

TEST_CASE("sampling: symmetry, determinism, n=1 mean, off-diagonal variance") {
    EntryLaw law = EntryLaw::gaussian();
    WignerSample w = sample_wigner(24, law, 7);
    for (long long i = 1; i <= 24; ++i)
        for (long long j = 1; j <= 24; ++j) CHECK(w.x(i, j) == w.x(j, i));

    WignerSample w2 = sample_wigner(24, law, 7);
    CHECK(w.entries.data() == w2.entries.data());
    WignerSample w3 = sample_wigner(24, law, 8);
    CHECK(w.entries.data() != w3.entries.data());

    // n = 1: the single diagonal entry has mean 0 at MC precision
    {
        std::vector<double> vals(100000);
        for (std::size_t r = 0; r < vals.size(); ++r)
            vals[r] = sample_wigner(1, law, 1000 + r).x(1, 1);
        MeanSe ms = mean_se(vals);
        CHECK(std::fabs(ms.mean) <= 3.0 * ms.se);
        CHECK(ms.se == doctest::Approx(std::pow(10.0, -2.5)).epsilon(0.1));
    }

    // off-diagonal empirical variance over ~1e5 draws (gaussian: the law
    // with a non-degenerate variance estimator)
    {
        std::vector<double> vals;
        vals.reserve(101250);
        for (int r = 0; r < 50; ++r) {
            WignerSample s = sample_wigner(45, law, 500 + r);
            for (long long i = 1; i <= 45; ++i)
                for (long long j = i + 1; j <= 45; ++j) vals.push_back(s.x(i, j));
        }
        VarSe vs = variance_se(vals);
        CHECK(std::fabs(vs.var - 1.0) <= 3.0 * vs.se);
    }
}

TEST_CASE("kernel application") {
    SUBCASE("all-ones entries act on the constant as sqrt(n) times it") {
        const long long n = 16;
        Mat ones(16, 16, 1.0);
        WignerSample w = wigner_from_entries(ones);
        KernelOp k(w);
        StepFunction f(n, 1.0);
        StepFunction out = apply_kernel(k, f);
        for (long long i = 1; i <= n; ++i)
            CHECK(out.at(i) == doctest::Approx(std::sqrt(16.0)).epsilon(1e-14));
    }

    SUBCASE("zero function maps to zero; linearity at machine precision") {
        WignerSample w = sample_wigner(20, EntryLaw::gaussian(), 3);
        KernelOp k(w);
        StepFunction zero(20, 0.0);
        StepFunction out = apply_kernel(k, zero);
        for (long long i = 1; i <= 20; ++i) CHECK(out.at(i) == 0.0);

        Rng rng(4);
        StepFunction f(20), g(20);
        for (long long i = 1; i <= 20; ++i) {
            f.at(i) = rng.uniform(-1, 1);
            g.at(i) = rng.uniform(-1, 1);
        }
        StepFunction lhs = apply_kernel(k, 2.5 * f + (-1.25) * g);
        StepFunction rhs = 2.5 * apply_kernel(k, f) + (-1.25) * apply_kernel(k, g);
        for (long long i = 1; i <= 20; ++i) CHECK(lhs.at(i) == doctest::Approx(rhs.at(i)).epsilon(1e-12));
    }

    SUBCASE("dimension mismatch is an error") {
        WignerSample w = sample_wigner(8, EntryLaw::gaussian(), 3);
        KernelOp k(w);
        CHECK_THROWS(apply_kernel(k, StepFunction(9, 1.0)));
    }
}

TEST_CASE("matrix eigenpairs transfer to the kernel with sqrt(n) rescaling") {
    // an eigenpair of W = x / sqrt(n), found independently by a dense
    // eigensolver, must satisfy the kernel eigenequation after f = sqrt(n) g
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        const long long n = 48;
        WignerSample w = sample_wigner(n, EntryLaw::gaussian(), seed);
        SymEigen eig = sym_eigen(scaled_matrix(w));
        const std::size_t top = static_cast<std::size_t>(n - 1);
        double lambda = eig.values[top];
        StepFunction f(n);
        for (long long i = 1; i <= n; ++i)
            f.at(i) = std::sqrt(static_cast<double>(n)) * eig.vectors.at(static_cast<std::size_t>(i - 1), top);
        StepFunction kf = apply_kernel(KernelOp(w), f);
        double residual = l2_norm_mun(kf - lambda * f);
        CHECK(residual <= 1e-10);
        // norms: ||f||_{mu_n} = ||g||_2 = 1
        CHECK(l2_norm_mun(f) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("trace moments") {
    SUBCASE("matches naive dense powers on a small sample") {
        WignerSample w = sample_wigner(12, EntryLaw::uniform_scaled(), 5);
        Mat m = scaled_matrix(w);
        Mat p = m;
        std::vector<double> moments = trace_moments(w, 6);
        for (int l = 1; l <= 6; ++l) {
            CHECK(moments[static_cast<std::size_t>(l - 1)] ==
                  doctest::Approx(trace(p) / 12.0).epsilon(1e-12));
            p = matmul(p, m);
        }
    }

    SUBCASE("odd moments are centered, beta_2 is matched at moderate n") {
        std::vector<double> m1, m2, m3;
        for (int r = 0; r < 64; ++r) {
            WignerSample w = sample_wigner(128, EntryLaw::gaussian(), 900 + r);
            auto ms = trace_moments(w, 3);
            m1.push_back(ms[0]);
            m2.push_back(ms[1]);
            m3.push_back(ms[2]);
        }
        MeanSe s1 = mean_se(m1), s2 = mean_se(m2), s3 = mean_se(m3);
        CHECK(std::fabs(s1.mean) <= 3.0 * s1.se);
        CHECK(std::fabs(s2.mean - 1.0) <= 3.0 * s2.se);
        CHECK(std::fabs(s3.mean) <= 3.0 * s3.se);
    }
}

TEST_CASE("operator norm estimation") {
    SUBCASE("kernel-scaled identity has unit norm") {
        const long long n = 32;
        Mat entries(32, 32, 0.0);
        for (std::size_t i = 0; i < 32; ++i) entries.at(i, i) = std::sqrt(static_cast<double>(n));
        WignerSample w = wigner_from_entries(entries);
        CHECK(operator_norm_estimate(KernelOp(w), 50) == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("homogeneity: doubling the kernel doubles the estimate") {
        WignerSample w = sample_wigner(40, EntryLaw::gaussian(), 21);
        Mat doubled = w.entries;
        for (double& v : doubled.data()) v *= 2.0;
        WignerSample w2 = wigner_from_entries(doubled);
        w2.seed = w.seed;  // same power-iteration start vector
        double a = operator_norm_estimate(KernelOp(w), 200);
        double b = operator_norm_estimate(KernelOp(w2), 200);
        CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-9));
    }

    SUBCASE("zero matrix reports zero") {
        WignerSample w = wigner_from_entries(Mat(5, 5, 0.0));
        CHECK(operator_norm_estimate(KernelOp(w), 10) == 0.0);
    }

    SUBCASE("Rayleigh quotients are non-decreasing along the iteration") {
        WignerSample w = sample_wigner(64, EntryLaw::gaussian(), 31);
        double prev = 0.0;
        for (int iters : {5, 20, 80, 200}) {
            double est = operator_norm_estimate(KernelOp(w), iters);
            CHECK(est >= prev - 1e-10);
            prev = est;
        }
        // true top singular value from the dense eigensolver
        SymEigen eig = sym_eigen(scaled_matrix(w));
        double top = std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
        CHECK(prev <= top + 1e-9);
        CHECK(prev >= top - 0.05);
    }
}

TEST_CASE("sample CSV round trip preserves entries and metadata") {
    WignerSample w = sample_wigner(9, EntryLaw::rademacher(), 123);
    std::string path = "/tmp/wigner_sample_test.csv";
    save_sample_csv(w, path);
    WignerSample r = load_sample_csv(path);
    CHECK(r.n == w.n);
    CHECK(r.law == "rademacher");
    CHECK(r.seed == 123);
    CHECK(r.entries.data() == w.entries.data());
    std::remove(path.c_str());
}
