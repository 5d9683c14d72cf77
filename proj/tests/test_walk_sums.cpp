#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wigner/gamma_fields.hpp"
#include "wigner/stats.hpp"
#include "wigner/walk_sums.hpp"

using namespace wigner;

namespace {
const IntervalQ kUnit = IntervalQ::unit();
const IntervalQ kLeft = IntervalQ::of(0, 1, 1, 2);
const IntervalQ kRight = IntervalQ::of(1, 2, 1, 1);
}  // namespace

TEST_CASE("apply_power: identity at l = 0, matches dense matrix powers") {
    WignerSample w = sample_wigner(16, EntryLaw::gaussian(), 2);
    KernelOp k(w);
    StepFunction f = indicator_on_grid(kLeft, 16);
    StepFunction same = apply_power(k, f, 0);
    for (long long i = 1; i <= 16; ++i) CHECK(same.at(i) == f.at(i));

    // independent dense-multiply oracle at l = 3
    Mat m = scaled_matrix(w);
    Mat m3 = matmul(matmul(m, m), m);
    Vec fv(16);
    for (long long i = 1; i <= 16; ++i) fv[static_cast<std::size_t>(i - 1)] = f.at(i);
    Vec expect = matvec(m3, fv);
    StepFunction got = apply_power(k, f, 3);
    for (long long i = 1; i <= 16; ++i)
        CHECK(std::fabs(got.at(i) - expect[static_cast<std::size_t>(i - 1)]) <= 1e-10);
}

TEST_CASE("apply_power: <1, K^2 1> concentrates at beta_2 = 1") {
    std::vector<double> vals;
    for (int r = 0; r < 48; ++r) {
        WignerSample w = sample_wigner(128, EntryLaw::gaussian(), 4000 + r);
        KernelOp k(w);
        StepFunction one(128, 1.0);
        vals.push_back(inner_mun(one, apply_power(k, one, 2)));
    }
    MeanSe ms = mean_se(vals);
    CHECK(std::fabs(ms.mean - 1.0) <= 3.0 * ms.se);
}

TEST_CASE("v_decompose: single-step walks, reconstruction, budgets") {
    EntryLaw law = EntryLaw::gaussian();

    SUBCASE("l = 1: V1 is the diagonal on P, V3 vanishes") {
        WignerSample w = sample_wigner(20, law, 9);
        VDecomposition d = v_decompose(w, law, kLeft, 1);
        IndexRange pr = grid_indices(kLeft, 20);
        for (long long i = 1; i <= 20; ++i) {
            double expect = pr.contains(i) ? w.x(i, i) / std::sqrt(20.0) : 0.0;
            CHECK(d.v1.at(i) == doctest::Approx(expect).epsilon(1e-14));
            CHECK(d.v3.at(i) == 0.0);
        }
    }

    SUBCASE("V1+V2+V3 reconstructs the kernel power exactly") {
        for (std::uint64_t seed : {1ULL, 2ULL}) {
            WignerSample w = sample_wigner(24, law, seed);
            KernelOp k(w);
            VDecomposition d = v_decompose(w, law, kUnit, 3);
            StepFunction expect = apply_power(k, indicator_on_grid(kUnit, 24), 3);
            StepFunction got = d.v1 + d.v2 + d.v3;
            for (long long i = 1; i <= 24; ++i) CHECK(std::fabs(got.at(i) - expect.at(i)) <= 1e-10);
        }
    }

    SUBCASE("V3 vanishes identically for every bundled (symmetric) law") {
        // open walks need an odd-multiplicity edge (an even multigraph has an
        // Eulerian circuit, which would close the walk), and symmetric laws
        // kill odd moments
        for (const char* name : {"gaussian", "rademacher", "uniform-scaled"}) {
            EntryLaw l2 = EntryLaw::from_name(name);
            for (int l : {2, 3, 4}) {
                StepFunction v3 = v3_exact(l2, l == 4 ? 10 : 14, kUnit, l);
                for (long long i = 1; i <= v3.n(); ++i) CHECK(v3.at(i) == 0.0);
            }
        }
    }

    SUBCASE("enumeration budgets refuse loudly") {
        WignerSample w41 = sample_wigner(41, law, 1);
        CHECK_THROWS(v_decompose(w41, law, kUnit, 2));
        WignerSample w17 = sample_wigner(17, law, 1);
        CHECK_THROWS(v_decompose(w17, law, kUnit, 4));
        WignerSample w8 = sample_wigner(8, law, 1);
        CHECK_NOTHROW(v_decompose(w8, law, kUnit, 4));
        CHECK_THROWS(v_decompose(w8, law, kUnit, 5));
    }
}

TEST_CASE("odd closed-walk means vanish: <1_P, V1> at l = 3") {
    EntryLaw law = EntryLaw::gaussian();
    std::vector<double> vals;
    for (int r = 0; r < 150; ++r) {
        WignerSample w = sample_wigner(20, law, 7000 + r);
        VDecomposition d = v_decompose(w, law, kUnit, 3);
        vals.push_back(inner_mun(indicator_on_grid(kUnit, 20), d.v1));
    }
    MeanSe ms = mean_se(vals);
    CHECK(std::fabs(ms.mean) <= 3.0 * ms.se);
}

TEST_CASE("signed non-backtracking lines") {
    EntryLaw law = EntryLaw::gaussian();

    SUBCASE("l = 1 is the scaled entry; the diagonal vanishes") {
        WignerSample w = sample_wigner(10, law, 3);
        CHECK(xi_nb(w, 2, 7, 1) == doctest::Approx(w.x(2, 7) / std::sqrt(10.0)).epsilon(1e-14));
        CHECK(xi_nb(w, 4, 4, 2) == 0.0);
    }

    SUBCASE("n = 3: the unique two-step path through the third vertex") {
        WignerSample w = sample_wigner(3, law, 5);
        CHECK(xi_nb(w, 1, 2, 2) == doctest::Approx(w.x(1, 3) * w.x(3, 2) / 3.0).epsilon(1e-14));
    }

    SUBCASE("symmetry in the endpoints, exactly") {
        WignerSample w = sample_wigner(12, law, 8);
        for (long long i = 1; i <= 12; ++i)
            for (long long j = i + 1; j <= 12; ++j) CHECK(xi_nb(w, i, j, 3) == xi_nb(w, j, i, 3));
    }
}

TEST_CASE("B_{n,l} kernel action on indicators") {
    EntryLaw law = EntryLaw::gaussian();

    SUBCASE("l = 1 over the whole interval: centered row sums") {
        WignerSample w = sample_wigner(14, law, 11);
        StepFunction out = b_nl_apply(w, 1, kUnit);
        for (long long i = 1; i <= 14; ++i) {
            double expect = 0.0;
            for (long long j = 1; j <= 14; ++j)
                if (j != i) expect += w.x(i, j);
            CHECK(out.at(i) == doctest::Approx(expect / std::sqrt(14.0)).epsilon(1e-12));
        }
    }

    SUBCASE("row sums are N(0, (n-1)/n) for the gaussian law") {
        const long long n = 25;
        std::vector<double> vals;
        for (int r = 0; r < 400; ++r) {
            WignerSample w = sample_wigner(n, EntryLaw::gaussian(), 600 + r);
            StepFunction out = b_nl_apply(w, 1, kUnit);
            vals.push_back(out.at(1));
            vals.push_back(out.at(n / 2));
        }
        VarSe vs = variance_se(vals);
        CHECK(std::fabs(vs.var - static_cast<double>(n - 1) / n) <= 3.0 * vs.se);
    }

    SUBCASE("additive over a disjoint split of the target interval, exactly") {
        // Rademacher entries on a power-of-two grid keep every partial sum an
        // exactly representable dyadic, so the disjoint-split identity holds
        // bit for bit
        WignerSample w = sample_wigner(16, EntryLaw::rademacher(), 13);
        StepFunction whole = b_nl_apply(w, 2, kUnit);
        StepFunction parts = b_nl_apply(w, 2, kLeft) + b_nl_apply(w, 2, kRight);
        for (long long i = 1; i <= 16; ++i) CHECK(whole.at(i) == parts.at(i));
    }

    SUBCASE("matches the definitional xi summation") {
        WignerSample w = sample_wigner(12, law, 17);
        StepFunction out = b_nl_apply(w, 2, kLeft);
        IndexRange pr = grid_indices(kLeft, 12);
        for (long long i = 1; i <= 12; ++i) {
            double expect = 0.0;
            for (long long j = pr.lo; j <= pr.hi; ++j) expect += xi_nb(w, i, j, 2);
            CHECK(out.at(i) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("aggregated path sums") {
    EntryLaw law = EntryLaw::gaussian();

    SUBCASE("n = 2 hand enumeration: the two ordered pairs sum to x_12") {
        WignerSample w = sample_wigner(2, law, 19);
        CHECK(aggregated_x(w, kUnit, kUnit, 1) == doctest::Approx(w.x(1, 2)).epsilon(1e-14));
    }

    SUBCASE("definitional identity against b_nl_apply on split windows") {
        WignerSample w = sample_wigner(16, law, 23);
        StepFunction b = b_nl_apply(w, 2, kRight);
        IndexRange qr = grid_indices(kLeft, 16);
        double expect = 0.0;
        for (long long i = qr.lo; i <= qr.hi; ++i) expect += b.at(i);
        expect /= std::sqrt(16.0);
        CHECK(aggregated_x(w, kLeft, kRight, 2) == doctest::Approx(expect).epsilon(1e-14));
    }

    SUBCASE("MC variance at n = 40, l = 2 matches the shared-sheet pairing") {
        std::vector<double> vals;
        for (int r = 0; r < 200; ++r) {
            WignerSample w = sample_wigner(40, EntryLaw::rademacher(), 800 + r);
            vals.push_back(fast_simple_path_sum(w, kUnit, kUnit, 2));
        }
        VarSe vs = variance_se(vals);
        double target = bnl_pairing_cov(2, kUnit, kUnit, 2, kUnit, kUnit);
        CHECK(target == doctest::Approx(2.0));  // |QxP| + transposed overlap
        CHECK(std::fabs(vs.var - target) <= 3.0 * vs.se);
    }
}

TEST_CASE("inclusion-exclusion closed forms agree with brute force") {
    EntryLaw law = EntryLaw::uniform_scaled();
    const IntervalQ qs[] = {kUnit, kLeft, kRight, IntervalQ::of(1, 4, 3, 4)};

    for (int l : {1, 2, 3}) {
        const long long n = (l == 3) ? 16 : 30;
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            WignerSample w = sample_wigner(n, law, 12345 + seed);
            const IntervalQ& q = qs[seed % 4];
            const IntervalQ& p = qs[(seed + 1) % 4];
            double fast = fast_simple_path_sum(w, q, p, l);
            double brute = aggregated_x(w, q, p, l);
            worst = std::max(worst, std::fabs(fast - brute));
        }
        CAPTURE(l);
        CHECK(worst <= 1e-9);
    }
    WignerSample w = sample_wigner(10, law, 1);
    CHECK_THROWS(fast_simple_path_sum(w, kUnit, kUnit, 4));
}

TEST_CASE("V1 concentrates on beta_l as n grows (decay of the closed-walk error)") {
    EntryLaw law = EntryLaw::gaussian();
    std::vector<double> means;
    for (long long n : {10LL, 20LL, 40LL}) {
        std::vector<double> norms;
        for (int r = 0; r < 120; ++r) {
            WignerSample w = sample_wigner(n, law, 100 * n + r);
            VDecomposition d = v_decompose(w, law, kUnit, 2);
            StepFunction err = d.v1 - 1.0 * indicator_on_grid(kUnit, n);  // beta_2 = 1
            norms.push_back(l2_norm_sq_mun(err));
        }
        means.push_back(mean_se(norms).mean);
    }
    CHECK(means[1] < means[0]);
    CHECK(means[2] < means[1]);
    CHECK(means[2] < 0.15);
}
