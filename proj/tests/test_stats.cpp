#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "locstat/errors.hpp"
#include "locstat/inertia.hpp"
#include "locstat/model.hpp"
#include "locstat/rng.hpp"
#include "locstat/stats/descriptive.hpp"
#include "locstat/stats/dos.hpp"
#include "locstat/stats/special.hpp"
#include "locstat/stats/tests.hpp"
#include "test_util.hpp"

using namespace locstat;
using namespace locstat::stats;
using testutil::exponential_draw;
using testutil::poisson_draw;

TEST_CASE("poisson characteristic function closed forms") {
    CHECK(std::abs(theoretical_poisson_cf(0.0, 3.7) - 1.0) <= 1e-15);
    CHECK(std::abs(theoretical_poisson_cf(1.3, 0.0) - 1.0) <= 1e-15);
    // t = pi, lambda = 1: exp((e^{i pi} - 1)) = exp(-2)
    CHECK(std::abs(theoretical_poisson_cf(M_PI, 1.0) - std::exp(-2.0)) <= 1e-12);
}

TEST_CASE("poisson cf is infinitely divisible") {
    TrialRng rng(1);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = 8.0 * (uniform_unit(rng) - 0.5);
        const double l1 = 3.0 * uniform_unit(rng);
        const double l2 = 3.0 * uniform_unit(rng);
        const auto lhs = theoretical_poisson_cf(t, l1 + l2);
        const auto rhs = theoretical_poisson_cf(t, l1) * theoretical_poisson_cf(t, l2);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
        CHECK(std::abs(theoretical_poisson_cf(t, l1)) <= 1.0 + 1e-15);
    }
}

TEST_CASE("count chi-squared accepts true poisson data in most repetitions") {
    TrialRng rng(2);
    int accepted = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<long> counts(10000);
        for (auto& c : counts) c = poisson_draw(rng, 3.0);
        const TestReport r = poisson_test(counts, 3.0);
        REQUIRE(r.p_value.has_value());
        CHECK(*r.p_value >= 0.0);
        CHECK(*r.p_value <= 1.0);
        if (*r.p_value > 0.01) ++accepted;
    }
    CHECK(accepted >= 95);
}

TEST_CASE("count chi-squared rejects all-zero data") {
    std::vector<long> zeros(10000, 0);
    const TestReport r = poisson_test(zeros, 3.0);
    REQUIRE(r.p_value.has_value());
    CHECK(*r.p_value < 1e-6);
    CHECK(r.verdict == "fail");
}

TEST_CASE("gap KS accepts true exponential data") {
    TrialRng rng(3);
    std::vector<double> gaps(10000);
    for (auto& g : gaps) g = exponential_draw(rng, 2.0);
    const TestReport r = poisson_test(gaps, 2.0);
    CHECK(r.statistic < 0.02);
    CHECK(r.verdict == "pass");
}

TEST_CASE("gap KS rejects a wrong rate") {
    TrialRng rng(4);
    std::vector<double> gaps(5000);
    for (auto& g : gaps) g = exponential_draw(rng, 1.0);
    const TestReport r = poisson_test(gaps, 2.0);
    CHECK(r.statistic > 0.1);
    CHECK(r.verdict == "fail");
}

TEST_CASE("empty samples are rejected") {
    CHECK_THROWS_AS(poisson_test(std::span<const long>{}, 1.0), EmptyEnsembleError);
    CHECK_THROWS_AS(poisson_test(std::span<const double>{}, 1.0), EmptyEnsembleError);
}

TEST_CASE("single-sample cf has unit modulus everywhere") {
    const std::vector<long> n1 = {3}, n2 = {5};
    const auto cf = empirical_cf_factorization(n1, n2, CfGrid{});
    for (const auto& v : cf.joint) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empirical cf equals one exactly at t = 0") {
    TrialRng rng(55);
    std::vector<long> n1(500), n2(500);
    for (std::size_t i = 0; i < n1.size(); ++i) {
        n1[i] = poisson_draw(rng, 2.0);
        n2[i] = poisson_draw(rng, 1.0);
    }
    const auto cf = empirical_cf_factorization(n1, n2, CfGrid{});
    const std::size_t g = cf.grid.size();
    std::size_t zero_idx = 0;
    for (std::size_t i = 0; i < g; ++i)
        if (cf.grid[i] == 0.0) zero_idx = i;
    CHECK(cf.marginal1[zero_idx] == std::complex<double>(1.0, 0.0));
    CHECK(cf.marginal2[zero_idx] == std::complex<double>(1.0, 0.0));
    CHECK(cf.joint[zero_idx * g + zero_idx] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("independent poisson pairs give a small cf gap") {
    TrialRng rng(5);
    std::vector<long> n1(10000), n2(10000);
    for (std::size_t i = 0; i < n1.size(); ++i) {
        n1[i] = poisson_draw(rng, 1.0);
        n2[i] = poisson_draw(rng, 1.0);
    }
    const auto cf = empirical_cf_factorization(n1, n2, CfGrid{}, std::make_pair(1.0, 1.0));
    CHECK(cf.gap <= 0.05);
    REQUIRE(cf.theory_gap.has_value());
    CHECK(*cf.theory_gap <= 0.08);
    for (const auto& v : cf.joint) CHECK(std::abs(v) <= 1.0 + 1e-12);
}

TEST_CASE("perfectly correlated pairs break factorization at t = pi") {
    TrialRng rng(6);
    std::vector<long> n(20000);
    for (auto& v : n) v = poisson_draw(rng, 1.0);
    const CfGrid at_pi{M_PI, M_PI, 1.0};
    const auto cf = empirical_cf_factorization(n, n, at_pi);
    REQUIRE(cf.grid.size() == 1);
    // joint cf at (pi, pi) is E exp(2 pi i N) = 1; the product is exp(-4)
    CHECK(std::abs(cf.joint[0] - 1.0) <= 1e-9);
    CHECK(std::abs(cf.marginal1[0] * cf.marginal2[0]) <= std::exp(-4.0) + 0.01);
    CHECK(cf.gap >= 0.98);
}

TEST_CASE("cf bootstrap brackets the observed gap") {
    TrialRng rng(7);
    std::vector<long> n1(2000), n2(2000);
    for (std::size_t i = 0; i < n1.size(); ++i) {
        n1[i] = poisson_draw(rng, 1.0);
        n2[i] = poisson_draw(rng, 1.0);
    }
    const auto cf = empirical_cf_factorization(n1, n2, CfGrid{}, std::nullopt, 100, 99);
    REQUIRE(cf.gap_bootstrap_ci.has_value());
    CHECK(cf.gap_bootstrap_ci->first <= cf.gap_bootstrap_ci->second);
}

TEST_CASE("independence test passes on independent pairs and fails on identical ones") {
    TrialRng rng(8);
    std::vector<long> n1(10000), n2(10000);
    for (std::size_t i = 0; i < n1.size(); ++i) {
        n1[i] = poisson_draw(rng, 1.0);
        n2[i] = poisson_draw(rng, 1.0);
    }
    const TestReport ok = independence_test(n1, n2);
    CHECK(ok.verdict == "pass");
    CHECK(std::abs(ok.statistic) <= 0.05);

    const TestReport bad = independence_test(n1, n1);
    CHECK(bad.verdict == "fail");
    CHECK(bad.statistic == doctest::Approx(1.0));
}

TEST_CASE("constant margins make the independence verdict undefined") {
    std::vector<long> c(100, 2), v(100);
    TrialRng rng(9);
    for (auto& x : v) x = poisson_draw(rng, 1.0);
    const TestReport r = independence_test(c, v);
    CHECK(r.verdict == "undefined");
}

TEST_CASE("wegner regression recovers a synthetic slope") {
    TrialRng rng(10);
    const std::vector<double> lengths = {0.5, 1.0, 2.0, 4.0};
    std::vector<std::vector<double>> samples(lengths.size());
    for (std::size_t li = 0; li < lengths.size(); ++li) {
        samples[li].resize(10000);
        for (auto& v : samples[li]) v = static_cast<double>(poisson_draw(rng, 0.3 * lengths[li]));
    }
    const TestReport r = wegner_check(lengths, samples, 1, 0.3);
    CHECK(r.statistic == doctest::Approx(0.3).epsilon(0.05));
    CHECK(r.details["r_squared"].get<double>() >= 0.99);
    REQUIRE(r.bound_ratio.has_value());
    CHECK(*r.bound_ratio == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r.verdict == "pass");
}

TEST_CASE("wegner tolerates identically zero counts") {
    const std::vector<double> lengths = {0.5, 1.0, 2.0};
    const std::vector<std::vector<double>> zeros(3, std::vector<double>(100, 0.0));
    const TestReport r = wegner_check(lengths, zeros, 4, 0.1);
    CHECK(r.statistic == 0.0);
    CHECK(r.verdict == "pass");
}

TEST_CASE("wegner needs at least three lengths") {
    const std::vector<double> lengths = {1.0, 2.0};
    const std::vector<std::vector<double>> s(2, std::vector<double>(10, 1.0));
    CHECK_THROWS_AS(wegner_check(lengths, s, 1, 0.1), InsufficientDesignError);
}

TEST_CASE("minami sum matches the closed-form poisson tail") {
    TrialRng rng(11);
    const double lambda = 0.25;
    const long n_blocks = 16;
    LadderLevel big;
    big.side = 512;
    big.n_blocks = n_blocks;
    for (int t = 0; t < 20000; ++t) {
        long x = 0;
        for (long p = 0; p < n_blocks; ++p)
            if (poisson_draw(rng, lambda) >= 2) ++x;
        big.per_trial_sum.push_back(static_cast<double>(x));
    }
    // halves the rate for the second rung so the ladder decreases
    LadderLevel small = big;
    small.side = 1024;
    small.per_trial_sum.clear();
    for (int t = 0; t < 20000; ++t) {
        long x = 0;
        for (long p = 0; p < n_blocks; ++p)
            if (poisson_draw(rng, lambda / 2.0) >= 2) ++x;
        small.per_trial_sum.push_back(static_cast<double>(x));
    }
    std::vector<LadderLevel> levels = {big, small};
    const TestReport r = minami_check(levels, 1.0);
    const double expect = n_blocks * (1.0 - std::exp(-lambda) * (1.0 + lambda));
    const auto& lv0 = r.details["levels"][0];
    CHECK(lv0["sum_prob_ge2"].get<double>() ==
          doctest::Approx(expect).epsilon(0.05));
    CHECK(r.verdict == "pass");
}

TEST_CASE("deterministic zero-one counts sum to zero") {
    LadderLevel a;
    a.side = 8;
    a.n_blocks = 4;
    a.per_trial_sum.assign(50, 0.0);
    LadderLevel b = a;
    b.side = 16;
    std::vector<LadderLevel> levels = {a, b};
    const TestReport r = minami_check(levels, 1.0);
    CHECK(r.statistic == 0.0);
    CHECK(r.verdict == "pass");
}

TEST_CASE("minami needs two sizes") {
    LadderLevel only;
    only.side = 8;
    only.n_blocks = 2;
    only.per_trial_sum.assign(10, 0.0);
    std::vector<LadderLevel> levels = {only};
    CHECK_THROWS_AS(minami_check(levels, 1.0), InsufficientDesignError);
}

TEST_CASE("decorrelation sum follows the product law for independent indicators") {
    TrialRng rng(12);
    const long n_blocks = 32;
    auto make_level = [&](long side, double p) {
        DecorrelationLevel lv;
        lv.side = side;
        lv.n_blocks = n_blocks;
        for (int t = 0; t < 20000; ++t) {
            long both = 0, two = 0;
            for (long b = 0; b < n_blocks; ++b) {
                const long a = uniform_unit(rng) < p ? 1 : 0;
                const long c = uniform_unit(rng) < p ? 1 : 0;
                if (a >= 1 && c >= 1) ++both;
                if (a + c >= 2) ++two;
            }
            lv.both_ge1_per_trial.push_back(static_cast<double>(both));
            lv.union_ge2_per_trial.push_back(static_cast<double>(two));
        }
        return lv;
    };
    std::vector<DecorrelationLevel> levels = {make_level(512, 0.05), make_level(1024, 0.025)};
    const TestReport r = decorrelation_check(levels);
    CHECK(r.verdict == "pass");
    const double expect = n_blocks * 0.05 * 0.05;
    CHECK(r.details["levels"][0]["sum_prob_both_ge1"].get<double>() ==
          doctest::Approx(expect).epsilon(0.1));
    CHECK(r.details["inclusion_violations"].get<long>() == 0);
}

TEST_CASE("dos estimate carries the quantization floor") {
    std::vector<long> counts(100, 16);  // deterministic ensemble
    const DosEstimate d = dos_from_counts(counts, 2000.0, 0.05, 0.0);
    CHECK(d.n_hat == doctest::Approx(0.16));
    CHECK(d.ci_half_width == doctest::Approx(0.5 / (2000.0 * 0.05)));
    CHECK_THROWS_AS(dos_from_counts(std::span<const long>{}, 10.0, 0.1, 0.0), EmptyEnsembleError);
}

TEST_CASE("strong disorder pins the dos near the coupling density") {
    // W=16 uniform: n(0) is close to 1/W
    TrialRng rng(13);
    const CubeSpec cube = CubeSpec::lattice(1, 256);
    std::vector<long> counts;
    for (int t = 0; t < 60; ++t) {
        std::vector<double> pot(cube.size());
        for (auto& v : pot) v = 16.0 * (uniform_unit(rng) - 0.5);
        const auto h = build_lattice_hamiltonian(cube, pot);
        counts.push_back(count_in(h, {-0.125, 0.125}));
    }
    const DosEstimate d = dos_from_counts(counts, 512.0, 0.25, 0.0);
    CHECK(std::abs(d.n_hat / 0.0625 - 1.0) <= 0.2);
}

TEST_CASE("dos bins over the gershgorin interval carry total mass one") {
    TrialRng rng(14);
    const CubeSpec cube = CubeSpec::lattice(1, 128);
    std::vector<double> pot(cube.size());
    for (auto& v : pot) v = 4.0 * (uniform_unit(rng) - 0.5);
    const auto h = build_lattice_hamiltonian(cube, pot);
    const auto [lo, hi] = h.gershgorin_interval();
    const int bins = 40;
    const double width = (hi + 1e-9 - (lo - 1e-9)) / bins;
    double mass = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double a = lo - 1e-9 + b * width;
        mass += static_cast<double>(count_in(h, {a, a + width})) / (256.0 * width) * width;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("test reports round-trip through json") {
    TestReport r;
    r.name = "roundtrip";
    r.statistic = 1.25;
    r.p_value = 0.375;
    r.ci = std::make_pair(-0.5, 0.5);
    r.sample_size = 42;
    r.verdict = "pass";
    r.significance = 0.01;
    r.details["note"] = 7;
    r.config_hash = "cafe";
    r.seed = 99;
    const TestReport back = TestReport::from_json(r.to_json());
    CHECK(back.to_json() == r.to_json());
}

TEST_CASE("tail-probability helpers hit known values") {
    // chi-squared with 2 dof has the closed-form survival e^{-x/2}
    CHECK(chi_squared_sf(4.605, 2.0) == doctest::Approx(std::exp(-4.605 / 2.0)).epsilon(1e-10));
    CHECK(chi_squared_sf(0.0, 5.0) == 1.0);
    // one dof: sf(x) = 2 Phi(-sqrt(x))
    CHECK(chi_squared_sf(1.0, 1.0) == doctest::Approx(2.0 * normal_cdf(-1.0)).epsilon(1e-10));
    // classic 5% point of the Kolmogorov distribution
    CHECK(kolmogorov_sf(1.358) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(kolmogorov_sf(0.0) == 1.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    // Poisson pmf normalization at moderate intensity
    double mass = 0.0;
    for (long k = 0; k <= 60; ++k) mass += poisson_pmf(k, 7.5);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fisher interval covers the true correlation scale") {
    TrialRng rng(15);
    std::vector<double> x(5000), y(5000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = uniform_unit(rng);
        y[i] = uniform_unit(rng);
    }
    const Correlation c = pearson_correlation(x, y);
    CHECK(c.defined);
    CHECK(std::abs(c.r) < 0.05);
    CHECK(c.ci_lo < 0.0);
    CHECK(c.ci_hi > 0.0);
    CHECK(c.p_value >= 0.0);
    CHECK(c.p_value <= 1.0);
}
