#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "locstat/errors.hpp"
#include "locstat/model.hpp"
#include "locstat/resolvent.hpp"
#include "locstat/rng.hpp"

using namespace locstat;
using cplx = std::complex<double>;

namespace {

OperatorMatrix random_anderson_1d(TrialRng& rng, long half, double w) {
    const CubeSpec cube = CubeSpec::lattice(1, half);
    std::vector<double> pot(cube.size());
    for (auto& v : pot) v = w * (uniform_unit(rng) - 0.5);
    return build_lattice_hamiltonian(cube, pot);
}

}  // namespace

TEST_CASE("one-site resolvent is the scalar inverse") {
    const OperatorMatrix h({0.0}, {});
    const cplx g = green_entry(h, 0, 0, 0.0, 1.0);
    // (0 - i)^-1 = i
    CHECK(std::abs(g - cplx(0.0, 1.0)) <= 1e-14);
}

TEST_CASE("resolvent entries are symmetric in x and y") {
    TrialRng rng(5);
    const auto h = random_anderson_1d(rng, 40, 4.0);
    for (int rep = 0; rep < 10; ++rep) {
        const long x = static_cast<long>(uniform_unit(rng) * h.size());
        const long y = static_cast<long>(uniform_unit(rng) * h.size());
        const cplx gxy = green_entry(h, x, y, 0.3, 1e-2);
        const cplx gyx = green_entry(h, y, x, 0.3, 1e-2);
        CHECK(std::abs(gxy - gyx) <= 1e-10);
    }
}

TEST_CASE("solves satisfy the residual contract") {
    TrialRng rng(9);
    for (int rep = 0; rep < 10; ++rep) {
        const auto h = random_anderson_1d(rng, 100, 4.0);
        const long y = static_cast<long>(uniform_unit(rng) * h.size());
        const double E = 2.0 * (uniform_unit(rng) - 0.5);
        const auto g = resolvent_column(h, y, E, 1e-3);
        std::vector<cplx> work(h.size()), rhs(h.size(), cplx(0.0));
        rhs[y] = 1.0;
        h.apply_shifted(g, cplx(E, 1e-3), work);
        double r2 = 0.0;
        for (long i = 0; i < h.size(); ++i) r2 += std::norm(work[i] - rhs[i]);
        CHECK(std::sqrt(r2) <= 2e-10);
    }
}

TEST_CASE("resolvent identity bounds the difference between shifts") {
    TrialRng rng(13);
    const auto h = random_anderson_1d(rng, 30, 4.0);
    const double e1 = 0.1, e2 = 0.25;
    for (int rep = 0; rep < 5; ++rep) {
        const long x = static_cast<long>(uniform_unit(rng) * h.size());
        const long y = static_cast<long>(uniform_unit(rng) * h.size());
        const cplx z1(0.0, e1), z2(0.5, e2);
        const cplx g1 = green_entry(h, x, y, z1.real(), e1);
        const cplx g2 = green_entry(h, x, y, z2.real(), e2);
        CHECK(std::abs(g1 - g2) <= std::abs(z1 - z2) / (e1 * e2) + 1e-12);
    }
}

TEST_CASE("dense fallback handles the 2d lattice") {
    TrialRng rng(21);
    const CubeSpec cube = CubeSpec::lattice(2, 3);
    std::vector<double> pot(cube.size());
    for (auto& v : pot) v = 4.0 * (uniform_unit(rng) - 0.5);
    const auto h = build_lattice_hamiltonian(cube, pot);
    const cplx g01 = green_entry(h, 0, 1, 0.0, 1e-2);
    const cplx g10 = green_entry(h, 1, 0, 0.0, 1e-2);
    CHECK(std::abs(g01 - g10) <= 1e-10);
    CHECK(std::abs(g01) <= 1.0 / 1e-2);
}

TEST_CASE("eps must be positive and indices in range") {
    const OperatorMatrix h({0.0, 0.0}, {{1, {1.0}}});
    CHECK_THROWS_AS(green_entry(h, 0, 0, 0.0, 0.0), IntervalError);
    CHECK_THROWS_AS(green_entry(h, 0, 5, 0.0, 1.0), DimensionError);
}

TEST_CASE("fractional moments respect the deterministic eps bound") {
    const CubeSpec cube = CubeSpec::lattice(1, 32);
    std::vector<long> seps = {1, 3, 5};
    const auto rep = fractional_moment_estimate(cube, DisorderSpec::uniform(4.0),
                                                cube.index_of_site({0, 0, 0}), seps, 0.0, 0.05, 0.5,
                                                50, 99);
    for (double m : rep.mean_abs_g_s) CHECK(m <= std::pow(1.0 / 0.05, 0.5) + 1e-12);
}

TEST_CASE("s near zero flattens the moment toward one") {
    const CubeSpec cube = CubeSpec::lattice(1, 16);
    std::vector<long> seps = {0};
    const auto rep = fractional_moment_estimate(cube, DisorderSpec::uniform(4.0),
                                                cube.index_of_site({0, 0, 0}), seps, 0.0, 1.0, 1e-6,
                                                20, 7);
    CHECK(rep.mean_abs_g_s[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("localized regime shows exponential decay of the half moment") {
    const CubeSpec cube = CubeSpec::lattice(1, 48);
    std::vector<long> seps;
    for (long s = 5; s <= 30; ++s) seps.push_back(s);
    const auto rep = fractional_moment_estimate(cube, DisorderSpec::uniform(4.0),
                                                cube.index_of_site({0, 0, 0}), seps, 0.0, 1e-3, 0.5,
                                                200, 12345);
    CHECK(rep.fit.slope < 0.0);
    CHECK(rep.fit.r_squared >= 0.9);
}

TEST_CASE("continuum cell-to-cell moments decay at low energies") {
    const CubeSpec cube = CubeSpec::continuum(1, 96, 0.5);
    std::vector<long> seps;
    for (long s = 4; s <= 20; s += 2) seps.push_back(s);
    const auto rep = fractional_moment_estimate_continuum(cube, DisorderSpec::uniform(4.0),
                                                          BumpProfile::indicator(), 0, seps, 0.5,
                                                          1e-3, 0.5, 150, 321);
    CHECK(rep.fit.slope < 0.0);
    CHECK(rep.fit.r_squared >= 0.9);
}

TEST_CASE("zero trials are rejected") {
    const CubeSpec cube = CubeSpec::lattice(1, 8);
    CHECK_THROWS_AS(fractional_moment_estimate(cube, DisorderSpec::uniform(4.0), 0, {1}, 0.0, 1e-2,
                                               0.5, 0, 1),
                    EmptyEnsembleError);
}
