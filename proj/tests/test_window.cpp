#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locstat/errors.hpp"
#include "locstat/rng.hpp"
#include "locstat/window.hpp"

using namespace locstat;

TEST_CASE("window construction validates and sorts") {
    const Window w = Window::from_intervals({{2.0, 3.0}, {0.0, 1.0}});
    CHECK(w.intervals()[0].lo == 0.0);
    CHECK(w.length() == doctest::Approx(2.0));
    CHECK(w.diameter() == doctest::Approx(3.0));
    CHECK_THROWS_AS(Window::from_intervals({{0.0, 2.0}, {1.0, 3.0}}), IntervalError);
    CHECK_THROWS_AS(Window::of(1.0, 0.0), IntervalError);
    // adjacent half-open intervals are disjoint
    CHECK_NOTHROW(Window::from_intervals({{0.0, 1.0}, {1.0, 2.0}}));
}

TEST_CASE("rescale maps (0,1] at scale 10 to (0,0.1]") {
    const Window b = Window::of(0.0, 1.0);
    const Window r = rescale_window(b, 0.0, 10.0);
    CHECK(r.intervals()[0].lo == doctest::Approx(0.0));
    CHECK(r.intervals()[0].hi == doctest::Approx(0.1));
}

TEST_CASE("rescale translates then shrinks") {
    const Window r = rescale_window(Window::of(-1.0, 1.0), 2.0, 100.0);
    CHECK(r.intervals()[0].lo == doctest::Approx(1.99));
    CHECK(r.intervals()[0].hi == doctest::Approx(2.01));
}

TEST_CASE("rescale scales lengths exactly") {
    TrialRng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const double a = 10.0 * (uniform_unit(rng) - 0.5);
        const double b = a + 5.0 * uniform_unit(rng);
        const double v = 0.5 + 100.0 * uniform_unit(rng);
        const double e = 4.0 * (uniform_unit(rng) - 0.5);
        const Window r = rescale_window(Window::of(a, b), e, v);
        CHECK(r.length() == doctest::Approx((b - a) / v).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rescale_window(Window::of(0.0, 1.0), 0.0, 0.0), ScaleError);
    CHECK_THROWS_AS(rescale_window(Window::of(0.0, 1.0), 0.0, -2.0), ScaleError);
}

TEST_CASE("disjoint union refuses overlapping windows") {
    const Window a = Window::of(0.0, 1.0);
    const Window b = Window::of(0.5, 2.0);
    CHECK(!Window::disjoint_union(a, b).has_value());
    const auto u = Window::disjoint_union(a, Window::of(1.5, 2.0));
    REQUIRE(u.has_value());
    CHECK(u->length() == doctest::Approx(1.5));
}

TEST_CASE("disjointness scale: hand-evaluated ladder entries") {
    const Window unit = Window::of(0.0, 1.0);
    // d=1, V(L)=L: need 2/L < 1/2 so L0 = 5
    CHECK(min_scale_for_disjointness(unit, unit, 0.0, 1.0, [](long L) { return double(L); }) == 5);
    // d=2, V(L)=L^2: need 2/L^2 < 1/2 so L0 = 3
    CHECK(min_scale_for_disjointness(unit, unit, 0.0, 1.0,
                                     [](long L) { return double(L) * double(L); }) == 3);
}

TEST_CASE("equal energies make the disjointness scale undefined") {
    const Window unit = Window::of(0.0, 1.0);
    CHECK_THROWS_AS(
        min_scale_for_disjointness(unit, unit, 0.5, 0.5, [](long L) { return double(L); }),
        IntervalError);
}

TEST_CASE("returned scale really separates the rescaled windows") {
    TrialRng rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        const double half_a = 0.1 + 3.0 * uniform_unit(rng);
        const double half_b = 0.1 + 3.0 * uniform_unit(rng);
        const Window a = Window::of(-half_a, half_a);
        const Window b = Window::of(-half_b, half_b);
        const double e = 2.0 * (uniform_unit(rng) - 0.5);
        double ep = e;
        while (ep == e) ep = 2.0 * (uniform_unit(rng) - 0.5);
        const auto vol = [](long L) { return static_cast<double>(L); };
        const long l0 = min_scale_for_disjointness(a, b, e, ep, vol);
        for (long L : {l0, 2 * l0, 4 * l0}) {
            const Window ra = rescale_window(a, e, vol(L));
            const Window rb = rescale_window(b, ep, vol(L));
            CHECK(!ra.intersects(rb));
        }
    }
}

TEST_CASE("ladder restriction picks the first adequate entry") {
    const Window unit = Window::of(0.0, 1.0);
    const std::vector<long> ladder = {2, 4, 8, 16};
    const long l0 = min_scale_for_disjointness(unit, unit, 0.0, 1.0,
                                               [](long L) { return double(L); }, ladder);
    CHECK(l0 == 8);  // 2/8 = 0.25 < 0.5, while 2/4 = 0.5 fails the strict bound
}
