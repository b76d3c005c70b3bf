// Equivalence of the SIMD counting lanes with the scalar reference: counts
// must agree bit for bit on identical inputs, including remainders, empty
// matrices and thresholds parked exactly on eigenvalues.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "locstat/dense_oracle.hpp"
#include "locstat/kernels/sturm.hpp"
#include "locstat/model.hpp"
#include "locstat/rng.hpp"

using namespace locstat;
using namespace locstat::kernels;

namespace {

struct Tridiag {
    std::vector<double> diag, e, e2;
};

Tridiag random_tridiag(TrialRng& rng, std::size_t n) {
    Tridiag t;
    t.diag.resize(n);
    for (auto& v : t.diag) v = 8.0 * (uniform_unit(rng) - 0.5);
    if (n > 1) {
        t.e.resize(n - 1);
        t.e2.resize(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            t.e[i] = 3.0 * (uniform_unit(rng) - 0.5);
            t.e2[i] = t.e[i] * t.e[i];
        }
    }
    return t;
}

}  // namespace

TEST_CASE("simd lanes reproduce the scalar counts bit for bit") {
    const Backend best = detect_backend();
    if (best == Backend::Scalar) {
        MESSAGE("no SIMD lane on this machine; scalar-only run");
        return;
    }
    TrialRng rng(4242);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = static_cast<std::size_t>(uniform_unit(rng) * 300.0);
        const Tridiag t = random_tridiag(rng, n);
        const TridiagView view{t.diag, t.e2};
        const double pivmin = sturm_pivmin(view);
        const std::size_t m = 1 + static_cast<std::size_t>(uniform_unit(rng) * 13.0);
        std::vector<double> shifts(m);
        for (auto& s : shifts) s = 12.0 * (uniform_unit(rng) - 0.5);
        if (n > 0 && m > 2) {
            shifts[0] = t.diag[0];  // exact diagonal hit
            shifts[1] = t.diag[n / 2];
        }
        std::vector<long> scalar(m), simd(m);
        sturm_count_batch_scalar(view, pivmin, shifts, scalar);
#if defined(LOCSTAT_HAVE_AVX2_TU)
        if (best == Backend::Avx2) sturm_count_batch_avx2(view, pivmin, shifts, simd);
#endif
#if defined(LOCSTAT_HAVE_NEON_TU)
        if (best == Backend::Neon) sturm_count_batch_neon(view, pivmin, shifts, simd);
#endif
        CHECK(scalar == simd);
    }
}

TEST_CASE("dispatched batch equals per-shift scalar calls") {
    TrialRng rng(7);
    const Tridiag t = random_tridiag(rng, 97);
    const TridiagView view{t.diag, t.e2};
    const double pivmin = sturm_pivmin(view);
    std::vector<double> shifts(31);
    for (auto& s : shifts) s = 10.0 * (uniform_unit(rng) - 0.5);
    std::vector<long> batch(shifts.size());
    sturm_count_batch(view, pivmin, shifts, batch);
    for (std::size_t k = 0; k < shifts.size(); ++k)
        CHECK(batch[k] == sturm_count_scalar(view, shifts[k], pivmin));
}

TEST_CASE("sturm counts agree with the dense oracle") {
    TrialRng rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        const long half = 5 + static_cast<long>(uniform_unit(rng) * 45.0);
        const CubeSpec cube = CubeSpec::lattice(1, half);
        std::vector<double> pot(cube.size());
        for (auto& v : pot) v = 4.0 * (uniform_unit(rng) - 0.5);
        const auto h = build_lattice_hamiltonian(cube, pot);
        const auto oracle = dense_spectrum(h);

        std::vector<double> e2(h.size() - 1);
        for (long i = 0; i < h.size() - 1; ++i) {
            const double e = h.bands()[0].values[i];
            e2[i] = e * e;
        }
        const TridiagView view{h.diagonal(), e2};
        const double pivmin = sturm_pivmin(view);
        for (int k = 0; k < 25; ++k) {
            const double a = 12.0 * (uniform_unit(rng) - 0.5);
            long ref = 0;
            for (double ev : oracle)
                if (ev <= a) ++ref;
            CHECK(sturm_count_scalar(view, a, pivmin) == ref);
        }
    }
}

TEST_CASE("backend can be forced to scalar and back") {
    const Backend original = active_backend();
    CHECK(set_backend(Backend::Scalar));
    CHECK(active_backend() == Backend::Scalar);
    CHECK(set_backend(original));
    CHECK(active_backend() == original);
    CHECK(!backend_name(original).empty());
}

TEST_CASE("size-zero and size-one matrices") {
    const TridiagView empty{{}, {}};
    std::vector<double> shifts = {0.0, 1.0, -1.0, 2.0, 3.0};
    std::vector<long> counts(shifts.size(), 99);
    sturm_count_batch(empty, 1e-300, shifts, counts);
    for (long c : counts) CHECK(c == 0);

    const std::vector<double> one_atom = {1.5};
    const TridiagView single{one_atom, {}};
    CHECK(sturm_count_scalar(single, 1.0, 1e-300) == 0);
    CHECK(sturm_count_scalar(single, 1.5, 1e-300) == 1);
    CHECK(sturm_count_scalar(single, 2.0, 1e-300) == 1);
}
