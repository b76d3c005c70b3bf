#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "locstat/rng.hpp"

using namespace locstat;

TEST_CASE("seed derivation is deterministic") {
    CHECK(derive_trial_seed(123, 45) == derive_trial_seed(123, 45));
    CHECK(derive_trial_seed(123, 45) != derive_trial_seed(123, 46));
    CHECK(derive_trial_seed(123, 45) != derive_trial_seed(124, 45));
}

TEST_CASE("golden seed vector") {
    // First output of the SplitMix64 stream from master 0; frozen in the
    // README's reproducibility notes.
    CHECK(derive_trial_seed(0, 0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("no collisions across a million trial indices") {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1u << 20);
    for (std::uint64_t i = 0; i < 1000000; ++i) seen.insert(derive_trial_seed(42, i));
    CHECK(seen.size() == 1000000);
}

TEST_CASE("unit doubles stay in [0,1)") {
    TrialRng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform_unit(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
