#pragma once

#include <cmath>

#include "locstat/rng.hpp"

namespace testutil {

inline long poisson_draw(locstat::TrialRng& rng, double lambda) {
    const double limit = std::exp(-lambda);
    long k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= locstat::uniform_unit(rng);
    } while (p > limit);
    return k - 1;
}

inline double exponential_draw(locstat::TrialRng& rng, double rate) {
    return -std::log(1.0 - locstat::uniform_unit(rng)) / rate;
}

}  // namespace testutil
