#pragma once

#include <span>

namespace locstat::stats {

struct DosEstimate {
    double energy = 0.0;
    double n_hat = 0.0;
    double ci_half_width = 0.0;
    long trials = 0;
    double bin_width = 0.0;
    double volume = 0.0;

    double lo() const { return n_hat - ci_half_width; }
    double hi() const { return n_hat + ci_half_width; }
};

// Density-of-states estimate from per-trial eigenvalue counts in the bin
// (E - bin/2, E + bin/2].  The interval combines the Monte Carlo error with
// a half-count resolution floor, so zero-variance (deterministic) ensembles
// still carry their quantization uncertainty.
DosEstimate dos_from_counts(std::span<const long> counts, double volume, double bin_width,
                            double energy, double confidence = 0.95);

}  // namespace locstat::stats
