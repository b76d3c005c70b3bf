#pragma once

#include <cstdint>

#include "locstat/report.hpp"

namespace locstat {

struct ExperimentOutcome {
    Report report;
    std::vector<EnsembleLevel> levels;
    std::vector<FigurePayload> figures;
};

// Density of states at the two configured energies.
ExperimentOutcome run_dos_experiment(const ExperimentConfig& config);

// Expected per-block window count versus window length (linearity probe).
ExperimentOutcome run_wegner_experiment(const ExperimentConfig& config);

// Sum over blocks of P(count >= 2) along the side ladder.
ExperimentOutcome run_minami_experiment(const ExperimentConfig& config);

// Count and gap statistics of the rescaled process against the Poisson null.
ExperimentOutcome run_poisson_experiment(const ExperimentConfig& config);

// Joint statistics of the processes at the two energies: correlation,
// contingency, characteristic-function factorization.
ExperimentOutcome run_independence_experiment(const ExperimentConfig& config);

// Joint small-window occupation sums along the ladder.
ExperimentOutcome run_decorrelation_experiment(const ExperimentConfig& config);

// Fractional-moment decay of resolvent entries.
ExperimentOutcome run_green_experiment(const ExperimentConfig& config);

// Counting engine versus the dense eigendecomposition oracle on random
// instances; counts must match exactly, located eigenvalues to 1e-9.
ExperimentOutcome run_oracle_check(std::uint64_t seed, long instances, long max_size);

ExperimentOutcome run_experiment(const std::string& name, const ExperimentConfig& config);

}  // namespace locstat
