#include "locstat/stats/dos.hpp"

#include <algorithm>
#include <vector>

#include "locstat/errors.hpp"
#include "locstat/stats/descriptive.hpp"

namespace locstat::stats {

DosEstimate dos_from_counts(std::span<const long> counts, double volume, double bin_width,
                            double energy, double confidence) {
    if (counts.empty()) throw EmptyEnsembleError("DOS estimate needs at least one trial");
    if (!(bin_width > 0.0)) throw ConfigError("DOS bin width must be positive");
    if (!(volume > 0.0)) throw ScaleError("DOS volume normalization must be positive");

    std::vector<double> normalized;
    normalized.reserve(counts.size());
    const double scale = 1.0 / (volume * bin_width);
    for (long c : counts) normalized.push_back(static_cast<double>(c) * scale);

    const MeanCi m = mean_ci(normalized, confidence);
    DosEstimate est;
    est.energy = energy;
    est.n_hat = m.mean;
    est.ci_half_width = std::max(m.half_width, 0.5 * scale);
    est.trials = m.n;
    est.bin_width = bin_width;
    est.volume = volume;
    return est;
}

}  // namespace locstat::stats
