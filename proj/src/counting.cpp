#include "locstat/counting.hpp"

#include <algorithm>

#include "locstat/errors.hpp"

namespace locstat {

long count_window(const InertiaCounter& counter, const Window& absolute) {
    if (absolute.empty()) return 0;
    // One batched pass over all endpoints; interval counts by differencing.
    std::vector<double> thresholds;
    thresholds.reserve(2 * absolute.intervals().size());
    for (const Interval& iv : absolute.intervals()) {
        thresholds.push_back(iv.lo);
        thresholds.push_back(iv.hi);
    }
    std::vector<long> counts(thresholds.size(), 0);
    counter.count_leq_batch(thresholds, counts);
    long total = 0;
    for (std::size_t i = 0; i < counts.size(); i += 2) total += counts[i + 1] - counts[i];
    return total;
}

long count_window(const OperatorMatrix& h, const Window& absolute) {
    InertiaCounter c(h);
    return count_window(c, absolute);
}

long eta_count(const InertiaCounter& counter, double E, const Window& b, double V) {
    return count_window(counter, rescale_window(b, E, V));
}

long eta_count(const OperatorMatrix& h, double E, const Window& b, double V) {
    InertiaCounter c(h);
    return eta_count(c, E, b, V);
}

long superpose(std::span<const OperatorMatrix> subcube_hams, double E, const Window& b, double V) {
    if (subcube_hams.empty()) throw EmptyEnsembleError("superposition over an empty partition");
    long total = 0;
    for (const OperatorMatrix& h : subcube_hams) total += eta_count(h, E, b, V);
    return total;
}

RescaledPoints extract_rescaled_points(const OperatorMatrix& h, double E, const Window& window,
                                       double V, double tol) {
    if (!(V > 0.0)) throw ScaleError("volume normalization must be positive");
    if (!(tol > 0.0)) throw IntervalError("tolerance must be positive");
    RescaledPoints out;
    InertiaCounter counter(h);
    for (const Interval& iv : window.intervals()) {
        // Preimage of (lo, hi] under u = V*(lambda - E).
        const Interval pre{E + iv.lo / V, E + iv.hi / V};
        for (double lambda : eigenvalues_in(counter, pre, tol / V))
            out.points.push_back(V * (lambda - E));
    }
    std::sort(out.points.begin(), out.points.end());
    for (std::size_t i = 1; i < out.points.size(); ++i)
        out.gaps.push_back(out.points[i] - out.points[i - 1]);
    return out;
}

}  // namespace locstat
