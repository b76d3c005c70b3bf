#include "locstat/window.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "locstat/errors.hpp"

namespace locstat {

Window Window::of(double lo, double hi) { return from_intervals({{lo, hi}}); }

Window Window::from_intervals(std::vector<Interval> intervals) {
    for (const Interval& iv : intervals) {
        if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi))) throw IntervalError("interval endpoints must be finite");
        if (iv.lo > iv.hi) throw IntervalError("interval (a, b] requires a <= b");
    }
    std::erase_if(intervals, [](const Interval& iv) { return iv.lo == iv.hi; });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < intervals.size(); ++i)
        if (intervals[i].lo < intervals[i - 1].hi)
            throw IntervalError("window intervals must be pairwise disjoint");
    Window w;
    w.parts_ = std::move(intervals);
    return w;
}

double Window::length() const {
    double s = 0.0;
    for (const Interval& iv : parts_) s += iv.hi - iv.lo;
    return s;
}

double Window::diameter() const { return parts_.empty() ? 0.0 : sup() - inf(); }

double Window::inf() const {
    return parts_.empty() ? std::numeric_limits<double>::quiet_NaN() : parts_.front().lo;
}

double Window::sup() const {
    return parts_.empty() ? std::numeric_limits<double>::quiet_NaN() : parts_.back().hi;
}

bool Window::intersects(const Window& other) const {
    // Half-open intervals (a, b] and (c, d] meet iff a < d and c < b.
    for (const Interval& p : parts_)
        for (const Interval& q : other.parts_)
            if (p.lo < q.hi && q.lo < p.hi) return true;
    return false;
}

std::optional<Window> Window::disjoint_union(const Window& a, const Window& b) {
    if (a.intersects(b)) return std::nullopt;
    std::vector<Interval> all = a.parts_;
    all.insert(all.end(), b.parts_.begin(), b.parts_.end());
    return from_intervals(std::move(all));
}

Window rescale_window(const Window& b, double E, double V) {
    if (!(V > 0.0)) throw ScaleError("volume normalization must be positive");
    std::vector<Interval> scaled;
    scaled.reserve(b.intervals().size());
    for (const Interval& iv : b.intervals()) scaled.push_back({E + iv.lo / V, E + iv.hi / V});
    return Window::from_intervals(std::move(scaled));
}

long min_scale_for_disjointness(const Window& a, const Window& b, double E, double E_prime,
                                const std::function<double(long)>& volume_of,
                                std::span<const long> ladder) {
    const double alpha = std::abs(E - E_prime);
    if (alpha == 0.0) throw IntervalError("disjointness scale undefined for E = E'");
    const double total_diam = a.diameter() + b.diameter();
    auto satisfied = [&](long L) {
        const double V = volume_of(L);
        return V > 0.0 && total_diam / V < alpha / 2.0;
    };
    if (!ladder.empty()) {
        for (long L : ladder)
            if (satisfied(L)) return L;
        throw ScaleError("no ladder entry separates the rescaled windows");
    }
    for (long L = 1; L <= (1L << 40); ++L)
        if (satisfied(L)) return L;
    throw ScaleError("no integer scale separates the rescaled windows");
}

}  // namespace locstat
