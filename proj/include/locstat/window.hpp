#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "locstat/inertia.hpp"

namespace locstat {

// A finite union of disjoint half-open intervals (a, b], kept sorted.
// The half-open convention makes counts over disjoint unions add exactly.
class Window {
public:
    Window() = default;
    static Window of(double lo, double hi);  // single interval
    static Window from_intervals(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    double length() const;    // sum of interval lengths
    double diameter() const;  // sup - inf (0 when empty)
    double inf() const;
    double sup() const;

    bool intersects(const Window& other) const;
    // The union as a window; nullopt when the two overlap.
    static std::optional<Window> disjoint_union(const Window& a, const Window& b);

private:
    std::vector<Interval> parts_;
};

// B -> E + B/V, interval by interval.
Window rescale_window(const Window& b, double E, double V);

// Smallest ladder entry L with (diam(A) + diam(B)) / V(L) < |E - E'| / 2;
// the default ladder is the positive integers.
long min_scale_for_disjointness(const Window& a, const Window& b, double E, double E_prime,
                                const std::function<double(long)>& volume_of,
                                std::span<const long> ladder = {});

}  // namespace locstat
