#include "locstat/disorder.hpp"

#include <algorithm>
#include <cmath>

#include "locstat/errors.hpp"
#include "locstat/rng.hpp"

namespace locstat {

DisorderSpec DisorderSpec::uniform(double strength) {
    DisorderSpec s;
    s.family = Family::Uniform;
    s.strength = strength;
    s.density_description = "uniform[-W/2,W/2], W=" + std::to_string(strength);
    s.validate();
    return s;
}

DisorderSpec DisorderSpec::tabulated(double lo, double hi, std::vector<double> values,
                                     std::string description) {
    DisorderSpec s;
    s.family = Family::TabulatedDensity;
    s.strength = hi - lo;
    s.support_lo = lo;
    s.support_hi = hi;
    s.density_values = std::move(values);
    s.density_description = std::move(description);
    s.validate();
    return s;
}

void DisorderSpec::validate() const {
    // W = 0 is allowed as the degenerate no-disorder point (free operator);
    // the uniform law then collapses to the unit mass at zero.
    if (!(strength >= 0.0)) throw ConfigError("disorder strength W must be nonnegative");
    if (family == Family::TabulatedDensity) {
        if (!(strength > 0.0)) throw ConfigError("tabulated disorder needs positive support width");
        if (density_values.size() < 2) throw ConfigError("tabulated density needs >= 2 samples");
        if (!(support_hi > support_lo)) throw ConfigError("tabulated density support is empty");
        for (double v : density_values)
            if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("density values must be finite and nonnegative");
        // Trapezoid mass must be 1 to 1e-6.
        const double dx = (support_hi - support_lo) / static_cast<double>(density_values.size() - 1);
        double mass = 0.0;
        for (std::size_t i = 0; i + 1 < density_values.size(); ++i)
            mass += 0.5 * (density_values[i] + density_values[i + 1]) * dx;
        if (std::abs(mass - 1.0) > 1e-6)
            throw ConfigError("tabulated density integrates to " + std::to_string(mass) + ", expected 1");
    }
}

double DisorderSpec::sample(double unit) const {
    if (family == Family::Uniform) return strength * (unit - 0.5);
    // Inverse transform on the trapezoid CDF.
    const std::size_t m = density_values.size();
    const double dx = (support_hi - support_lo) / static_cast<double>(m - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double seg = 0.5 * (density_values[i] + density_values[i + 1]) * dx;
        if (unit <= acc + seg || i + 2 == m) {
            const double frac = seg > 0.0 ? (unit - acc) / seg : 0.0;
            return support_lo + (static_cast<double>(i) + std::clamp(frac, 0.0, 1.0)) * dx;
        }
        acc += seg;
    }
    return support_hi;
}

std::vector<double> sample_potential(const DisorderSpec& disorder, const CubeSpec& cube,
                                     std::uint64_t rng_seed) {
    disorder.validate();
    const long n = cube.flavor() == CubeSpec::Flavor::Lattice
                       ? cube.size()
                       : static_cast<long>(cube.integer_points().size());
    TrialRng rng(rng_seed);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (auto& v : values) v = disorder.sample(uniform_unit(rng));
    return values;
}

}  // namespace locstat
