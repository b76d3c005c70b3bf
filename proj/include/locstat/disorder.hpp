#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "locstat/geometry.hpp"

namespace locstat {

// Law of the i.i.d. site couplings.  Uniform on [-W/2, W/2] is the default;
// a user-supplied bounded density is sampled by inverse transform on a
// tabulated CDF and must integrate to 1 (checked to 1e-6).
struct DisorderSpec {
    enum class Family { Uniform, TabulatedDensity };

    Family family = Family::Uniform;
    double strength = 4.0;  // W
    std::string density_description = "uniform[-W/2,W/2]";

    // TabulatedDensity: rho sampled on [support_lo, support_hi].
    double support_lo = 0.0, support_hi = 0.0;
    std::vector<double> density_values;  // uniform grid, endpoints included

    static DisorderSpec uniform(double strength);
    static DisorderSpec tabulated(double lo, double hi, std::vector<double> values,
                                  std::string description);

    void validate() const;
    double sample(double unit) const;  // unit in [0,1) -> coupling value
};

// One coupling per lattice site (lattice flavor) or per integer point in the
// box (continuum flavor), in the cube's enumeration order.
std::vector<double> sample_potential(const DisorderSpec& disorder, const CubeSpec& cube,
                                     std::uint64_t rng_seed);

}  // namespace locstat
