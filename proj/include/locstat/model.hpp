#pragma once

#include <span>
#include <string>
#include <vector>

#include "locstat/disorder.hpp"
#include "locstat/geometry.hpp"
#include "locstat/operator_matrix.hpp"

namespace locstat {

// Single-site bump profile for the continuum potential sum(n) w_n u(x - n).
// Both defaults form a partition of unity over the integer lattice.
struct BumpProfile {
    enum class Kind { Indicator, Tent };
    Kind kind = Kind::Indicator;

    static BumpProfile indicator() { return {Kind::Indicator}; }
    static BumpProfile tent() { return {Kind::Tent}; }
    static BumpProfile parse(const std::string& name);

    // Product profile evaluated at the offset x - n (per axis values given).
    double evaluate(std::span<const double> offset) const;
    // Support radius per axis; contributions vanish beyond it.
    double support_radius() const { return kind == Kind::Indicator ? 0.5 : 1.0; }
    std::string name() const { return kind == Kind::Indicator ? "indicator" : "tent"; }
};

// Nearest-neighbor hopping on the cube plus the sampled on-site couplings;
// plain truncation at the cube boundary (no wraparound).
OperatorMatrix build_lattice_hamiltonian(const CubeSpec& cube, std::span<const double> potential);

// Restrictions of the same realization to the partition blocks; block p
// depends only on the couplings at its own sites.
std::vector<OperatorMatrix> build_subcube_hamiltonians(const CubeSpec& cube,
                                                       const SubcubePartition& partition,
                                                       std::span<const double> potential);
std::vector<OperatorMatrix> build_subcube_hamiltonians(const CubeSpec& cube, double beta,
                                                       std::span<const double> potential);

// Second-order finite-difference Dirichlet Laplacian plus the bump-summed
// potential evaluated at the grid points.  `potential` is indexed like
// cube.integer_points().
OperatorMatrix build_continuum_hamiltonian(const CubeSpec& cube, const BumpProfile& bump,
                                           std::span<const double> potential);

}  // namespace locstat
