#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace locstat {

// A d-dimensional box of lattice sites (or of grid/integer points for the
// continuum flavor).  Stored as the lowest corner plus a common side length,
// so sub-boxes of any side can be represented uniformly.
//
// Lattice flavor: sites {lo, ..., lo+side-1}^d per axis; the canonical cube
// of half-side L centered at c has sites {c-L+1, ..., c+L} and side 2L.
// Continuum flavor: box (c-L/2, c+L/2]^d with grid spacing h; side = L and
// L/h must be a positive integer.
class CubeSpec {
public:
    enum class Flavor { Lattice, Continuum };

    static CubeSpec lattice(int dimension, long half_side,
                            std::array<long, 3> center = {0, 0, 0});
    static CubeSpec lattice_box(int dimension, std::array<long, 3> lo, long side);
    static CubeSpec continuum(int dimension, long side_length, double grid_spacing,
                              std::array<long, 3> center = {0, 0, 0});

    Flavor flavor() const { return flavor_; }
    int dimension() const { return d_; }
    long side() const { return side_; }
    const std::array<long, 3>& lo() const { return lo_; }
    double grid_spacing() const { return h_; }

    // Number of sites (lattice) or grid points (continuum).
    long size() const;
    // Grid points per axis: side (lattice) or side/h (continuum).
    long points_per_axis() const;

    // Deterministic lexicographic enumeration: axis 0 fastest.
    long index_of_site(const std::array<long, 3>& site) const;
    std::array<long, 3> site_of_index(long index) const;
    bool contains_site(const std::array<long, 3>& site) const;

    // Continuum: coordinate of grid point g in {0,...,m-1} along one axis,
    // x = lo + (g+1)*h with lo the open left edge of the box.
    double grid_coordinate(long g, int axis) const;

    // Integer points n with n in (lo_edge, lo_edge+side] per axis (the
    // lattice of bump centers inside a continuum box); lattice flavor: the
    // sites themselves.
    std::vector<std::array<long, 3>> integer_points() const;

    bool operator==(const CubeSpec&) const = default;
    std::string describe() const;

private:
    Flavor flavor_ = Flavor::Lattice;
    int d_ = 1;
    std::array<long, 3> lo_ = {0, 0, 0};
    long side_ = 1;
    double h_ = 1.0;  // continuum grid spacing
};

struct SubcubePartition {
    std::vector<CubeSpec> subcubes;  // lexicographic block order
    long n_blocks = 0;               // n_L = (side/ell)^d
    long requested_ell = 0;          // ceil(side^beta) before adjustment
    long ell = 0;                    // adopted divisor of the side
};

// Tile the cube with disjoint translated blocks of side ell0 adjusted down
// to the largest divisor of the side; blocks cover the cube exactly.
SubcubePartition partition_subcubes(const CubeSpec& cube, double beta);
SubcubePartition partition_subcubes_with_side(const CubeSpec& cube, long ell);

}  // namespace locstat
