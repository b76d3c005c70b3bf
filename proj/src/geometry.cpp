#include "locstat/geometry.hpp"

#include <cmath>
#include <sstream>

#include "locstat/errors.hpp"

namespace locstat {

namespace {

void check_dimension(int d) {
    if (d < 1 || d > 3) throw DimensionError("dimension must be 1, 2 or 3, got " + std::to_string(d));
}

}  // namespace

CubeSpec CubeSpec::lattice(int dimension, long half_side, std::array<long, 3> center) {
    check_dimension(dimension);
    if (half_side < 1) throw DimensionError("lattice half-side must be >= 1");
    CubeSpec c;
    c.flavor_ = Flavor::Lattice;
    c.d_ = dimension;
    c.side_ = 2 * half_side;
    for (int a = 0; a < 3; ++a) c.lo_[a] = (a < dimension) ? center[a] - half_side + 1 : 0;
    return c;
}

CubeSpec CubeSpec::lattice_box(int dimension, std::array<long, 3> lo, long side) {
    check_dimension(dimension);
    if (side < 1) throw DimensionError("lattice box side must be >= 1");
    CubeSpec c;
    c.flavor_ = Flavor::Lattice;
    c.d_ = dimension;
    c.side_ = side;
    c.lo_ = lo;
    for (int a = dimension; a < 3; ++a) c.lo_[a] = 0;
    return c;
}

CubeSpec CubeSpec::continuum(int dimension, long side_length, double grid_spacing,
                             std::array<long, 3> center) {
    check_dimension(dimension);
    if (side_length < 1) throw DimensionError("continuum side length must be >= 1");
    if (!(grid_spacing > 0.0)) throw DimensionError("grid spacing must be positive");
    const double ratio = static_cast<double>(side_length) / grid_spacing;
    const long m = std::lround(ratio);
    if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
        throw DimensionError("side/grid_spacing must be a positive integer");
    CubeSpec c;
    c.flavor_ = Flavor::Continuum;
    c.d_ = dimension;
    c.side_ = side_length;
    c.h_ = grid_spacing;
    for (int a = 0; a < 3; ++a) c.lo_[a] = (a < dimension) ? center[a] : 0;
    return c;
}

long CubeSpec::points_per_axis() const {
    if (flavor_ == Flavor::Lattice) return side_;
    return std::lround(static_cast<double>(side_) / h_);
}

long CubeSpec::size() const {
    long n = 1;
    const long m = points_per_axis();
    for (int a = 0; a < d_; ++a) n *= m;
    return n;
}

long CubeSpec::index_of_site(const std::array<long, 3>& site) const {
    const long m = points_per_axis();
    long idx = 0;
    for (int a = d_ - 1; a >= 0; --a) {
        const long off = site[a] - lo_[a];
        if (off < 0 || off >= m) throw DimensionError("site outside cube");
        idx = idx * m + off;
    }
    return idx;
}

std::array<long, 3> CubeSpec::site_of_index(long index) const {
    const long m = points_per_axis();
    if (index < 0 || index >= size()) throw DimensionError("site index out of range");
    std::array<long, 3> site = {0, 0, 0};
    for (int a = 0; a < d_; ++a) {
        site[a] = lo_[a] + index % m;
        index /= m;
    }
    return site;
}

bool CubeSpec::contains_site(const std::array<long, 3>& site) const {
    const long m = points_per_axis();
    for (int a = 0; a < d_; ++a) {
        const long off = site[a] - lo_[a];
        if (off < 0 || off >= m) return false;
    }
    return true;
}

double CubeSpec::grid_coordinate(long g, int axis) const {
    // Box (lo, lo+side] sampled at lo + h, lo + 2h, ..., lo + side.
    const double left = static_cast<double>(lo_[axis]) - static_cast<double>(side_) / 2.0;
    return left + static_cast<double>(g + 1) * h_;
}

std::vector<std::array<long, 3>> CubeSpec::integer_points() const {
    std::vector<std::array<long, 3>> pts;
    if (flavor_ == Flavor::Lattice) {
        pts.reserve(size());
        for (long i = 0; i < size(); ++i) pts.push_back(site_of_index(i));
        return pts;
    }
    // Integer n per axis with n in (left, left+side]; left = lo - side/2.
    std::array<std::vector<long>, 3> axis_pts;
    long total = 1;
    for (int a = 0; a < d_; ++a) {
        const double left = static_cast<double>(lo_[a]) - static_cast<double>(side_) / 2.0;
        const long first = static_cast<long>(std::floor(left)) + 1;
        for (long n = first; n <= static_cast<long>(std::floor(left + side_)); ++n)
            axis_pts[a].push_back(n);
        total *= static_cast<long>(axis_pts[a].size());
    }
    pts.reserve(total);
    std::array<long, 3> p = {0, 0, 0};
    std::array<std::size_t, 3> cursor = {0, 0, 0};
    for (long i = 0; i < total; ++i) {
        long rem = i;
        for (int a = 0; a < d_; ++a) {
            cursor[a] = rem % axis_pts[a].size();
            rem /= axis_pts[a].size();
            p[a] = axis_pts[a][cursor[a]];
        }
        pts.push_back(p);
    }
    return pts;
}

std::string CubeSpec::describe() const {
    std::ostringstream os;
    os << (flavor_ == Flavor::Lattice ? "lattice" : "continuum") << " d=" << d_ << " side=" << side_;
    if (flavor_ == Flavor::Continuum) os << " h=" << h_;
    return os.str();
}

namespace {

SubcubePartition tile(const CubeSpec& cube, long ell, long requested) {
    const long side = cube.side();
    SubcubePartition part;
    part.requested_ell = requested;
    part.ell = ell;
    const long per_axis = side / ell;
    long n = 1;
    for (int a = 0; a < cube.dimension(); ++a) n *= per_axis;
    part.n_blocks = n;
    part.subcubes.reserve(n);
    for (long b = 0; b < n; ++b) {
        std::array<long, 3> lo = cube.lo();
        long rem = b;
        for (int a = 0; a < cube.dimension(); ++a) {
            lo[a] += (rem % per_axis) * ell;
            rem /= per_axis;
        }
        part.subcubes.push_back(CubeSpec::lattice_box(cube.dimension(), lo, ell));
    }
    return part;
}

}  // namespace

SubcubePartition partition_subcubes(const CubeSpec& cube, double beta) {
    if (cube.flavor() != CubeSpec::Flavor::Lattice)
        throw DimensionError("sub-cube partition requires the lattice flavor");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0,1)");
    const long side = cube.side();
    const long requested = static_cast<long>(std::ceil(std::pow(static_cast<double>(side), beta)));
    long ell = 0;
    for (long cand = std::min(requested, side); cand >= 1; --cand) {
        if (side % cand == 0) {
            ell = cand;
            break;
        }
    }
    if (ell < 2)
        throw DegeneratePartitionError("no sub-cube side >= 2 divides side " + std::to_string(side) +
                                       " below requested " + std::to_string(requested));
    return tile(cube, ell, requested);
}

SubcubePartition partition_subcubes_with_side(const CubeSpec& cube, long ell) {
    if (cube.flavor() != CubeSpec::Flavor::Lattice)
        throw DimensionError("sub-cube partition requires the lattice flavor");
    if (ell < 1 || cube.side() % ell != 0)
        throw DegeneratePartitionError("requested sub-cube side " + std::to_string(ell) +
                                       " does not divide side " + std::to_string(cube.side()));
    return tile(cube, ell, ell);
}

}  // namespace locstat
