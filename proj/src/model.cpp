#include "locstat/model.hpp"

#include <algorithm>
#include <cmath>

#include "locstat/errors.hpp"

namespace locstat {

BumpProfile BumpProfile::parse(const std::string& name) {
    if (name == "indicator") return indicator();
    if (name == "tent") return tent();
    throw ConfigError("unknown bump profile '" + name + "'");
}

double BumpProfile::evaluate(std::span<const double> offset) const {
    double v = 1.0;
    for (double o : offset) {
        if (kind == Kind::Indicator) {
            // Unit cell [-1/2, 1/2) centered at the integer point.
            if (o < -0.5 || o >= 0.5) return 0.0;
        } else {
            const double t = 1.0 - std::abs(o);
            if (t <= 0.0) return 0.0;
            v *= t;
        }
    }
    return v;
}

OperatorMatrix build_lattice_hamiltonian(const CubeSpec& cube, std::span<const double> potential) {
    if (cube.flavor() != CubeSpec::Flavor::Lattice)
        throw DimensionError("build_lattice_hamiltonian requires the lattice flavor");
    const long n = cube.size();
    if (static_cast<long>(potential.size()) != n)
        throw DimensionError("potential length " + std::to_string(potential.size()) +
                             " does not match site count " + std::to_string(n));

    std::vector<double> diag(potential.begin(), potential.end());
    // Lexicographic enumeration puts axis-a neighbors at offset side^a,
    // except across block boundaries where the neighbor leaves the cube.
    std::vector<OperatorMatrix::Band> bands;
    const long side = cube.side();
    long stride = 1;
    for (int a = 0; a < cube.dimension(); ++a) {
        OperatorMatrix::Band band;
        band.offset = stride;
        band.values.assign(static_cast<std::size_t>(n - stride), 0.0);
        for (long i = 0; i + stride < n; ++i) {
            const long coord = (i / stride) % side;
            if (coord + 1 < side) band.values[i] = 1.0;
        }
        bands.push_back(std::move(band));
        stride *= side;
    }
    OperatorMatrix h(std::move(diag), std::move(bands), OperatorMatrix::Flavor::LatticeAnderson);
    h.set_cube(cube);
    return h;
}

std::vector<OperatorMatrix> build_subcube_hamiltonians(const CubeSpec& cube,
                                                       const SubcubePartition& partition,
                                                       std::span<const double> potential) {
    if (static_cast<long>(potential.size()) != cube.size())
        throw DimensionError("potential length does not match site count");
    std::vector<OperatorMatrix> out;
    out.reserve(partition.subcubes.size());
    for (const CubeSpec& block : partition.subcubes) {
        std::vector<double> local(static_cast<std::size_t>(block.size()));
        for (long j = 0; j < block.size(); ++j)
            local[j] = potential[cube.index_of_site(block.site_of_index(j))];
        out.push_back(build_lattice_hamiltonian(block, local));
    }
    return out;
}

std::vector<OperatorMatrix> build_subcube_hamiltonians(const CubeSpec& cube, double beta,
                                                       std::span<const double> potential) {
    return build_subcube_hamiltonians(cube, partition_subcubes(cube, beta), potential);
}

OperatorMatrix build_continuum_hamiltonian(const CubeSpec& cube, const BumpProfile& bump,
                                           std::span<const double> potential) {
    if (cube.flavor() != CubeSpec::Flavor::Continuum)
        throw DimensionError("build_continuum_hamiltonian requires the continuum flavor");
    const double h = cube.grid_spacing();
    if (h >= 1.0)
        throw DimensionError("grid spacing must resolve the unit bump lattice (h < 1)");

    const auto centers = cube.integer_points();
    if (potential.size() != centers.size())
        throw DimensionError("potential length " + std::to_string(potential.size()) +
                             " does not match integer-point count " + std::to_string(centers.size()));

    const long n = cube.size();
    const long m = cube.points_per_axis();
    const int d = cube.dimension();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<double> diag(static_cast<std::size_t>(n), 2.0 * d * inv_h2);

    // Integer-point index arithmetic: per axis the points are the consecutive
    // integers in (left, left+side], so a center maps to its flat index
    // without search.
    std::array<long, 3> first = {0, 0, 0};
    std::array<long, 3> axis_count = {1, 1, 1};
    for (int a = 0; a < d; ++a) {
        const double left = static_cast<double>(cube.lo()[a]) - static_cast<double>(cube.side()) / 2.0;
        first[a] = static_cast<long>(std::floor(left)) + 1;
        axis_count[a] = static_cast<long>(std::floor(left + cube.side())) - first[a] + 1;
    }

    // Potential: each grid point collects the few bumps whose support
    // reaches it (at most 3 integers per axis for the tent profile).
    const double rad = bump.support_radius();
    for (long i = 0; i < n; ++i) {
        std::array<double, 3> x = {0.0, 0.0, 0.0};
        std::array<long, 3> cand_lo = {0, 0, 0}, cand_hi = {0, 0, 0};
        long rem = i;
        for (int a = 0; a < d; ++a) {
            x[a] = cube.grid_coordinate(rem % m, a);
            rem /= m;
            cand_lo[a] = std::max(first[a], static_cast<long>(std::ceil(x[a] - rad)));
            cand_hi[a] = std::min(first[a] + axis_count[a] - 1, static_cast<long>(std::floor(x[a] + rad)));
        }
        double v = 0.0;
        std::array<long, 3> c = cand_lo;
        while (true) {
            std::array<double, 3> off = {0.0, 0.0, 0.0};
            long flat = 0;
            for (int a = d - 1; a >= 0; --a) {
                off[a] = x[a] - static_cast<double>(c[a]);
                flat = flat * axis_count[a] + (c[a] - first[a]);
            }
            bool in_range = true;
            for (int a = 0; a < d; ++a)
                if (c[a] > cand_hi[a]) in_range = false;
            if (in_range)
                v += potential[flat] * bump.evaluate(std::span<const double>(off.data(), d));
            int a = 0;
            for (; a < d; ++a) {
                if (++c[a] <= cand_hi[a]) break;
                c[a] = cand_lo[a];
            }
            if (a == d) break;
        }
        diag[i] += v;
    }

    std::vector<OperatorMatrix::Band> bands;
    long stride = 1;
    for (int a = 0; a < d; ++a) {
        OperatorMatrix::Band band;
        band.offset = stride;
        band.values.assign(static_cast<std::size_t>(n - stride), 0.0);
        for (long i = 0; i + stride < n; ++i) {
            const long coord = (i / stride) % m;
            if (coord + 1 < m) band.values[i] = -inv_h2;
        }
        bands.push_back(std::move(band));
        stride *= m;
    }
    OperatorMatrix op(std::move(diag), std::move(bands), OperatorMatrix::Flavor::ContinuumSchroedinger);
    op.set_cube(cube);
    return op;
}

}  // namespace locstat
