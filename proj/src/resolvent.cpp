#include "locstat/resolvent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "locstat/errors.hpp"
#include "locstat/model.hpp"
#include "locstat/rng.hpp"

namespace locstat {

namespace {

using cplx = std::complex<double>;

// Tridiagonal solve of (T - z) g = rhs by LU with partial pivoting
// (row swaps create one extra superdiagonal of fill).
std::vector<cplx> solve_tridiag_shifted(const OperatorMatrix& h, cplx z, std::vector<cplx> rhs) {
    const long n = h.size();
    std::vector<cplx> dl(n > 1 ? n - 1 : 0), d(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0, 0.0);
    for (long i = 0; i < n; ++i) d[i] = h.diagonal()[i] - z;
    if (!h.bands().empty())
        for (long i = 0; i < n - 1; ++i) dl[i] = du[i] = h.bands()[0].values[i];

    for (long i = 0; i < n - 1; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == cplx(0.0)) throw NumericalError("tridiagonal solve hit a zero pivot");
            const cplx f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            rhs[i + 1] -= f * rhs[i];
            dl[i] = 0.0;
        } else {
            const cplx f = d[i] / dl[i];
            d[i] = dl[i];
            const cplx tmp = d[i + 1];
            d[i + 1] = du[i] - f * tmp;
            if (i < n - 2) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du[i + 1];
            }
            du[i] = tmp;
            std::swap(rhs[i], rhs[i + 1]);
            rhs[i + 1] -= f * rhs[i];
        }
    }
    if (d[n - 1] == cplx(0.0)) throw NumericalError("tridiagonal solve hit a zero pivot");
    // Back substitution over the three stored superdiagonals.
    std::vector<cplx> g(n);
    g[n - 1] = rhs[n - 1] / d[n - 1];
    if (n > 1) g[n - 2] = (rhs[n - 2] - du[n - 2] * g[n - 1]) / d[n - 2];
    for (long i = n - 3; i >= 0; --i)
        g[i] = (rhs[i] - du[i] * g[i + 1] - du2[i] * g[i + 2]) / d[i];
    return g;
}

std::vector<cplx> solve_dense_shifted(const OperatorMatrix& h, cplx z, const std::vector<cplx>& rhs) {
    const long n = h.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = h.diagonal()[i] - z;
    for (const auto& b : h.bands())
        for (long i = 0; i < static_cast<long>(b.values.size()); ++i) {
            m(i, i + b.offset) = b.values[i];
            m(i + b.offset, i) = b.values[i];
        }
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i) v(i) = rhs[i];
    Eigen::VectorXcd g = Eigen::PartialPivLU<Eigen::MatrixXcd>(m).solve(v);
    return std::vector<cplx>(g.data(), g.data() + n);
}

double residual_norm(const OperatorMatrix& h, cplx z, const std::vector<cplx>& g,
                     const std::vector<cplx>& rhs, std::vector<cplx>& work) {
    h.apply_shifted(g, z, work);
    double r2 = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) r2 += std::norm(work[i] - rhs[i]);
    return std::sqrt(r2);
}

}  // namespace

std::vector<cplx> resolvent_column(const OperatorMatrix& h, long y, double E, double eps,
                                   long dense_cap) {
    if (!(eps > 0.0)) throw IntervalError("resolvent requires eps > 0");
    const long n = h.size();
    if (y < 0 || y >= n) throw DimensionError("resolvent column index out of range");
    const cplx z(E, eps);
    std::vector<cplx> rhs(n, cplx(0.0));
    rhs[y] = 1.0;

    const bool tri = h.is_tridiagonal();
    if (!tri && n > dense_cap)
        throw OracleSizeError("dense resolvent solve refused: size " + std::to_string(n) +
                              " exceeds cap " + std::to_string(dense_cap));

    std::vector<cplx> g = tri ? solve_tridiag_shifted(h, z, rhs) : solve_dense_shifted(h, z, rhs);

    const double tol = 1e-10 * 2.0;  // 1e-10 * (1 + ||delta_y||)
    std::vector<cplx> work(n);
    double res = residual_norm(h, z, g, rhs, work);
    if (res > tol) {
        // One step of iterative refinement.
        std::vector<cplx> defect(n);
        for (long i = 0; i < n; ++i) defect[i] = rhs[i] - work[i];
        std::vector<cplx> corr = tri ? solve_tridiag_shifted(h, z, defect) : solve_dense_shifted(h, z, defect);
        for (long i = 0; i < n; ++i) g[i] += corr[i];
        res = residual_norm(h, z, g, rhs, work);
        if (res > tol)
            throw NumericalError("resolvent solve residual " + std::to_string(res) +
                                     " exceeds tolerance " + std::to_string(tol),
                                 res);
    }
    return g;
}

std::complex<double> green_entry(const OperatorMatrix& h, long x, long y, double E, double eps) {
    if (x < 0 || x >= h.size()) throw DimensionError("resolvent row index out of range");
    return resolvent_column(h, y, E, eps)[x];
}

namespace {

DecayFit fit_log_linear(const std::vector<long>& xs, const std::vector<double>& ys) {
    DecayFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (ys[i] > 0.0) {
            lx.push_back(static_cast<double>(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    const std::size_t m = lx.size();
    if (m < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace

FractionalMomentReport fractional_moment_estimate(const CubeSpec& cube, const DisorderSpec& disorder,
                                                  long x_site_index, const std::vector<long>& separations,
                                                  double E, double eps, double s, long trials,
                                                  std::uint64_t master_seed) {
    if (trials <= 0) throw EmptyEnsembleError("fractional moment estimate needs trials >= 1");
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("fractional exponent s must lie in (0,1)");
    if (separations.empty()) throw ConfigError("no separations given");

    FractionalMomentReport rep;
    rep.energy = E;
    rep.eps = eps;
    rep.s = s;
    rep.trials = trials;
    rep.separations = separations;

    const std::size_t m = separations.size();
    std::vector<double> sum(m, 0.0), sumsq(m, 0.0);
    for (long t = 0; t < trials; ++t) {
        const auto pot = sample_potential(disorder, cube, derive_trial_seed(master_seed, t));
        const auto h = build_lattice_hamiltonian(cube, pot);
        const auto col = resolvent_column(h, x_site_index, E, eps);
        for (std::size_t i = 0; i < m; ++i) {
            const long y = x_site_index + separations[i];
            if (y < 0 || y >= h.size()) throw DimensionError("separation leaves the cube");
            const double v = std::pow(std::abs(col[y]), s);
            sum[i] += v;
            sumsq[i] += v * v;
        }
    }
    rep.mean_abs_g_s.resize(m);
    rep.ci_half_width.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double mean = sum[i] / trials;
        const double var = std::max(0.0, sumsq[i] / trials - mean * mean);
        rep.mean_abs_g_s[i] = mean;
        rep.ci_half_width[i] = 1.959963984540054 * std::sqrt(var / trials);
    }
    rep.fit = fit_log_linear(separations, rep.mean_abs_g_s);
    return rep;
}

namespace {

// Grid indices whose nearest integer cell is n (cell [n - 1/2, n + 1/2)).
std::vector<long> cell_grid_indices(const CubeSpec& cube, long n) {
    std::vector<long> idx;
    for (long j = 0; j < cube.size(); ++j) {
        const double x = cube.grid_coordinate(j, 0);
        if (x >= n - 0.5 && x < n + 0.5) idx.push_back(j);
    }
    return idx;
}

}  // namespace

FractionalMomentReport fractional_moment_estimate_continuum(
    const CubeSpec& cube, const DisorderSpec& disorder, const BumpProfile& bump, long x_cell,
    const std::vector<long>& separations, double E, double eps, double s, long trials,
    std::uint64_t master_seed) {
    if (trials <= 0) throw EmptyEnsembleError("fractional moment estimate needs trials >= 1");
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("fractional exponent s must lie in (0,1)");
    if (cube.flavor() != CubeSpec::Flavor::Continuum || cube.dimension() != 1)
        throw ConfigError("the continuum moment probe runs on the d=1 discretized model");

    FractionalMomentReport rep;
    rep.energy = E;
    rep.eps = eps;
    rep.s = s;
    rep.trials = trials;
    rep.separations = separations;

    const auto x_idx = cell_grid_indices(cube, x_cell);
    if (x_idx.empty()) throw DimensionError("cell x lies outside the box");
    std::vector<std::vector<long>> y_idx;
    for (long sep : separations) {
        y_idx.push_back(cell_grid_indices(cube, x_cell + sep));
        if (y_idx.back().empty()) throw DimensionError("separation leaves the box");
    }

    const std::size_t m = separations.size();
    std::vector<double> sum(m, 0.0), sumsq(m, 0.0);
    for (long t = 0; t < trials; ++t) {
        const auto pot = sample_potential(disorder, cube, derive_trial_seed(master_seed, t));
        const auto h = build_continuum_hamiltonian(cube, bump, pot);
        std::vector<std::vector<cplx>> cols;
        cols.reserve(x_idx.size());
        for (long j : x_idx) cols.push_back(resolvent_column(h, j, E, eps));
        for (std::size_t i = 0; i < m; ++i) {
            double best = 0.0;
            for (const auto& col : cols)
                for (long j : y_idx[i]) best = std::max(best, std::abs(col[j]));
            const double v = std::pow(best, s);
            sum[i] += v;
            sumsq[i] += v * v;
        }
    }
    rep.mean_abs_g_s.resize(m);
    rep.ci_half_width.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double mean = sum[i] / trials;
        const double var = std::max(0.0, sumsq[i] / trials - mean * mean);
        rep.mean_abs_g_s[i] = mean;
        rep.ci_half_width[i] = 1.959963984540054 * std::sqrt(var / trials);
    }
    rep.fit = fit_log_linear(separations, rep.mean_abs_g_s);
    return rep;
}

}  // namespace locstat
