#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "locstat/disorder.hpp"
#include "locstat/geometry.hpp"
#include "locstat/model.hpp"
#include "locstat/operator_matrix.hpp"

namespace locstat {

// Column y of (H - E - i eps)^{-1}, solved directly with a residual check
// (one refinement step before giving up).  Tridiagonal matrices use an
// O(N) partially pivoted LU; anything else goes through a dense complex LU.
std::vector<std::complex<double>> resolvent_column(const OperatorMatrix& h, long y, double E,
                                                   double eps, long dense_cap = 4096);

std::complex<double> green_entry(const OperatorMatrix& h, long x, long y, double E, double eps);

struct DecayFit {
    double slope = 0.0;      // of log(mean) versus separation
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct FractionalMomentReport {
    double energy = 0.0;
    double eps = 0.0;
    double s = 0.0;
    long trials = 0;
    std::vector<long> separations;
    std::vector<double> mean_abs_g_s;   // Monte Carlo mean of |G(x, x+sep)|^s
    std::vector<double> ci_half_width;  // normal-approximation 95% half widths
    DecayFit fit;
};

// Monte Carlo estimate of E|G(x, y; E + i eps)|^s across a range of
// separations, with a least-squares decay fit of log(mean) versus |x - y|.
FractionalMomentReport fractional_moment_estimate(const CubeSpec& cube, const DisorderSpec& disorder,
                                                  long x_site_index, const std::vector<long>& separations,
                                                  double E, double eps, double s, long trials,
                                                  std::uint64_t master_seed);

// Discretized d=1 variant: the coupling between unit cells x and y is probed
// by the largest resolvent entry between their grid points (a proxy for the
// block operator norm), raised to the power s and averaged.
FractionalMomentReport fractional_moment_estimate_continuum(
    const CubeSpec& cube, const DisorderSpec& disorder, const BumpProfile& bump, long x_cell,
    const std::vector<long>& separations, double E, double eps, double s, long trials,
    std::uint64_t master_seed);

}  // namespace locstat
