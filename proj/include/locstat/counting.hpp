#pragma once

#include <span>
#include <vector>

#include "locstat/inertia.hpp"
#include "locstat/window.hpp"

namespace locstat {

// Eigenvalue count of H over a window given in absolute energy coordinates.
long count_window(const InertiaCounter& counter, const Window& absolute);
long count_window(const OperatorMatrix& h, const Window& absolute);

// Point-process count eta_{E}(B): eigenvalues of H falling in E + B/V.
// Sub-cube processes pass their own H but the global V.
long eta_count(const OperatorMatrix& h, double E, const Window& b, double V);
long eta_count(const InertiaCounter& counter, double E, const Window& b, double V);

// Superposed count zeta = sum over the partition blocks.
long superpose(std::span<const OperatorMatrix> subcube_hams, double E, const Window& b, double V);

struct RescaledPoints {
    std::vector<double> points;  // V*(lambda - E) inside the window, sorted
    std::vector<double> gaps;    // consecutive differences
};

// Eigenvalues mapped to the rescaled frame u = V*(lambda - E), restricted to
// the window; tol is in the rescaled frame (locations are tol-accurate there).
RescaledPoints extract_rescaled_points(const OperatorMatrix& h, double E, const Window& window,
                                       double V, double tol = 1e-8);

}  // namespace locstat
