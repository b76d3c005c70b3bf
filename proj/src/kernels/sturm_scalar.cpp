#include <cmath>
#include <limits>

#include "locstat/kernels/sturm.hpp"

namespace locstat::kernels {

double sturm_pivmin(const TridiagView& t) {
    double max_e2 = 1.0;
    for (double v : t.e2)
        if (v > max_e2) max_e2 = v;
    return std::numeric_limits<double>::min() * max_e2;
}

long sturm_count_scalar(const TridiagView& t, double shift, double pivmin) {
    const std::size_t n = t.diag.size();
    if (n == 0) return 0;
    double q = t.diag[0] - shift;
    if (std::fabs(q) < pivmin) q = -pivmin;
    long count = (q <= 0.0) ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double r = t.e2[i - 1] / q;
        q = (t.diag[i] - r) - shift;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q <= 0.0) ++count;
    }
    return count;
}

void sturm_count_batch_scalar(const TridiagView& t, double pivmin,
                              std::span<const double> shifts, std::span<long> counts) {
    for (std::size_t k = 0; k < shifts.size(); ++k)
        counts[k] = sturm_count_scalar(t, shifts[k], pivmin);
}

}  // namespace locstat::kernels
