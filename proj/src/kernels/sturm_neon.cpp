// NEON lane: two shifts per pass, same operation order as the scalar
// kernel so counts match bit for bit.

#include <arm_neon.h>

#include "locstat/kernels/sturm.hpp"

namespace locstat::kernels {

void sturm_count_batch_neon(const TridiagView& t, double pivmin,
                            std::span<const double> shifts, std::span<long> counts) {
    const std::size_t n = t.diag.size();
    const std::size_t m = shifts.size();
    std::size_t k = 0;
    const float64x2_t vpiv = vdupq_n_f64(pivmin);
    const float64x2_t vnegpiv = vdupq_n_f64(-pivmin);
    const float64x2_t vzero = vdupq_n_f64(0.0);

    for (; k + 2 <= m; k += 2) {
        if (n == 0) {
            counts[k] = counts[k + 1] = 0;
            continue;
        }
        const float64x2_t x = vld1q_f64(shifts.data() + k);
        float64x2_t q = vsubq_f64(vdupq_n_f64(t.diag[0]), x);
        uint64x2_t small = vcltq_f64(vabsq_f64(q), vpiv);
        q = vbslq_f64(small, vnegpiv, q);
        uint64x2_t neg = vcleq_f64(q, vzero);
        // "true" lanes are all-ones (= -1 as signed); subtracting adds one.
        int64x2_t cnt = vsubq_s64(vdupq_n_s64(0), vreinterpretq_s64_u64(neg));
        for (std::size_t i = 1; i < n; ++i) {
            const float64x2_t r = vdivq_f64(vdupq_n_f64(t.e2[i - 1]), q);
            q = vsubq_f64(vsubq_f64(vdupq_n_f64(t.diag[i]), r), x);
            small = vcltq_f64(vabsq_f64(q), vpiv);
            q = vbslq_f64(small, vnegpiv, q);
            neg = vcleq_f64(q, vzero);
            cnt = vsubq_s64(cnt, vreinterpretq_s64_u64(neg));
        }
        counts[k] = static_cast<long>(vgetq_lane_s64(cnt, 0));
        counts[k + 1] = static_cast<long>(vgetq_lane_s64(cnt, 1));
    }
    if (k < m)
        sturm_count_batch_scalar(t, pivmin, shifts.subspan(k), counts.subspan(k));
}

}  // namespace locstat::kernels
