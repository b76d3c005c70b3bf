// AVX2 lane: four shifts per pass, same operation order as the scalar
// kernel so counts match bit for bit.

#include <immintrin.h>

#include "locstat/kernels/sturm.hpp"

namespace locstat::kernels {

namespace {

inline __m256d abs_pd(__m256d x) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign_mask, x);
}

}  // namespace

void sturm_count_batch_avx2(const TridiagView& t, double pivmin,
                            std::span<const double> shifts, std::span<long> counts) {
    const std::size_t n = t.diag.size();
    const std::size_t m = shifts.size();
    std::size_t k = 0;
    const __m256d vpiv = _mm256_set1_pd(pivmin);
    const __m256d vnegpiv = _mm256_set1_pd(-pivmin);
    const __m256d vzero = _mm256_setzero_pd();

    for (; k + 4 <= m; k += 4) {
        if (n == 0) {
            counts[k] = counts[k + 1] = counts[k + 2] = counts[k + 3] = 0;
            continue;
        }
        const __m256d x = _mm256_loadu_pd(shifts.data() + k);
        __m256d q = _mm256_sub_pd(_mm256_set1_pd(t.diag[0]), x);
        __m256d small = _mm256_cmp_pd(abs_pd(q), vpiv, _CMP_LT_OQ);
        q = _mm256_blendv_pd(q, vnegpiv, small);
        __m256i neg = _mm256_castpd_si256(_mm256_cmp_pd(q, vzero, _CMP_LE_OQ));
        __m256i cnt = _mm256_sub_epi64(_mm256_setzero_si256(), neg);
        for (std::size_t i = 1; i < n; ++i) {
            const __m256d r = _mm256_div_pd(_mm256_set1_pd(t.e2[i - 1]), q);
            q = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(t.diag[i]), r), x);
            small = _mm256_cmp_pd(abs_pd(q), vpiv, _CMP_LT_OQ);
            q = _mm256_blendv_pd(q, vnegpiv, small);
            neg = _mm256_castpd_si256(_mm256_cmp_pd(q, vzero, _CMP_LE_OQ));
            cnt = _mm256_sub_epi64(cnt, neg);
        }
        alignas(32) long long lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), cnt);
        for (int j = 0; j < 4; ++j) counts[k + j] = static_cast<long>(lanes[j]);
    }
    if (k < m)
        sturm_count_batch_scalar(t, pivmin, shifts.subspan(k), counts.subspan(k));
}

}  // namespace locstat::kernels
