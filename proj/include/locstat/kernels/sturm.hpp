#pragma once

#include <span>
#include <string>

namespace locstat::kernels {

// Sturm pivot recurrence for a symmetric tridiagonal matrix T(diag, e):
//   q_0 = diag[0] - shift,  q_i = (diag[i] - e2[i-1]/q_{i-1}) - shift
// with the underflow guard q -> -pivmin when |q| < pivmin.  The number of
// pivots <= 0 equals the number of eigenvalues <= shift.
//
// All lanes perform the identical IEEE operation sequence, so the SIMD
// variants return bit-identical counts to the scalar reference.

struct TridiagView {
    std::span<const double> diag;
    std::span<const double> e2;  // squared off-diagonal, size diag.size()-1 (or empty for size<=1)
};

double sturm_pivmin(const TridiagView& t);

// Scalar reference kernel.
long sturm_count_scalar(const TridiagView& t, double shift, double pivmin);
void sturm_count_batch_scalar(const TridiagView& t, double pivmin,
                              std::span<const double> shifts, std::span<long> counts);

#if defined(LOCSTAT_HAVE_AVX2_TU)
void sturm_count_batch_avx2(const TridiagView& t, double pivmin,
                            std::span<const double> shifts, std::span<long> counts);
#endif
#if defined(LOCSTAT_HAVE_NEON_TU)
void sturm_count_batch_neon(const TridiagView& t, double pivmin,
                            std::span<const double> shifts, std::span<long> counts);
#endif

enum class Backend { Scalar, Avx2, Neon };

Backend active_backend();
std::string backend_name(Backend b);
// Returns false when the requested backend is unavailable on this machine.
bool set_backend(Backend b);
// Re-detect, honoring LOCSTAT_FORCE_SCALAR=1 in the environment.
Backend detect_backend();

// Dispatching entry point used by the counting engine.
void sturm_count_batch(const TridiagView& t, double pivmin, std::span<const double> shifts,
                       std::span<long> counts);

}  // namespace locstat::kernels
