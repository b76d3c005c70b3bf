#include <atomic>
#include <cstdlib>

#include "locstat/kernels/sturm.hpp"

namespace locstat::kernels {

namespace {

std::atomic<Backend> g_backend{detect_backend()};

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(LOCSTAT_HAVE_AVX2_TU)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(LOCSTAT_HAVE_NEON_TU)
            return true;  // baseline on aarch64 builds
#else
            return false;
#endif
    }
    return false;
}

}  // namespace

Backend detect_backend() {
    if (const char* force = std::getenv("LOCSTAT_FORCE_SCALAR"); force && force[0] == '1')
        return Backend::Scalar;
#if defined(LOCSTAT_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
#if defined(LOCSTAT_HAVE_NEON_TU)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

bool set_backend(Backend b) {
    if (!backend_available(b)) return false;
    g_backend.store(b, std::memory_order_relaxed);
    return true;
}

void sturm_count_batch(const TridiagView& t, double pivmin, std::span<const double> shifts,
                       std::span<long> counts) {
    switch (active_backend()) {
#if defined(LOCSTAT_HAVE_AVX2_TU)
        case Backend::Avx2:
            sturm_count_batch_avx2(t, pivmin, shifts, counts);
            return;
#endif
#if defined(LOCSTAT_HAVE_NEON_TU)
        case Backend::Neon:
            sturm_count_batch_neon(t, pivmin, shifts, counts);
            return;
#endif
        default:
            sturm_count_batch_scalar(t, pivmin, shifts, counts);
    }
}

}  // namespace locstat::kernels
