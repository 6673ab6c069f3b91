#include <atomic>
#include <cstring>

#include "abcforge/kernels.hpp"

namespace abcforge::kernels {

namespace {

// log2(m) for m in [1, 2) as t * (c1 + t * (c2 + t * (c3 + t * c4))), t = m - 1.
// Max error about 1e-3, plenty for sieve thresholds.
constexpr double kC1 = 1.4425449290;
constexpr double kC2 = -0.7181452567;
constexpr double kC3 = 0.4575485901;
constexpr double kC4 = -0.1779810600;

std::atomic<bool> g_force_scalar{false};

}  // namespace

float approx_log2(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    bits &= 0x7fffffffffffffffULL;
    if (bits == 0) return -1.0e30f;
    std::uint64_t ebits = bits >> 52;
    std::uint64_t mbits = (bits & 0x000fffffffffffffULL) | 0x3ff0000000000000ULL;
    double m;
    std::memcpy(&m, &mbits, sizeof m);
    double e = double(ebits) - 1023.0;
    double t = m - 1.0;
    double p = kC4;
    p = p * t;
    p = p + kC3;
    p = p * t;
    p = p + kC2;
    p = p * t;
    p = p + kC1;
    p = p * t;
    return float(e + p);
}

void log2_norms_scalar(const double* cb, int deg, double a0, std::size_t count, float* out) {
    for (std::size_t i = 0; i < count; ++i) {
        double a = a0 + double(i);
        double acc = cb[deg];
        for (int k = deg - 1; k >= 0; --k) {
            acc = acc * a;
            acc = acc + cb[k];
        }
        out[i] = approx_log2(acc);
    }
}

std::size_t select_below_scalar(const float* values, std::size_t count, float threshold, std::uint32_t* out) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < count; ++i)
        if (values[i] <= threshold) out[m++] = std::uint32_t(i);
    return m;
}

bool avx2_compiled() {
#if defined(ABCFORGE_HAVE_AVX2)
    return true;
#else
    return false;
#endif
}

bool avx2_supported() {
#if defined(ABCFORGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Dispatch& active() {
    static const Dispatch scalar{log2_norms_scalar, select_below_scalar, "scalar"};
#if defined(ABCFORGE_HAVE_AVX2)
    static const Dispatch avx2{log2_norms_avx2, select_below_avx2, "avx2"};
    static const bool use_avx2 = avx2_supported();
    if (use_avx2 && !g_force_scalar.load(std::memory_order_relaxed)) return avx2;
#endif
    return scalar;
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace abcforge::kernels
