#pragma once

// Line-sieve kernels for the class-group oracle, in a portable scalar form and
// an AVX2 form. Both use the same operation order without fused multiply-add,
// so they produce bit-identical results; the dispatcher picks AVX2 when the
// CPU supports it.

#include <cstddef>
#include <cstdint>

namespace abcforge::kernels {

// out[i] ~ log2 |F(a0 + i, b)| where F(a, b) = sum_k c[k] a^k b^{deg-k}, using
// a fixed polynomial approximation of log2 on the mantissa. cb[k] = b^{deg-k}
// * c[k] must be precomputed by the caller (length deg + 1).
using LogNormFn = void (*)(const double* cb, int deg, double a0, std::size_t count, float* out);

// Writes the indices i with values[i] <= threshold to out (ascending) and
// returns how many there were.
using SelectFn = std::size_t (*)(const float* values, std::size_t count, float threshold, std::uint32_t* out);

void log2_norms_scalar(const double* cb, int deg, double a0, std::size_t count, float* out);
std::size_t select_below_scalar(const float* values, std::size_t count, float threshold, std::uint32_t* out);

#if defined(ABCFORGE_HAVE_AVX2)
void log2_norms_avx2(const double* cb, int deg, double a0, std::size_t count, float* out);
std::size_t select_below_avx2(const float* values, std::size_t count, float threshold, std::uint32_t* out);
#endif

bool avx2_compiled();
bool avx2_supported();

struct Dispatch {
    LogNormFn log2_norms;
    SelectFn select_below;
    const char* name;
};

// AVX2 when compiled in and supported, unless forced to scalar.
const Dispatch& active();
void force_scalar(bool on);

// Scalar log2 approximation shared by both variants (exposed for tests).
float approx_log2(double v);

}  // namespace abcforge::kernels
