#include <immintrin.h>

#include "abcforge/kernels.hpp"

namespace abcforge::kernels {

namespace {

constexpr double kC1 = 1.4425449290;
constexpr double kC2 = -0.7181452567;
constexpr double kC3 = 0.4575485901;
constexpr double kC4 = -0.1779810600;

// Same steps as approx_log2, four lanes at a time.
__m128 log2_lanes(__m256d v) {
    const __m256i abs_mask = _mm256_set1_epi64x(0x7fffffffffffffffLL);
    const __m256i man_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
    __m256i bits = _mm256_and_si256(_mm256_castpd_si256(v), abs_mask);
    // Exponent field as a double: place it in the low mantissa bits of 2^52 and subtract.
    __m256i ebits = _mm256_srli_epi64(bits, 52);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(ebits, _mm256_set1_epi64x(0x4330000000000000LL))),
                              _mm256_set1_pd(4503599627370496.0));
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, man_mask), one_bits));
    __m256d t = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    __m256d p = _mm256_set1_pd(kC4);
    p = _mm256_mul_pd(p, t);
    p = _mm256_add_pd(p, _mm256_set1_pd(kC3));
    p = _mm256_mul_pd(p, t);
    p = _mm256_add_pd(p, _mm256_set1_pd(kC2));
    p = _mm256_mul_pd(p, t);
    p = _mm256_add_pd(p, _mm256_set1_pd(kC1));
    p = _mm256_mul_pd(p, t);
    __m256d r = _mm256_add_pd(e, p);
    __m256d zero = _mm256_cmp_pd(_mm256_castsi256_pd(bits), _mm256_setzero_pd(), _CMP_EQ_OQ);
    r = _mm256_blendv_pd(r, _mm256_set1_pd(-1.0e30), zero);
    return _mm256_cvtpd_ps(r);
}

}  // namespace

void log2_norms_avx2(const double* cb, int deg, double a0, std::size_t count, float* out) {
    std::size_t i = 0;
    const __m256d step = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    for (; i + 4 <= count; i += 4) {
        __m256d a = _mm256_add_pd(_mm256_set1_pd(a0 + double(i)), step);
        __m256d acc = _mm256_set1_pd(cb[deg]);
        for (int k = deg - 1; k >= 0; --k) {
            acc = _mm256_mul_pd(acc, a);
            acc = _mm256_add_pd(acc, _mm256_set1_pd(cb[k]));
        }
        _mm_storeu_ps(out + i, log2_lanes(acc));
    }
    if (i < count) log2_norms_scalar(cb, deg, a0 + double(i), count - i, out + i);
}

std::size_t select_below_avx2(const float* values, std::size_t count, float threshold, std::uint32_t* out) {
    std::size_t m = 0, i = 0;
    const __m256 th = _mm256_set1_ps(threshold);
    for (; i + 8 <= count; i += 8) {
        __m256 v = _mm256_loadu_ps(values + i);
        unsigned mask = unsigned(_mm256_movemask_ps(_mm256_cmp_ps(v, th, _CMP_LE_OQ)));
        while (mask) {
            unsigned bit = unsigned(__builtin_ctz(mask));
            out[m++] = std::uint32_t(i + bit);
            mask &= mask - 1;
        }
    }
    for (; i < count; ++i)
        if (values[i] <= threshold) out[m++] = std::uint32_t(i);
    return m;
}

}  // namespace abcforge::kernels
