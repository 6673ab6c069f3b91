#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "abcforge/kernels.hpp"

using namespace abcforge;

TEST_CASE("approx_log2 stays close to log2") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> e(-40, 60);
    for (int i = 0; i < 2000; ++i) {
        double v = std::exp2(e(rng));
        CHECK(std::fabs(kernels::approx_log2(v) - std::log2(v)) < 0.01);
        CHECK(kernels::approx_log2(-v) == kernels::approx_log2(v));
    }
    CHECK(kernels::approx_log2(0.0) < -1e29f);
}

TEST_CASE("scalar log2 norms track exact norms") {
    // F(a, b) = a^3 - a b^2 - b^3 at b = 3.
    const double b = 3;
    std::vector<double> cb{-1 * b * b * b, -1 * b * b, 0, 1};
    std::vector<float> out(50);
    kernels::log2_norms_scalar(cb.data(), 3, -25, out.size(), out.data());
    for (int i = 0; i < 50; ++i) {
        double a = -25 + i;
        double exact = a * a * a - a * b * b - b * b * b;
        if (exact == 0) continue;
        CHECK(std::fabs(out[i] - std::log2(std::fabs(exact))) < 0.01);
    }
}

#if defined(ABCFORGE_HAVE_AVX2)
TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
    if (!kernels::avx2_supported()) return;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coeff(-1000, 1000), deg_d(2, 6), len_d(0, 300), bd(1, 60);
    for (int trial = 0; trial < 400; ++trial) {
        int deg = deg_d(rng);
        double b = bd(rng);
        std::vector<double> cb(deg + 1);
        for (int k = 0; k <= deg; ++k) cb[k] = double(coeff(rng)) * std::pow(b, deg - k);
        cb[deg] = 1;
        std::size_t len = std::size_t(len_d(rng));
        double a0 = -double(len / 2) - double(coeff(rng) % 7);
        std::vector<float> s(len), v(len);
        kernels::log2_norms_scalar(cb.data(), deg, a0, len, s.data());
        kernels::log2_norms_avx2(cb.data(), deg, a0, len, v.data());
        REQUIRE(std::memcmp(s.data(), v.data(), len * sizeof(float)) == 0);

        float thr = float(deg) * 8.0f + float(trial % 13);
        std::vector<std::uint32_t> is(len + 8), iv(len + 8);
        std::size_t ns = kernels::select_below_scalar(s.data(), len, thr, is.data());
        std::size_t nv = kernels::select_below_avx2(s.data(), len, thr, iv.data());
        REQUIRE(ns == nv);
        for (std::size_t i = 0; i < ns; ++i) CHECK(is[i] == iv[i]);
    }
}

TEST_CASE("zero norms map to the sentinel in both variants") {
    if (!kernels::avx2_supported()) return;
    // F(a, 1) = a^2 - 4 vanishes at a = -2 and a = 2.
    std::vector<double> cb{-4, 0, 1};
    std::vector<float> s(16), v(16);
    kernels::log2_norms_scalar(cb.data(), 2, -8, 16, s.data());
    kernels::log2_norms_avx2(cb.data(), 2, -8, 16, v.data());
    CHECK(std::memcmp(s.data(), v.data(), sizeof(float) * 16) == 0);
    CHECK(s[6] < -1e29f);
    CHECK(s[10] < -1e29f);
}
#endif

TEST_CASE("dispatch can be forced to scalar") {
    kernels::force_scalar(true);
    CHECK(std::string(kernels::active().name) == "scalar");
    kernels::force_scalar(false);
    if (kernels::avx2_compiled() && kernels::avx2_supported())
        CHECK(std::string(kernels::active().name) == "avx2");
}
