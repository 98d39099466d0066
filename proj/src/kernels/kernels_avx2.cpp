// Compiled with -mavx2 -mbmi2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace vcsum::kernels::detail {

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t count) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < count; ++i) dst[i] ^= src[i];
}

// Products stay below 2^31 only for p < 2^15; larger moduli take the scalar
// path. The quotient comes from a double-precision reciprocal and is off by
// at most one, which the two conditional corrections absorb.
void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t p,
                   std::size_t count) {
    if (scale == 0) return;
    if (p >= (1U << 15)) {
        axpy_mod_scalar(dst, src, scale, p, count);
        return;
    }
    const __m256i vscale = _mm256_set1_epi32(static_cast<int>(scale));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i vp_minus_1 = _mm256_set1_epi32(static_cast<int>(p - 1));
    const __m256i zero = _mm256_setzero_si256();
    const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));

    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        const __m256i t = _mm256_add_epi32(_mm256_mullo_epi32(s, vscale), d);

        const __m256d t_lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(t));
        const __m256d t_hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(t, 1));
        const __m128i q_lo = _mm256_cvttpd_epi32(_mm256_mul_pd(t_lo, inv_p));
        const __m128i q_hi = _mm256_cvttpd_epi32(_mm256_mul_pd(t_hi, inv_p));
        const __m256i q = _mm256_set_m128i(q_hi, q_lo);

        __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
        r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vp));
        r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, vp_minus_1), vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
    }
    if (i < count) axpy_mod_scalar(dst + i, src + i, scale, p, count - i);
}

void compress_bits_bmi2(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t select, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) dst[i] = _pext_u64(src[i], select);
}

}  // namespace vcsum::kernels::detail
