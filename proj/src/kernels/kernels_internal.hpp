#pragma once

#include <cstddef>
#include <cstdint>

namespace vcsum::kernels::detail {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t count);
void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t p,
                     std::size_t count);
void compress_bits_scalar(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t select, std::size_t count);

#if defined(VCSUM_HAVE_AVX2)
void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t count);
void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t p,
                   std::size_t count);
void compress_bits_bmi2(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t select, std::size_t count);
#endif

}  // namespace vcsum::kernels::detail
