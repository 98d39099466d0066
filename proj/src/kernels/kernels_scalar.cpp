#include "kernels_internal.hpp"

namespace vcsum::kernels::detail {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) dst[i] ^= src[i];
}

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t p,
                     std::size_t count) {
    if (scale == 0) return;
    for (std::size_t i = 0; i < count; ++i)
        dst[i] = static_cast<std::uint32_t>((dst[i] + std::uint64_t(scale) * src[i]) % p);
}

void compress_bits_scalar(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t select, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t out = 0, bit = 1;
        for (std::uint64_t m = select; m != 0; m &= m - 1, bit <<= 1)
            if (src[i] & m & (~m + 1)) out |= bit;
        dst[i] = out;
    }
}

}  // namespace vcsum::kernels::detail
