#pragma once

// Inner-loop kernels for finite-field elimination and trace compaction.
//
// Each instruction-set variant is a table of plain function pointers. The
// scalar table is the reference; the AVX2 table (x86-64 only, selected when
// the running CPU reports AVX2 and BMI2) must produce bit-identical results,
// which tests/test_kernels.cpp checks on seeded inputs.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vcsum::kernels {

enum class Isa { scalar, avx2 };

struct KernelSet {
    Isa isa;
    const char* name;

    /// dst[i] ^= src[i] for i < count.
    void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t count);

    /// dst[i] = (dst[i] + scale * src[i]) mod p for i < count.
    /// Requires dst[i], src[i], scale < p.
    void (*axpy_mod)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t p,
                     std::size_t count);

    /// dst[i] = bits of src[i] selected by `select`, packed into the low bits
    /// in ascending position order (parallel bit extract).
    void (*compress_bits)(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t select, std::size_t count);
};

const KernelSet& scalar_kernels();

/// nullptr unless compiled for x86-64 and supported by the running CPU.
const KernelSet* avx2_kernels();

/// Fastest supported table. Setting VCSUM_FORCE_SCALAR=1 in the environment
/// pins the scalar table.
const KernelSet& active_kernels();

/// Every table usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

}  // namespace vcsum::kernels
