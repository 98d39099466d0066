#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"
#include "vcsum/kernels.hpp"

namespace vcsum::kernels {

namespace {

const KernelSet kScalar{Isa::scalar, "scalar", detail::xor_words_scalar, detail::axpy_mod_scalar,
                        detail::compress_bits_scalar};

#if defined(VCSUM_HAVE_AVX2)
const KernelSet kAvx2{Isa::avx2, "avx2", detail::xor_words_avx2, detail::axpy_mod_avx2,
                      detail::compress_bits_bmi2};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
}
#endif

bool scalar_forced() {
    const char* v = std::getenv("VCSUM_FORCE_SCALAR");
    return v != nullptr && std::strcmp(v, "") != 0 && std::strcmp(v, "0") != 0;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(VCSUM_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active_kernels() {
    static const KernelSet* chosen = [] {
        if (scalar_forced()) return &kScalar;
        const KernelSet* fast = avx2_kernels();
        return fast != nullptr ? fast : &kScalar;
    }();
    return *chosen;
}

std::vector<const KernelSet*> available_kernels() {
    std::vector<const KernelSet*> out{&kScalar};
    if (const KernelSet* fast = avx2_kernels()) out.push_back(fast);
    return out;
}

}  // namespace vcsum::kernels
