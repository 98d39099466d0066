#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>

namespace vcsum {

/// 64-bit FNV-1a, used for stable content digests in reports.
class Fnv1a {
public:
    void update(std::string_view bytes) {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001B3ULL;
        }
    }
    void update_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            state_ ^= (v >> (8 * i)) & 0xFFU;
            state_ *= 0x100000001B3ULL;
        }
    }
    template <class T>
    void update_values(std::span<const T> values) {
        for (const T& v : values) update_u64(static_cast<std::uint64_t>(v));
    }

    std::uint64_t value() const noexcept { return state_; }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    std::uint64_t state_ = 0xCBF29CE484222325ULL;
};

}  // namespace vcsum
