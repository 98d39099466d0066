#include "vcsum/vc_dimension.hpp"

#include <algorithm>
#include <bit>

#include "vcsum/errors.hpp"
#include "vcsum/kernels.hpp"

namespace vcsum {

namespace {

bool shattered_with(const SetFamily& a, Mask y, std::vector<std::uint64_t>& traces, std::vector<std::uint8_t>& seen) {
    const int k = std::popcount(y);
    const std::uint64_t needed = std::uint64_t(1) << k;
    if (a.size() < needed) return false;

    traces.resize(a.size());
    kernels::active_kernels().compress_bits(traces.data(), a.members().data(), y, a.size());
    seen.assign(needed, 0);
    std::uint64_t distinct = 0;
    for (std::uint64_t t : traces) {
        if (!seen[t]) {
            seen[t] = 1;
            if (++distinct == needed) return true;
        }
    }
    return false;
}

}  // namespace

bool is_shattered(const SetFamily& a, Mask y) {
    a.require_nonempty();
    if (a.ground_size() < 64 && (y >> a.ground_size()) != 0)
        throw ParameterError("set " + format_set(y) + " is outside the ground set");
    std::vector<std::uint64_t> traces;
    std::vector<std::uint8_t> seen;
    return shattered_with(a, y, traces, seen);
}

ShatterReport shattered_sets(const SetFamily& a) {
    a.require_nonempty();
    const int n = a.ground_size();
    ShatterReport report;
    report.family_size = a.size();
    report.levels.push_back({Mask(0)});

    std::vector<std::uint64_t> traces;
    std::vector<std::uint8_t> seen;
    for (;;) {
        const std::vector<Mask>& prev = report.levels.back();
        std::vector<Mask> next;
        for (Mask y : prev) {
            const int top = y == 0 ? -1 : 63 - std::countl_zero(y);
            for (int j = top + 1; j < n; ++j) {
                const Mask cand = y | (Mask(1) << j);
                bool subsets_ok = true;
                for (Mask rest = cand; rest != 0 && subsets_ok; rest &= rest - 1) {
                    const Mask sub = cand & ~(rest & (~rest + 1));
                    if (sub != y) subsets_ok = std::binary_search(prev.begin(), prev.end(), sub);
                }
                if (subsets_ok && shattered_with(a, cand, traces, seen)) next.push_back(cand);
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        report.levels.push_back(std::move(next));
    }
    report.vc_dim = static_cast<int>(report.levels.size()) - 1;
    return report;
}

int vc_dim(const SetFamily& a) { return shattered_sets(a).vc_dim; }

}  // namespace vcsum
