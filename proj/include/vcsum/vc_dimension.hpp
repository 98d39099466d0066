#pragma once

#include <cstddef>
#include <vector>

#include "vcsum/set_family.hpp"

namespace vcsum {

/// Every set shattered by a family, grouped by size.
struct ShatterReport {
    std::size_t family_size = 0;
    int vc_dim = 0;
    /// levels[k] lists the shattered Y with |Y| = k in ascending order.
    std::vector<std::vector<Mask>> levels;
};

/// True iff {S & Y : S in A} has all 2^|Y| patterns.
bool is_shattered(const SetFamily& a, Mask y);

/// Levelwise search: level k+1 candidates are Y | {j} for shattered Y at
/// level k and j above the top element of Y, kept only when every
/// k-subset is also shattered. Stops at the first empty level.
ShatterReport shattered_sets(const SetFamily& a);

int vc_dim(const SetFamily& a);

}  // namespace vcsum
