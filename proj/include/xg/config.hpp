#pragma once

#include <cstddef>

namespace xg {

/// Size caps enforced before any expensive construction or enumeration.
struct Caps {
    /// Maximum total question count (sum of n_k) for exact sign enumeration.
    std::size_t enumeration_bits = 30;
    /// Maximum entry count of any dense tensor built by an operation.
    std::size_t max_tensor_entries = std::size_t(1) << 22;
    /// Maximum dimension of any shared-state vector.
    std::size_t max_state_dim = std::size_t(1) << 20;
};

/// Process-wide caps, seeded once from the environment:
///   XORGAMES_CAP_BITS overrides enumeration_bits.
Caps& global_caps();

/// Worker count for parallel enumeration, from XORGAMES_THREADS (default 1).
/// Results are merged deterministically, so the count never changes output.
int thread_count();

}  // namespace xg
