#pragma once

#include <cstdint>
#include <vector>

#include "pscale/workload.hpp"

namespace pscale {

/// Event counts from a cycle-by-cycle weight-stationary simulation.
struct RefSimResult {
    Count cycles = 0;
    Count useful_mac_events = 0;
    Count ifmap_reads = 0;
    Count filter_reads = 0;
    Count psum_reads = 0;
    Count ofmap_writes = 0;
    /// Final output feature map, index (e * F + f) * M + m, computed from the
    /// synthetic operands below.
    std::vector<std::int64_t> ofmap;
};

/// Thrown when the instance exceeds the oracle's size guard.
class InstanceTooLarge : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline constexpr Count kRefSimMaxLanes = 4096;
inline constexpr Count kRefSimMaxMacs = 10'000'000;

/// Synthetic operand values driven through the simulated array. Padding
/// positions are zero and handled by the caller.
std::int64_t refsim_ifmap_value(Count h, Count w, Count c);
std::int64_t refsim_weight_value(Count m, Count c, Count ry, Count sx);

/// Clocks an ar x ac array one cycle at a time. Per fold: r preload cycles
/// (one weight row per cycle), then input vectors enter row i with an i-cycle
/// skew, move one column right per cycle, and partial sums move one row down
/// per cycle. Column sums leaving the bottom row are accumulated into the
/// ofmap, with a partial-sum read-back on every row fold after the first.
RefSimResult simulate_ws_reference(const LayerShape& layer, Count ar, Count ac, Count interposer_delay = 0);

}  // namespace pscale
