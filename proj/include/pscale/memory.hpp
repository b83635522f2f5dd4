#pragma once

#include <span>

#include "pscale/dataflow.hpp"
#include "pscale/traffic.hpp"

namespace pscale {

/// On-chip SRAM capacities in bytes.
struct BufferConfig {
    Count ifmap_sram_bytes = 1 << 20;
    Count filter_sram_bytes = 1 << 20;
    Count ofmap_sram_bytes = 1 << 20;
    Count word_bytes = 1;

    bool operator==(const BufferConfig&) const = default;
};

void validate(const BufferConfig& buf);

/// Per-class element footprints of one layer.
struct OperandFootprint {
    Count ifmap = 0;   // (H + 2P) * (W + 2P) * C
    Count filter = 0;  // R * S * C * M
    Count ofmap = 0;   // E * F * M
};

/// Capacity footprint, used to decide whether a class fits its SRAM.
OperandFootprint working_set(const LayerShape& layer);

/// Distinct elements the schedule actually touches. Differs from the working
/// set only for the ifmap, where large strides or padding rows can leave
/// padded positions unread.
OperandFootprint touched_elements(const LayerShape& layer);

/// SRAM demand accesses of a fold plan:
///   filter = sr*sc, ifmap = col_folds*t*sr (column fan-out is free),
///   ofmap = row_folds*t*sc, psum = (row_folds-1)*t*sc.
MemoryTraffic demand_traffic(const FoldPlan& plan);

/// Threshold policy per operand class: if the class working set fits its
/// SRAM, every touched element crosses the chip boundary once; otherwise
/// every demand access goes to DRAM. Partial sums reach DRAM only when the
/// ofmap class does not fit.
MemoryTraffic dram_traffic(const FoldPlan& plan, const LayerShape& layer, const MemoryTraffic& demand,
                           const BufferConfig& buf);

MemoryTraffic aggregate_traffic(std::span<const MemoryTraffic> reports);

}  // namespace pscale
