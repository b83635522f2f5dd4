#pragma once

#include <vector>

#include "pscale/topology.hpp"
#include "pscale/traffic.hpp"
#include "pscale/workload.hpp"

namespace pscale {

/// Weight-stationary tiling of one layer onto an ar x ac array. The R*S*C
/// window maps along array rows, the M filters along columns, and the E*F
/// output pixels stream through each fold. Partial folds occupy the top-left
/// corner of the array.
struct FoldPlan {
    Count sr = 0;  // R*S*C
    Count sc = 0;  // M
    Count t = 0;   // E*F
    Count row_folds = 0;
    Count col_folds = 0;
    std::vector<Count> row_sizes;
    std::vector<Count> col_sizes;
    Count interposer_delay = 0;  // cycles between consecutive folds
};

/// Per (layer, topology) evaluation. `traffic` is SRAM demand, `dram` the
/// projected off-chip traffic.
struct LayerReport {
    std::string layer;
    Count sr = 0;
    Count sc = 0;
    Count t = 0;
    Count row_folds = 0;
    Count col_folds = 0;
    ArrayDims array;
    Count cycles = 0;
    Count useful_macs = 0;
    double utilization = 0.0;
    MemoryTraffic traffic;
    MemoryTraffic dram;

    bool operator==(const LayerReport&) const = default;
};

FoldPlan plan_folds(const LayerShape& layer, Count ar, Count ac, Count interposer_delay = 0);

/// Sequential folds, each taking 2r + c + t - 2 cycles (r weight-preload
/// cycles, then t vectors through an r-deep skewed pipeline draining over c
/// columns), plus interposer_delay between consecutive folds.
Count ws_cycles(const FoldPlan& plan);

/// Sum over folds of r_i * c_j * t. Equals E*F*R*S*C*M.
Count plan_useful_macs(const FoldPlan& plan);

/// useful MACs / (cycles * ar * ac).
double ws_utilization(const FoldPlan& plan, Count cycles, Count ar, Count ac);

/// Same ratio from raw counts; used when re-deriving reports from CSV.
double utilization_ratio(Count useful_macs, Count cycles, Count ar, Count ac);

}  // namespace pscale
