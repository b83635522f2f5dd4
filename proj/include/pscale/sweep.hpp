#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pscale/config.hpp"
#include "pscale/dataflow.hpp"
#include "pscale/metrics.hpp"
#include "pscale/workload.hpp"

namespace pscale {

/// All layers of one workload on one grid, with totals. Layers run back to
/// back with no inter-layer overhead.
struct TopologyResult {
    std::string workload;
    Count pe_count = 0;
    GridTopology topology;
    std::vector<LayerReport> layers;

    Count total_cycles = 0;
    Count useful_macs = 0;
    MemoryTraffic traffic;
    MemoryTraffic dram;
    double util_mac = 0.0;
    double util_mean = 0.0;
    double laser_energy_j = 0.0;

    bool operator==(const TopologyResult&) const = default;
};

/// Best (minimum-cycle) topology at one PE count and its scaling efficiency
/// relative to the smallest swept PE count.
struct ScaleSummary {
    Count pe_count = 0;
    GridTopology best;
    Count best_cycles = 0;
    double best_util_mac = 0.0;
    double best_util_mean = 0.0;
    double eta = 1.0;

    bool operator==(const ScaleSummary&) const = default;
};

struct WorkloadResult {
    std::string name;
    /// Ordered by pe_count, then by enumerate_topologies order.
    std::vector<TopologyResult> topologies;
    std::vector<ScaleSummary> scales;

    bool operator==(const WorkloadResult&) const = default;
};

struct SweepResult {
    SweepConfig config;
    std::vector<WorkloadResult> workloads;

    bool operator==(const SweepResult&) const = default;

    const WorkloadResult& workload(const std::string& name) const;
};

LayerReport evaluate_layer(const LayerShape& layer, const GridTopology& topology, Count interposer_delay,
                           const BufferConfig& buffers);

/// Fills the totals of `result` from its layer reports.
void summarize(TopologyResult& result, const LaserParams& laser);

/// Recomputes `scales` from `topologies`.
void summarize_scales(WorkloadResult& result);

/// Parallel sweep over (workload, pe_count, topology) work units.
SweepResult run_sweep(const SweepConfig& config);

/// Same sweep on one thread; the reference the parallel path is checked
/// against.
SweepResult run_sweep_serial(const SweepConfig& config);

/// Variant that takes already-loaded workloads.
SweepResult run_sweep(const SweepConfig& config, const std::vector<Workload>& workloads, bool parallel = true);

struct WallPoint {
    Count pe_count = 0;
    double eta = 1.0;
    double best_avg_util = 0.0;
    bool below_threshold = false;
};

struct UtilizationWall {
    std::vector<WallPoint> points;
    /// First PE count whose efficiency falls below the threshold.
    std::optional<Count> wall_at;
};

UtilizationWall detect_utilization_wall(const SweepResult& result, const std::string& workload,
                                        double threshold = 0.7);

struct SymmetricRule {
    GridTopology best;
    GridTopology worst_linear;
    /// util(best) / min(util(1xN), util(Nx1)), MAC-weighted.
    double util_ratio_best_over_worst_linear = 1.0;
    /// max(traffic(1xN), traffic(Nx1)) / traffic(best), total SRAM demand.
    double traffic_ratio_linear_over_best = 1.0;
};

SymmetricRule detect_symmetric_rule(const SweepResult& result, const std::string& workload, Count pe_count);

}  // namespace pscale
