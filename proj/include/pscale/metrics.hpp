#pragma once

#include <span>
#include <string>
#include <vector>

#include "pscale/dataflow.hpp"
#include "pscale/topology.hpp"

namespace pscale {

struct ScalingPoint {
    Count pe_count = 0;
    Count total_cycles = 0;
    double avg_utilization = 0.0;
};

/// (T_base / T_scaled) / (N_scaled / N_base). 1 is ideal linear scaling.
double scaling_efficiency(const ScalingPoint& base, const ScalingPoint& scaled);

enum class Weighting { mac_weighted, layer_mean };

/// mac_weighted: sum(useful) / sum(cycles * ar * ac).
/// layer_mean: arithmetic mean of the per-layer utilizations.
double workload_utilization(std::span<const LayerReport> reports, Weighting weighting);

struct ArchProfile {
    std::string name;
    double energy_fj_per_op = 0.0;
    double peak_tops_w = 0.0;
};

/// Effective TOPS/W = peak TOPS/W scaled by average utilization.
double effective_tops_w(const ArchProfile& profile, double avg_utilization);

/// Published per-workload constants for the comparison table.
struct ArchConstant {
    ArchProfile profile;
    std::string workload;
    double eff_tops_w = 0.0;
};

std::vector<ArchConstant> load_arch_constants();

/// Photonic peak profile from the bundled constants.
ArchProfile photonic_profile();

struct TopologyPoint {
    GridTopology topology;
    Count total_cycles = 0;
    double avg_utilization = 0.0;
};

enum class Criterion { min_cycles, max_utilization };

/// Ties prefer the more square grid, then fewer PE rows.
GridTopology best_topology(std::span<const TopologyPoint> points, Criterion criterion);

}  // namespace pscale
