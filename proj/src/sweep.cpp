#include "pscale/sweep.hpp"

#include <algorithm>
#include <exception>

#include "pscale/memory.hpp"

namespace pscale {

const WorkloadResult& SweepResult::workload(const std::string& name) const {
    for (const auto& w : workloads) {
        if (w.name == name) return w;
    }
    throw LookupError("workload '" + name + "' is not in the sweep result");
}

LayerReport evaluate_layer(const LayerShape& layer, const GridTopology& topology, Count interposer_delay,
                           const BufferConfig& buffers) {
    const auto dims = effective_dims(topology);
    const auto plan = plan_folds(layer, dims.rows, dims.cols, interposer_delay);
    LayerReport r;
    r.layer = layer.name;
    r.sr = plan.sr;
    r.sc = plan.sc;
    r.t = plan.t;
    r.row_folds = plan.row_folds;
    r.col_folds = plan.col_folds;
    r.array = dims;
    r.cycles = ws_cycles(plan);
    r.useful_macs = plan_useful_macs(plan);
    r.utilization = ws_utilization(plan, r.cycles, dims.rows, dims.cols);
    r.traffic = demand_traffic(plan);
    r.dram = dram_traffic(plan, layer, r.traffic, buffers);
    return r;
}

void summarize(TopologyResult& result, const LaserParams& laser) {
    result.total_cycles = 0;
    result.useful_macs = 0;
    result.traffic = {};
    result.dram = {};
    for (const auto& l : result.layers) {
        result.total_cycles = checked_add(result.total_cycles, l.cycles, "total cycles");
        result.useful_macs = checked_add(result.useful_macs, l.useful_macs, "total MACs");
        result.traffic += l.traffic;
        result.dram += l.dram;
    }
    result.util_mac = workload_utilization(result.layers, Weighting::mac_weighted);
    result.util_mean = workload_utilization(result.layers, Weighting::layer_mean);
    result.laser_energy_j = laser_energy_j(result.total_cycles, laser);
}

void summarize_scales(WorkloadResult& result) {
    result.scales.clear();
    auto it = result.topologies.begin();
    while (it != result.topologies.end()) {
        const auto group_end = std::find_if(it, result.topologies.end(),
                                            [&](const TopologyResult& t) { return t.pe_count != it->pe_count; });
        std::vector<TopologyPoint> points;
        for (auto p = it; p != group_end; ++p) points.push_back({p->topology, p->total_cycles, p->util_mac});
        const auto best = best_topology(points, Criterion::min_cycles);
        const auto& winner = *std::find_if(it, group_end, [&](const TopologyResult& t) { return t.topology == best; });

        ScaleSummary s;
        s.pe_count = it->pe_count;
        s.best = best;
        s.best_cycles = winner.total_cycles;
        s.best_util_mac = winner.util_mac;
        s.best_util_mean = winner.util_mean;
        if (!result.scales.empty()) {
            const auto& base = result.scales.front();
            s.eta = scaling_efficiency({base.pe_count, base.best_cycles, base.best_util_mac},
                                       {s.pe_count, s.best_cycles, s.best_util_mac});
        }
        result.scales.push_back(s);
        it = group_end;
    }
}

SweepResult run_sweep(const SweepConfig& config, const std::vector<Workload>& workloads, bool parallel) {
    validate(config);
    for (const auto& w : workloads) validate(w);

    struct Unit {
        std::size_t workload;
        Count pe_count;
        GridTopology topology;
    };
    std::vector<Unit> units;
    for (std::size_t w = 0; w < workloads.size(); ++w) {
        for (const Count n : config.pe_counts) {
            for (const auto& t : enumerate_topologies(n, config.tile_dim)) units.push_back({w, n, t});
        }
    }

    std::vector<TopologyResult> evaluated(units.size());
    std::vector<std::exception_ptr> errors(units.size());
    const auto n_units = static_cast<std::ptrdiff_t>(units.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t i = 0; i < n_units; ++i) {
        const auto& u = units[static_cast<std::size_t>(i)];
        try {
            TopologyResult r;
            r.workload = workloads[u.workload].name;
            r.pe_count = u.pe_count;
            r.topology = u.topology;
            r.layers.reserve(workloads[u.workload].layers.size());
            for (const auto& layer : workloads[u.workload].layers)
                r.layers.push_back(evaluate_layer(layer, u.topology, config.interposer_delay, config.buffers));
            summarize(r, config.laser);
            evaluated[static_cast<std::size_t>(i)] = std::move(r);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SweepResult result;
    result.config = config;
    result.workloads.resize(workloads.size());
    for (std::size_t w = 0; w < workloads.size(); ++w) result.workloads[w].name = workloads[w].name;
    for (std::size_t i = 0; i < units.size(); ++i)
        result.workloads[units[i].workload].topologies.push_back(std::move(evaluated[i]));
    for (auto& w : result.workloads) summarize_scales(w);
    return result;
}

namespace {

std::vector<Workload> load_all(const SweepConfig& config) {
    std::vector<Workload> out;
    for (const auto& ref : config.workloads) out.push_back(load_workload(ref));
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (out[i].name == out[j].name) throw ValidationError("duplicate workload name '" + out[i].name + "'");
        }
    }
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    validate(config);
    return run_sweep(config, load_all(config), true);
}

SweepResult run_sweep_serial(const SweepConfig& config) {
    validate(config);
    return run_sweep(config, load_all(config), false);
}

UtilizationWall detect_utilization_wall(const SweepResult& result, const std::string& workload, double threshold) {
    const auto& w = result.workload(workload);
    if (w.scales.size() < 2) throw ValidationError("utilization wall needs at least two PE counts");
    UtilizationWall wall;
    for (const auto& s : w.scales) {
        WallPoint p{s.pe_count, s.eta, s.best_util_mac, s.eta < threshold};
        if (p.below_threshold && !wall.wall_at) wall.wall_at = s.pe_count;
        wall.points.push_back(p);
    }
    return wall;
}

SymmetricRule detect_symmetric_rule(const SweepResult& result, const std::string& workload, Count pe_count) {
    const auto& w = result.workload(workload);
    const auto scale = std::find_if(w.scales.begin(), w.scales.end(),
                                    [&](const ScaleSummary& s) { return s.pe_count == pe_count; });
    if (scale == w.scales.end())
        throw LookupError("pe_count " + std::to_string(pe_count) + " is not in the sweep of '" + workload + "'");

    const TopologyResult* best = nullptr;
    std::vector<const TopologyResult*> linear;
    for (const auto& t : w.topologies) {
        if (t.pe_count != pe_count) continue;
        if (t.topology == scale->best) best = &t;
        if (t.topology.pe_rows == 1 || t.topology.pe_cols == 1) linear.push_back(&t);
    }
    SymmetricRule rule;
    rule.best = best->topology;
    const auto* worst_util = *std::min_element(linear.begin(), linear.end(), [](auto* a, auto* b) {
        return a->util_mac < b->util_mac;
    });
    const auto* worst_traffic = *std::max_element(linear.begin(), linear.end(), [](auto* a, auto* b) {
        return a->traffic.total() < b->traffic.total();
    });
    rule.worst_linear = worst_util->topology;
    rule.util_ratio_best_over_worst_linear = best->util_mac / worst_util->util_mac;
    rule.traffic_ratio_linear_over_best =
        static_cast<double>(worst_traffic->traffic.total()) / static_cast<double>(best->traffic.total());
    return rule;
}

}  // namespace pscale
