#include "pscale/metrics.hpp"

#include <sstream>

#include "pscale/presets.hpp"

namespace pscale {

double scaling_efficiency(const ScalingPoint& base, const ScalingPoint& scaled) {
    if (base.total_cycles == 0 || scaled.total_cycles == 0)
        throw ValidationError("scaling efficiency with zero cycles");
    if (base.pe_count == 0 || base.pe_count >= scaled.pe_count)
        throw ValidationError("scaling efficiency needs base pe_count < scaled pe_count");
    const double speedup = static_cast<double>(base.total_cycles) / static_cast<double>(scaled.total_cycles);
    const double growth = static_cast<double>(scaled.pe_count) / static_cast<double>(base.pe_count);
    return speedup / growth;
}

double workload_utilization(std::span<const LayerReport> reports, Weighting weighting) {
    if (reports.empty()) throw ValidationError("workload utilization of an empty report list");
    if (weighting == Weighting::layer_mean) {
        double sum = 0.0;
        for (const auto& r : reports) sum += r.utilization;
        return sum / static_cast<double>(reports.size());
    }
    double useful = 0.0;
    double slots = 0.0;
    for (const auto& r : reports) {
        useful += static_cast<double>(r.useful_macs);
        slots += static_cast<double>(r.cycles) * static_cast<double>(r.array.rows) * static_cast<double>(r.array.cols);
    }
    return useful / slots;
}

double effective_tops_w(const ArchProfile& profile, double avg_utilization) {
    if (!(avg_utilization > 0.0) || avg_utilization > 1.0)
        throw ValidationError("average utilization must be in (0, 1]");
    return profile.peak_tops_w * avg_utilization;
}

std::vector<ArchConstant> load_arch_constants() {
    std::vector<ArchConstant> out;
    std::istringstream in{std::string(arch_profiles_csv())};
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> f;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) f.push_back(cell);
        if (f.size() != 5) throw ParseError("arch profile row '" + line + "' needs 5 fields");
        ArchConstant c;
        c.profile.name = f[0];
        c.workload = f[1];
        c.profile.energy_fj_per_op = std::stod(f[2]);
        c.profile.peak_tops_w = std::stod(f[3]);
        c.eff_tops_w = std::stod(f[4]);
        out.push_back(std::move(c));
    }
    return out;
}

ArchProfile photonic_profile() {
    for (const auto& c : load_arch_constants()) {
        if (c.profile.name == "photonic") return c.profile;
    }
    throw LookupError("no photonic profile in bundled constants");
}

GridTopology best_topology(std::span<const TopologyPoint> points, Criterion criterion) {
    if (points.empty()) throw ValidationError("best topology of an empty candidate list");
    const auto better = [criterion](const TopologyPoint& a, const TopologyPoint& b) {
        if (criterion == Criterion::min_cycles) {
            if (a.total_cycles != b.total_cycles) return a.total_cycles < b.total_cycles;
        } else if (a.avg_utilization != b.avg_utilization) {
            return a.avg_utilization > b.avg_utilization;
        }
        const double sa = symmetry_score(a.topology);
        const double sb = symmetry_score(b.topology);
        if (sa != sb) return sa > sb;
        return a.topology.pe_rows < b.topology.pe_rows;
    };
    const TopologyPoint* best = &points.front();
    for (const auto& p : points.subspan(1)) {
        if (better(p, *best)) best = &p;
    }
    return best->topology;
}

}  // namespace pscale
