#include "pscale/report.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "pscale/photonics.hpp"

namespace pscale {

namespace {

namespace fs = std::filesystem;

constexpr const char* kPerLayerHeader =
    "workload,pe_count,grid,pe_rows,pe_cols,tile_dim,layer,sr,sc,t,row_folds,col_folds,array_rows,array_cols,"
    "cycles,useful_macs,utilization,ifmap_reads,filter_reads,psum_reads,ofmap_writes,dram_ifmap_reads,"
    "dram_filter_reads,dram_psum_reads,dram_ofmap_writes";

void put_traffic(std::ostream& os, const MemoryTraffic& m) {
    os << m.ifmap_reads << ',' << m.filter_reads << ',' << m.psum_reads << ',' << m.ofmap_writes;
}

const ScaleSummary* find_scale(const WorkloadResult& w, Count pe_count) {
    for (const auto& s : w.scales) {
        if (s.pe_count == pe_count) return &s;
    }
    return nullptr;
}

const ScaleSummary& comparison_scale(const WorkloadResult& w, Count preferred) {
    if (const auto* s = find_scale(w, preferred)) return *s;
    return w.scales.back();
}

double eff_throughput(const TopologyResult& t) {
    return static_cast<double>(t.pe_count * t.topology.tile_dim * t.topology.tile_dim) * t.util_mac;
}

nlohmann::ordered_json traffic_json(const MemoryTraffic& m) {
    return {{"ifmap_reads", m.ifmap_reads},
            {"filter_reads", m.filter_reads},
            {"psum_reads", m.psum_reads},
            {"ofmap_writes", m.ofmap_writes},
            {"total", m.total()}};
}

nlohmann::ordered_json grid_json(const GridTopology& t) {
    return {{"grid", to_string(t)}, {"pe_rows", t.pe_rows}, {"pe_cols", t.pe_cols}};
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string format_ratio(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string format_energy(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

std::string per_layer_csv(const SweepResult& result) {
    std::ostringstream os;
    os << kPerLayerHeader << '\n';
    for (const auto& w : result.workloads) {
        for (const auto& t : w.topologies) {
            for (const auto& l : t.layers) {
                os << w.name << ',' << t.pe_count << ',' << to_string(t.topology) << ',' << t.topology.pe_rows << ','
                   << t.topology.pe_cols << ',' << t.topology.tile_dim << ',' << l.layer << ',' << l.sr << ','
                   << l.sc << ',' << l.t << ',' << l.row_folds << ',' << l.col_folds << ',' << l.array.rows << ','
                   << l.array.cols << ',' << l.cycles << ',' << l.useful_macs << ',' << format_ratio(l.utilization)
                   << ',';
                put_traffic(os, l.traffic);
                os << ',';
                put_traffic(os, l.dram);
                os << '\n';
            }
        }
    }
    return os.str();
}

std::string summary_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "workload,pe_count,grid,symmetry,total_cycles,useful_macs,util_mac,util_mean,ifmap_reads,filter_reads,"
          "psum_reads,ofmap_writes,total_traffic,dram_ifmap_reads,dram_filter_reads,dram_psum_reads,"
          "dram_ofmap_writes,laser_energy_j,eff_throughput_f,best\n";
    for (const auto& w : result.workloads) {
        for (const auto& t : w.topologies) {
            const auto* scale = find_scale(w, t.pe_count);
            os << w.name << ',' << t.pe_count << ',' << to_string(t.topology) << ','
               << format_ratio(symmetry_score(t.topology)) << ',' << t.total_cycles << ',' << t.useful_macs << ','
               << format_ratio(t.util_mac) << ',' << format_ratio(t.util_mean) << ',';
            put_traffic(os, t.traffic);
            os << ',' << t.traffic.total() << ',';
            put_traffic(os, t.dram);
            os << ',' << format_energy(t.laser_energy_j) << ',' << format_ratio(eff_throughput(t)) << ','
               << (scale && scale->best == t.topology ? 1 : 0) << '\n';
        }
    }
    return os.str();
}

std::string eta_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "workload,pe_count,best_grid,best_cycles,best_util_mac,best_util_mean,eta,below_wall_threshold\n";
    for (const auto& w : result.workloads) {
        for (const auto& s : w.scales) {
            os << w.name << ',' << s.pe_count << ',' << to_string(s.best) << ',' << s.best_cycles << ','
               << format_ratio(s.best_util_mac) << ',' << format_ratio(s.best_util_mean) << ','
               << format_ratio(s.eta) << ',' << (s.eta < result.config.wall_threshold ? 1 : 0) << '\n';
        }
    }
    return os.str();
}

std::string comparison_csv(const SweepResult& result) {
    const auto constants = load_arch_constants();
    const auto photonic = photonic_profile();
    std::ostringstream os;
    os << "arch,workload,energy_fj_per_op,peak_tops_w,avg_util,eff_tops_w\n";
    for (const auto& w : result.workloads) {
        for (const auto& c : constants) {
            if (c.workload != w.name || c.profile.name == "photonic") continue;
            os << c.profile.name << ',' << w.name << ',' << format_ratio(c.profile.energy_fj_per_op) << ','
               << format_ratio(c.profile.peak_tops_w) << ',' << format_ratio(c.eff_tops_w / c.profile.peak_tops_w)
               << ',' << format_ratio(c.eff_tops_w) << '\n';
        }
        const double util = comparison_scale(w, result.config.comparison_pe_count).best_util_mac;
        os << photonic.name << ',' << w.name << ',' << format_ratio(photonic.energy_fj_per_op) << ','
           << format_ratio(photonic.peak_tops_w) << ',' << format_ratio(util) << ','
           << format_ratio(effective_tops_w(photonic, util)) << '\n';
    }
    return os.str();
}

std::string plotdata_util_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "workload,pe_count,grid,symmetry,util_mac,util_mean,total_cycles\n";
    for (const auto& w : result.workloads) {
        for (const auto& t : w.topologies) {
            os << w.name << ',' << t.pe_count << ',' << to_string(t.topology) << ','
               << format_ratio(symmetry_score(t.topology)) << ',' << format_ratio(t.util_mac) << ','
               << format_ratio(t.util_mean) << ',' << t.total_cycles << '\n';
        }
    }
    return os.str();
}

std::string plotdata_traffic_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "workload,pe_count,grid,ifmap_reads,filter_reads,ofmap_writes,psum_reads,dram_ifmap_reads,"
          "dram_filter_reads,dram_ofmap_writes,dram_psum_reads\n";
    for (const auto& w : result.workloads) {
        for (const auto& t : w.topologies) {
            os << w.name << ',' << t.pe_count << ',' << to_string(t.topology) << ',' << t.traffic.ifmap_reads << ','
               << t.traffic.filter_reads << ',' << t.traffic.ofmap_writes << ',' << t.traffic.psum_reads << ','
               << t.dram.ifmap_reads << ',' << t.dram.filter_reads << ',' << t.dram.ofmap_writes << ','
               << t.dram.psum_reads << '\n';
        }
    }
    return os.str();
}

std::string summary_json(const SweepResult& result) {
    using nlohmann::ordered_json;
    const auto& c = result.config;
    ordered_json doc;
    doc["schema_version"] = kSummarySchemaVersion;
    doc["generator"] = "pscale";
    doc["cycle_model"] = "weight-stationary, sequential folds, 2r+c+t-2 cycles per fold; layers summed without gaps";
    doc["config"] = {{"pe_counts", c.pe_counts},
                     {"tile_dim", c.tile_dim},
                     {"interposer_delay", c.interposer_delay},
                     {"wall_threshold", c.wall_threshold},
                     {"comparison_pe_count", c.comparison_pe_count},
                     {"buffers",
                      {{"ifmap_sram_bytes", c.buffers.ifmap_sram_bytes},
                       {"filter_sram_bytes", c.buffers.filter_sram_bytes},
                       {"ofmap_sram_bytes", c.buffers.ofmap_sram_bytes},
                       {"word_bytes", c.buffers.word_bytes}}},
                     {"optical",
                      {{"mzi_loss_db", c.optical.mzi_loss_db},
                       {"crossing_loss_db", c.optical.crossing_loss_db},
                       {"crossings_per_link", c.optical.crossings_per_link},
                       {"link_budget_db", c.optical.link_budget_db},
                       {"margin_db", c.optical.margin_db}}},
                     {"laser", {{"laser_power_w", c.laser.laser_power_w}, {"cycle_time_s", c.laser.cycle_time_s}}}};

    ordered_json feas;
    feas["tile_dim"] = c.tile_dim;
    feas["tile_link_loss_db"] = total_link_loss_db(c.tile_dim, c.optical);
    feas["tile_feasible"] = link_feasible(c.tile_dim, c.optical);
    feas["max_monolithic_mesh"] = link_feasible(1, c.optical) ? ordered_json(max_monolithic_mesh(c.optical))
                                                              : ordered_json(nullptr);
    doc["feasibility"] = feas;

    doc["workloads"] = ordered_json::array();
    for (const auto& w : result.workloads) {
        ordered_json wj;
        wj["name"] = w.name;
        wj["layers"] = w.topologies.empty() ? 0 : w.topologies.front().layers.size();
        wj["scales"] = ordered_json::array();
        for (const auto& s : w.scales) {
            ordered_json sj;
            sj["pe_count"] = s.pe_count;
            sj["best"] = grid_json(s.best);
            sj["best_cycles"] = s.best_cycles;
            sj["best_util_mac"] = s.best_util_mac;
            sj["best_util_mean"] = s.best_util_mean;
            sj["eta"] = s.eta;
            sj["below_wall_threshold"] = s.eta < c.wall_threshold;
            const auto rule = detect_symmetric_rule(result, w.name, s.pe_count);
            sj["symmetric_rule"] = {{"worst_linear", to_string(rule.worst_linear)},
                                    {"util_ratio_best_over_worst_linear", rule.util_ratio_best_over_worst_linear},
                                    {"traffic_ratio_linear_over_best", rule.traffic_ratio_linear_over_best}};
            sj["topologies"] = ordered_json::array();
            for (const auto& t : w.topologies) {
                if (t.pe_count != s.pe_count) continue;
                ordered_json tj = grid_json(t.topology);
                tj["symmetry"] = symmetry_score(t.topology);
                tj["total_cycles"] = t.total_cycles;
                tj["useful_macs"] = t.useful_macs;
                tj["util_mac"] = t.util_mac;
                tj["util_mean"] = t.util_mean;
                tj["traffic"] = traffic_json(t.traffic);
                tj["dram"] = traffic_json(t.dram);
                tj["laser_energy_j"] = t.laser_energy_j;
                sj["topologies"].push_back(std::move(tj));
            }
            wj["scales"].push_back(std::move(sj));
        }
        if (w.scales.size() >= 2) {
            const auto wall = detect_utilization_wall(result, w.name, c.wall_threshold);
            wj["utilization_wall_at"] = wall.wall_at ? ordered_json(*wall.wall_at) : ordered_json(nullptr);
        } else {
            wj["utilization_wall_at"] = nullptr;
        }
        doc["workloads"].push_back(std::move(wj));
    }
    return doc.dump(2) + "\n";
}

std::string format_best(const SweepResult& result) {
    std::ostringstream os;
    os << "Best topology (minimum total cycles)\n";
    os << std::left << std::setw(14) << "workload" << std::right << std::setw(8) << "PEs" << std::setw(10) << "grid"
       << std::setw(16) << "cycles" << std::setw(12) << "util_mac" << '\n';
    for (const auto& w : result.workloads) {
        for (const auto& s : w.scales) {
            os << std::left << std::setw(14) << w.name << std::right << std::setw(8) << s.pe_count << std::setw(10)
               << to_string(s.best) << std::setw(16) << s.best_cycles << std::setw(12)
               << format_ratio(s.best_util_mac) << '\n';
        }
    }
    return os.str();
}

std::string format_eta(const SweepResult& result) {
    std::ostringstream os;
    os << "Scaling efficiency (anchored at the smallest PE count, best topology per scale)\n";
    os << std::left << std::setw(14) << "workload" << std::right << std::setw(8) << "PEs" << std::setw(12) << "eta"
       << std::setw(8) << "wall" << '\n';
    for (const auto& w : result.workloads) {
        for (const auto& s : w.scales) {
            os << std::left << std::setw(14) << w.name << std::right << std::setw(8) << s.pe_count << std::setw(12)
               << format_ratio(s.eta) << std::setw(8) << (s.eta < result.config.wall_threshold ? "*" : "") << '\n';
        }
    }
    return os.str();
}

void write_bundle(const SweepResult& result, const std::string& dir) {
    const fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec || !fs::is_directory(root)) throw IoError("cannot create output directory '" + dir + "'");
    write_file(root / kConfigEchoFile, to_config_text(result.config));
    write_file(root / "per_layer.csv", per_layer_csv(result));
    write_file(root / "summary.csv", summary_csv(result));
    write_file(root / "eta.csv", eta_csv(result));
    write_file(root / "comparison.csv", comparison_csv(result));
    write_file(root / "summary.json", summary_json(result));
    write_file(root / "plotdata_util.csv", plotdata_util_csv(result));
    write_file(root / "plotdata_traffic.csv", plotdata_traffic_csv(result));
}

SweepResult read_bundle(const std::string& dir) {
    const fs::path root(dir);
    SweepResult result;
    const auto config_path = root / kConfigEchoFile;
    try {
        result.config = parse_config(read_file(config_path));
    } catch (const IoError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(config_path.string() + ": " + e.what());
    }

    const auto csv_path = root / "per_layer.csv";
    const auto text = read_file(csv_path);
    const auto file = csv_path.string();
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line) || line != kPerLayerHeader)
        throw ParseError(file + ": row 1: header does not match '" + std::string(kPerLayerHeader) + "'");
    ++row;

    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        const auto where = [&](std::size_t col) {
            return file + ": row " + std::to_string(row) + ", column " + std::to_string(col + 1) + ": ";
        };
        if (cells.size() != 25)
            throw ParseError(where(cells.size()) + "expected 25 columns, got " + std::to_string(cells.size()));
        const auto num = [&](std::size_t col) {
            Count v = 0;
            const auto& s = cells[col];
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
                throw ParseError(where(col) + "'" + s + "' is not a non-negative integer");
            return v;
        };

        const auto& workload = cells[0];
        if (result.workloads.empty() || result.workloads.back().name != workload) {
            for (const auto& w : result.workloads) {
                if (w.name == workload) throw ParseError(where(0) + "rows of workload '" + workload + "' are not contiguous");
            }
            result.workloads.push_back({workload, {}, {}});
        }
        auto& w = result.workloads.back();
        const GridTopology topo{num(3), num(4), num(5)};
        if (topo.pe_rows == 0 || topo.pe_cols == 0 || topo.tile_dim == 0)
            throw ParseError(where(3) + "grid dimensions must be positive");
        const Count pe_count = num(1);
        if (cells[2] != to_string(topo) || topo.pe_count() != pe_count)
            throw ParseError(where(2) + "grid '" + cells[2] + "' inconsistent with pe_count/pe_rows/pe_cols");
        if (w.topologies.empty() || w.topologies.back().pe_count != pe_count || w.topologies.back().topology != topo) {
            TopologyResult t;
            t.workload = workload;
            t.pe_count = pe_count;
            t.topology = topo;
            w.topologies.push_back(std::move(t));
        }

        LayerReport l;
        l.layer = cells[6];
        l.sr = num(7);
        l.sc = num(8);
        l.t = num(9);
        l.row_folds = num(10);
        l.col_folds = num(11);
        l.array = {num(12), num(13)};
        l.cycles = num(14);
        l.useful_macs = num(15);
        if (l.cycles == 0) throw ParseError(where(14) + "cycles must be positive");
        if (l.array.rows == 0 || l.array.cols == 0) throw ParseError(where(12) + "array dimensions must be positive");
        l.utilization = utilization_ratio(l.useful_macs, l.cycles, l.array.rows, l.array.cols);
        if (format_ratio(l.utilization) != cells[16])
            throw ParseError(where(16) + "utilization '" + cells[16] + "' disagrees with cycles and useful_macs");
        l.traffic = {num(17), num(18), num(19), num(20)};
        l.dram = {num(21), num(22), num(23), num(24)};
        w.topologies.back().layers.push_back(std::move(l));
    }
    if (result.workloads.empty()) throw ParseError(file + ": no data rows");

    for (auto& w : result.workloads) {
        for (auto& t : w.topologies) summarize(t, result.config.laser);
        summarize_scales(w);
    }
    return result;
}

}  // namespace pscale
