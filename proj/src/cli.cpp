#include "pscale/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "pscale/photonics.hpp"
#include "pscale/refsim.hpp"
#include "pscale/report.hpp"

namespace pscale {

namespace {

struct UsageError : Error {
    using Error::Error;
};

SweepConfig resolve_config(const std::string& flag) {
    if (!flag.empty()) return load_config(flag);
    if (const char* env = std::getenv("PSCALE_CONFIG"); env != nullptr && *env != '\0') return load_config(env);
    return SweepConfig{};
}

struct SimulateArgs {
    std::string workload;
    Count pe = 0;
    std::string grid;
    std::string config;
    bool oracle = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto config = resolve_config(a.config);
    GridTopology topo;
    try {
        topo = parse_grid(a.grid, config.tile_dim);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    if (topo.pe_count() != a.pe)
        throw UsageError("grid " + a.grid + " has " + std::to_string(topo.pe_count()) + " PEs, not " +
                         std::to_string(a.pe));
    const auto workload = load_workload(a.workload);
    const auto dims = effective_dims(topo);

    out << "workload " << workload.name << " on " << to_string(topo) << " (" << a.pe << " PEs, array " << dims.rows
        << "x" << dims.cols << ")" << (a.oracle ? " [reference simulator]" : "") << '\n';
    out << std::left << std::setw(24) << "layer" << std::right << std::setw(8) << "sr" << std::setw(7) << "sc"
        << std::setw(8) << "t" << std::setw(10) << "folds" << std::setw(12) << "cycles" << std::setw(10) << "util"
        << std::setw(13) << "ifmap_rd" << std::setw(12) << "filter_rd" << std::setw(12) << "psum_rd" << std::setw(13)
        << "ofmap_wr" << '\n';

    TopologyResult total;
    total.workload = workload.name;
    total.pe_count = a.pe;
    total.topology = topo;
    for (const auto& layer : workload.layers) {
        auto r = evaluate_layer(layer, topo, config.interposer_delay, config.buffers);
        if (a.oracle) {
            const auto sim = simulate_ws_reference(layer, dims.rows, dims.cols, config.interposer_delay);
            r.cycles = sim.cycles;
            r.useful_macs = sim.useful_mac_events;
            r.utilization = utilization_ratio(r.useful_macs, r.cycles, dims.rows, dims.cols);
            r.traffic = {sim.ifmap_reads, sim.filter_reads, sim.psum_reads, sim.ofmap_writes};
        }
        const auto folds = std::to_string(r.row_folds) + "x" + std::to_string(r.col_folds);
        out << std::left << std::setw(24) << r.layer << std::right << std::setw(8) << r.sr << std::setw(7) << r.sc
            << std::setw(8) << r.t << std::setw(10) << folds << std::setw(12) << r.cycles << std::setw(10)
            << format_ratio(r.utilization) << std::setw(13) << r.traffic.ifmap_reads << std::setw(12)
            << r.traffic.filter_reads << std::setw(12) << r.traffic.psum_reads << std::setw(13)
            << r.traffic.ofmap_writes << '\n';
        total.layers.push_back(std::move(r));
    }
    summarize(total, config.laser);
    out << std::left << std::setw(24) << "TOTAL" << std::right << std::setw(33) << "" << std::setw(12)
        << total.total_cycles << std::setw(10) << format_ratio(total.util_mac) << std::setw(13)
        << total.traffic.ifmap_reads << std::setw(12) << total.traffic.filter_reads << std::setw(12)
        << total.traffic.psum_reads << std::setw(13) << total.traffic.ofmap_writes << '\n';
    out << "layer-mean utilization " << format_ratio(total.util_mean) << ", laser energy "
        << format_energy(total.laser_energy_j) << " J\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& output, bool serial, std::ostream& out) {
    auto config = resolve_config(config_path);
    if (!output.empty()) config.output_dir = output;
    const auto result = serial ? run_sweep_serial(config) : run_sweep(config);
    write_bundle(result, config.output_dir);
    out << format_best(result) << '\n' << format_eta(result);
    out << "reports written to " << config.output_dir << '\n';
    return kExitOk;
}

int cmd_feasibility(Count max_n, const std::string& config_path, std::ostream& out) {
    const auto config = resolve_config(config_path);
    const auto& p = config.optical;
    out << std::right << std::setw(6) << "n" << std::setw(14) << "mesh_db" << std::setw(14) << "fanout_db"
        << std::setw(14) << "total_db" << std::setw(10) << "feasible" << '\n';
    for (Count n = 1; n <= max_n; ++n) {
        out << std::setw(6) << n << std::setw(14) << format_ratio(mesh_loss_db(n, p)) << std::setw(14)
            << format_ratio(fanout_loss_db(n)) << std::setw(14) << format_ratio(total_link_loss_db(n, p))
            << std::setw(10) << (link_feasible(n, p) ? "yes" : "no") << '\n';
    }
    out << "link budget " << format_ratio(p.link_budget_db) << " dB, margin " << format_ratio(p.margin_db) << " dB\n";
    if (link_feasible(1, p))
        out << "max_monolithic_mesh = " << max_monolithic_mesh(p) << '\n';
    else
        out << "max_monolithic_mesh = none (n = 1 exceeds the budget)\n";
    return kExitOk;
}

int cmd_report(const std::string& input, const std::string& format, bool best, bool eta, std::ostream& out) {
    const auto result = read_bundle(input);
    if (format == "json") {
        out << summary_json(result);
        return kExitOk;
    }
    if (!best && !eta) {
        out << summary_csv(result);
        return kExitOk;
    }
    if (best) out << format_best(result);
    if (best && eta) out << '\n';
    if (eta) out << format_eta(result);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chiplet photonic accelerator design-space simulator", "pscale"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Evaluate one workload on one grid");
    simulate->add_option("--workload", sim.workload, "Layer CSV path or preset:<name>")->required();
    simulate->add_option("--pe", sim.pe, "PE count")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--grid", sim.grid, "PE grid as RxC")->required();
    simulate->add_option("--config", sim.config, "Run-config file (default: $PSCALE_CONFIG)");
    simulate->add_flag("--oracle", sim.oracle, "Use the cycle-by-cycle reference simulator")->group("");

    std::string sweep_config;
    std::string sweep_output;
    bool sweep_serial = false;
    auto* sweep = app.add_subcommand("sweep", "Run the PE-count x aspect-ratio sweep and write reports");
    sweep->add_option("--config", sweep_config, "Run-config file (default: $PSCALE_CONFIG)");
    sweep->add_option("--output", sweep_output, "Override sweep.output_dir");
    sweep->add_flag("--serial", sweep_serial, "Evaluate on one thread")->group("");

    Count max_n = 64;
    std::string feas_config;
    auto* feasibility = app.add_subcommand("feasibility", "Print the optical link-budget table");
    feasibility->add_option("--max-n", max_n, "Largest mesh size to tabulate")->check(CLI::PositiveNumber);
    feasibility->add_option("--config", feas_config, "Run-config file (default: $PSCALE_CONFIG)");

    std::string input;
    std::string format = "csv";
    bool best = false;
    bool eta = false;
    auto* report = app.add_subcommand("report", "Re-derive summaries from a sweep output directory");
    report->add_option("--input", input, "Sweep output directory")->required();
    report->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    report->add_flag("--best", best, "Print best topologies");
    report->add_flag("--eta", eta, "Print scaling efficiency");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, out);
        if (*sweep) return cmd_sweep(sweep_config, sweep_output, sweep_serial, out);
        if (*feasibility) return cmd_feasibility(max_n, feas_config, out);
        if (*report) return cmd_report(input, format, best, eta, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsage;
}

}  // namespace pscale
