#pragma once

#include <string>

#include "pscale/sweep.hpp"

namespace pscale {

inline constexpr int kSummarySchemaVersion = 1;

// Canonical number formatting shared by every report: integers bare, ratios
// with six decimals, energies in %.9e. No locale is consulted.
std::string format_ratio(double v);
std::string format_energy(double v);

std::string per_layer_csv(const SweepResult& result);
std::string summary_csv(const SweepResult& result);
std::string eta_csv(const SweepResult& result);
std::string comparison_csv(const SweepResult& result);
std::string summary_json(const SweepResult& result);
std::string plotdata_util_csv(const SweepResult& result);
std::string plotdata_traffic_csv(const SweepResult& result);

/// Human-readable best-topology and scaling-efficiency blocks printed by
/// `sweep` and `report`.
std::string format_best(const SweepResult& result);
std::string format_eta(const SweepResult& result);

inline constexpr const char* kConfigEchoFile = "sweep_config.toml";

/// Writes every report file plus the effective config into `dir`.
void write_bundle(const SweepResult& result, const std::string& dir);

/// Rebuilds a SweepResult from a bundle directory using only the persisted
/// per-layer CSV and config echo; no layer is re-simulated. Throws ParseError
/// naming file, row and column for corrupt input.
SweepResult read_bundle(const std::string& dir);

}  // namespace pscale
