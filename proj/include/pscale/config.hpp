#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pscale/memory.hpp"
#include "pscale/photonics.hpp"

namespace pscale {

struct SweepConfig {
    std::vector<std::string> workloads{"preset:googlenet", "preset:resnet18", "preset:mobilenet",
                                       "preset:alphagozero"};
    std::vector<Count> pe_counts{64, 128, 256, 512, 1024};
    Count tile_dim = 4;
    Count interposer_delay = 0;
    double wall_threshold = 0.7;
    /// PE count whose best topology feeds the photonic comparison rows; the
    /// largest swept count is used when this one is absent.
    Count comparison_pe_count = 512;
    std::string output_dir = "pscale_out";
    BufferConfig buffers;
    OpticalParams optical;
    LaserParams laser;

    bool operator==(const SweepConfig&) const = default;
};

/// Throws ValidationError listing every violated constraint.
void validate(const SweepConfig& config);

/// Parses the run-config format: `[sweep]`, `[buffers]`, `[optical]` and
/// `[laser]` sections of `key = value` lines. Values are integers, floats,
/// quoted strings or flat `[a, b]` arrays. `#` starts a comment. Every key is
/// optional. Unknown sections or keys are errors.
SweepConfig parse_config(std::string_view text);

SweepConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const SweepConfig& config);

}  // namespace pscale
