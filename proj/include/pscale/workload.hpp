#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pscale/error.hpp"

namespace pscale {

/// One convolution (or FC, as a 1x1 convolution) layer.
struct LayerShape {
    std::string name;
    Count ifmap_h = 1;
    Count ifmap_w = 1;
    Count filt_h = 1;       // R
    Count filt_w = 1;       // S
    Count channels = 1;     // C
    Count num_filters = 1;  // M
    Count stride = 1;
    Count padding = 0;      // per side

    bool operator==(const LayerShape&) const = default;
};

struct Workload {
    std::string name;
    std::vector<LayerShape> layers;

    bool operator==(const Workload&) const = default;
};

struct OfmapDims {
    Count rows = 0;  // E
    Count cols = 0;  // F
};

/// Throws ValidationError if any dimension is zero or the filter does not fit
/// the padded input.
void validate(const LayerShape& layer);
void validate(const Workload& workload);

OfmapDims ofmap_dims(const LayerShape& layer);

/// E*F*R*S*C*M. Throws OverflowError when the product exceeds 64 bits.
Count layer_macs(const LayerShape& layer);

inline constexpr std::string_view kLayerCsvHeader =
    "name,ifmap_h,ifmap_w,filt_h,filt_w,channels,num_filters,stride,padding";

/// Parses the layer CSV format. A header row is required; `#` comment lines
/// and blank lines are skipped; CRLF is accepted. Errors name the 1-based
/// line number.
Workload parse_layer_csv(std::string_view text, std::string name = "workload");

std::string serialize_layer_csv(const Workload& workload);

/// Reads a workload from a file path or a `preset:<name>` reference.
Workload load_workload(const std::string& ref);

}  // namespace pscale
