#include "pscale/workload.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pscale/presets.hpp"

namespace pscale {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

void validate(const LayerShape& l) {
    const std::array<std::pair<const char*, Count>, 7> dims{{{"ifmap_h", l.ifmap_h},
                                                             {"ifmap_w", l.ifmap_w},
                                                             {"filt_h", l.filt_h},
                                                             {"filt_w", l.filt_w},
                                                             {"channels", l.channels},
                                                             {"num_filters", l.num_filters},
                                                             {"stride", l.stride}}};
    for (const auto& [field, value] : dims) {
        if (value == 0)
            throw ValidationError("layer '" + l.name + "': " + field + " must be >= 1");
    }
    const Count pad2 = checked_mul(2, l.padding, "padding");
    if (checked_add(l.ifmap_h, pad2) < l.filt_h || checked_add(l.ifmap_w, pad2) < l.filt_w)
        throw ValidationError("layer '" + l.name + "': filter exceeds padded ifmap");
}

void validate(const Workload& w) {
    if (w.layers.empty()) throw ValidationError("workload '" + w.name + "' has no layers");
    std::set<std::string> seen;
    for (const auto& layer : w.layers) {
        validate(layer);
        if (!seen.insert(layer.name).second)
            throw ValidationError("workload '" + w.name + "': duplicate layer name '" + layer.name + "'");
    }
}

OfmapDims ofmap_dims(const LayerShape& l) {
    return {(l.ifmap_h + 2 * l.padding - l.filt_h) / l.stride + 1,
            (l.ifmap_w + 2 * l.padding - l.filt_w) / l.stride + 1};
}

Count layer_macs(const LayerShape& l) {
    const auto [e, f] = ofmap_dims(l);
    Count macs = checked_mul(e, f, "layer MACs");
    for (const Count d : {l.filt_h, l.filt_w, l.channels, l.num_filters}) macs = checked_mul(macs, d, "layer MACs");
    return macs;
}

Workload parse_layer_csv(std::string_view text, std::string name) {
    Workload w{std::move(name), {}};
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split_commas(line);
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (!have_header) {
            std::string joined;
            for (std::size_t i = 0; i < fields.size(); ++i) joined += (i ? "," : "") + lower(fields[i]);
            if (joined != kLayerCsvHeader)
                throw ParseError(where + "expected header '" + std::string(kLayerCsvHeader) + "'");
            have_header = true;
            continue;
        }
        if (fields.size() != 9)
            throw ParseError(where + "expected 9 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(where + "empty layer name");

        std::array<Count, 8> v{};
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto f = fields[i + 1];
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v[i]);
            if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty())
                throw ParseError(where + "field " + std::to_string(i + 2) + " ('" + std::string(f) +
                                 "') is not a non-negative integer");
        }
        LayerShape layer{std::string(fields[0]), v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
        try {
            validate(layer);
        } catch (const ValidationError& e) {
            throw ParseError(where + e.what());
        }
        w.layers.push_back(std::move(layer));
    }
    if (w.layers.empty()) throw ParseError("workload '" + w.name + "': empty workload (no data rows)");
    validate(w);
    return w;
}

std::string serialize_layer_csv(const Workload& w) {
    std::ostringstream os;
    os << kLayerCsvHeader << '\n';
    for (const auto& l : w.layers) {
        os << l.name << ',' << l.ifmap_h << ',' << l.ifmap_w << ',' << l.filt_h << ',' << l.filt_w << ','
           << l.channels << ',' << l.num_filters << ',' << l.stride << ',' << l.padding << '\n';
    }
    return os.str();
}

Workload load_workload(const std::string& ref) {
    constexpr std::string_view prefix = "preset:";
    if (ref.starts_with(prefix)) {
        const auto name = ref.substr(prefix.size());
        const auto text = preset_csv(name);
        if (!text) throw LookupError("unknown preset '" + name + "'");
        return parse_layer_csv(*text, name);
    }
    std::ifstream in(ref, std::ios::binary);
    if (!in) throw IoError("cannot read workload file '" + ref + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto stem = ref;
    if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (const auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    try {
        return parse_layer_csv(buf.str(), stem);
    } catch (const ParseError& e) {
        throw ParseError(ref + ": " + e.what());
    }
}

}  // namespace pscale
