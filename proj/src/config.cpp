#include "pscale/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pscale {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Drops a trailing comment, ignoring '#' inside quotes.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

struct Value {
    std::string_view raw;
    std::string where;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(where + ": " + what + " (got '" + std::string(raw) + "')");
    }

    Count as_count() const {
        Count v = 0;
        const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (raw.empty() || ec != std::errc{} || ptr != raw.data() + raw.size()) fail("expected a non-negative integer");
        return v;
    }

    double as_double() const {
        double v = 0;
        const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (raw.empty() || ec != std::errc{} || ptr != raw.data() + raw.size()) fail("expected a number");
        return v;
    }

    static std::string unquote(std::string_view s, const Value& ctx) {
        if (s.size() < 2 || s.front() != '"' || s.back() != '"') ctx.fail("expected a quoted string");
        return std::string(s.substr(1, s.size() - 2));
    }

    std::string as_string() const { return unquote(raw, *this); }

    std::vector<std::string_view> items() const {
        if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') fail("expected an array");
        std::vector<std::string_view> out;
        auto body = trim(raw.substr(1, raw.size() - 2));
        if (body.empty()) return out;
        std::size_t start = 0;
        bool quoted = false;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i < body.size() && body[i] == '"') quoted = !quoted;
            if (i == body.size() || (body[i] == ',' && !quoted)) {
                const auto item = trim(body.substr(start, i - start));
                if (!item.empty()) out.push_back(item);
                start = i + 1;
            }
        }
        return out;
    }

    std::vector<Count> as_counts() const {
        std::vector<Count> out;
        for (const auto item : items()) out.push_back(Value{item, where}.as_count());
        return out;
    }

    std::vector<std::string> as_strings() const {
        std::vector<std::string> out;
        for (const auto item : items()) out.push_back(unquote(item, *this));
        return out;
    }
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void validate(const SweepConfig& c) {
    std::vector<std::string> problems;
    if (c.workloads.empty()) problems.emplace_back("sweep.workloads must be non-empty");
    if (c.pe_counts.empty()) problems.emplace_back("sweep.pe_counts must be non-empty");
    for (std::size_t i = 0; i < c.pe_counts.size(); ++i) {
        if (c.pe_counts[i] == 0) problems.emplace_back("sweep.pe_counts entries must be >= 1");
        if (i > 0 && c.pe_counts[i] <= c.pe_counts[i - 1])
            problems.emplace_back("sweep.pe_counts must be strictly increasing");
    }
    if (c.tile_dim == 0) problems.emplace_back("sweep.tile_dim must be >= 1");
    if (!(c.wall_threshold > 0.0)) problems.emplace_back("sweep.wall_threshold must be > 0");
    if (c.output_dir.empty()) problems.emplace_back("sweep.output_dir must be non-empty");
    const auto collect = [&](auto&& check) {
        try {
            check();
        } catch (const ValidationError& e) {
            problems.emplace_back(e.what());
        }
    };
    collect([&] { validate(c.buffers); });
    collect([&] { validate(c.optical); });
    collect([&] { validate(c.laser); });
    if (!problems.empty()) {
        std::string msg = "invalid config:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }
}

SweepConfig parse_config(std::string_view text) {
    SweepConfig c;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(strip_comment(text.substr(pos, end - pos)));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto where = "config line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(where + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "sweep" && section != "buffers" && section != "optical" && section != "laser")
                throw ParseError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(where + ": expected 'key = value'");
        const auto key = std::string(trim(line.substr(0, eq)));
        const Value v{trim(line.substr(eq + 1)), where};
        const auto full = section + "." + key;

        if (full == "sweep.workloads") c.workloads = v.as_strings();
        else if (full == "sweep.pe_counts") c.pe_counts = v.as_counts();
        else if (full == "sweep.tile_dim") c.tile_dim = v.as_count();
        else if (full == "sweep.interposer_delay") c.interposer_delay = v.as_count();
        else if (full == "sweep.wall_threshold") c.wall_threshold = v.as_double();
        else if (full == "sweep.comparison_pe_count") c.comparison_pe_count = v.as_count();
        else if (full == "sweep.output_dir") c.output_dir = v.as_string();
        else if (full == "buffers.ifmap_sram_bytes") c.buffers.ifmap_sram_bytes = v.as_count();
        else if (full == "buffers.filter_sram_bytes") c.buffers.filter_sram_bytes = v.as_count();
        else if (full == "buffers.ofmap_sram_bytes") c.buffers.ofmap_sram_bytes = v.as_count();
        else if (full == "buffers.word_bytes") c.buffers.word_bytes = v.as_count();
        else if (full == "optical.mzi_loss_db") c.optical.mzi_loss_db = v.as_double();
        else if (full == "optical.crossing_loss_db") c.optical.crossing_loss_db = v.as_double();
        else if (full == "optical.crossings_per_link") c.optical.crossings_per_link = v.as_count();
        else if (full == "optical.link_budget_db") c.optical.link_budget_db = v.as_double();
        else if (full == "optical.margin_db") c.optical.margin_db = v.as_double();
        else if (full == "laser.laser_power_w") c.laser.laser_power_w = v.as_double();
        else if (full == "laser.cycle_time_s") c.laser.cycle_time_s = v.as_double();
        else throw ParseError(where + ": unknown key '" + (section.empty() ? key : full) + "'");
    }
    validate(c);
    return c;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string to_config_text(const SweepConfig& c) {
    std::ostringstream os;
    os << "[sweep]\nworkloads = [";
    for (std::size_t i = 0; i < c.workloads.size(); ++i) os << (i ? ", " : "") << '"' << c.workloads[i] << '"';
    os << "]\npe_counts = [";
    for (std::size_t i = 0; i < c.pe_counts.size(); ++i) os << (i ? ", " : "") << c.pe_counts[i];
    os << "]\ntile_dim = " << c.tile_dim << "\ninterposer_delay = " << c.interposer_delay
       << "\nwall_threshold = " << format_double(c.wall_threshold)
       << "\ncomparison_pe_count = " << c.comparison_pe_count << "\noutput_dir = \"" << c.output_dir << "\"\n";
    os << "\n[buffers]\nifmap_sram_bytes = " << c.buffers.ifmap_sram_bytes
       << "\nfilter_sram_bytes = " << c.buffers.filter_sram_bytes
       << "\nofmap_sram_bytes = " << c.buffers.ofmap_sram_bytes << "\nword_bytes = " << c.buffers.word_bytes << "\n";
    os << "\n[optical]\nmzi_loss_db = " << format_double(c.optical.mzi_loss_db)
       << "\ncrossing_loss_db = " << format_double(c.optical.crossing_loss_db)
       << "\ncrossings_per_link = " << c.optical.crossings_per_link
       << "\nlink_budget_db = " << format_double(c.optical.link_budget_db)
       << "\nmargin_db = " << format_double(c.optical.margin_db) << "\n";
    os << "\n[laser]\nlaser_power_w = " << format_double(c.laser.laser_power_w)
       << "\ncycle_time_s = " << format_double(c.laser.cycle_time_s) << "\n";
    return os.str();
}

}  // namespace pscale
