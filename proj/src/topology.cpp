#include "pscale/topology.hpp"

#include <algorithm>
#include <charconv>

namespace pscale {

void validate(const GridTopology& t) {
    if (t.pe_rows == 0 || t.pe_cols == 0 || t.tile_dim == 0)
        throw ValidationError("grid " + to_string(t) + ": rows, cols and tile_dim must be >= 1");
}

std::vector<GridTopology> enumerate_topologies(Count pe_count, Count tile_dim) {
    if (pe_count == 0) throw ValidationError("pe_count must be >= 1");
    if (tile_dim == 0) throw ValidationError("tile_dim must be >= 1");
    std::vector<GridTopology> small;
    std::vector<GridTopology> large;
    for (Count r = 1; r * r <= pe_count; ++r) {
        if (pe_count % r != 0) continue;
        const Count c = pe_count / r;
        small.push_back({r, c, tile_dim});
        if (c != r) large.push_back({c, r, tile_dim});
    }
    std::reverse(large.begin(), large.end());
    small.insert(small.end(), large.begin(), large.end());
    return small;
}

ArrayDims effective_dims(const GridTopology& t) {
    return {checked_mul(t.pe_rows, t.tile_dim, "array rows"), checked_mul(t.pe_cols, t.tile_dim, "array cols")};
}

double symmetry_score(const GridTopology& t) {
    const auto [lo, hi] = std::minmax(t.pe_rows, t.pe_cols);
    return static_cast<double>(lo) / static_cast<double>(hi);
}

std::string to_string(const GridTopology& t) {
    return std::to_string(t.pe_rows) + "x" + std::to_string(t.pe_cols);
}

GridTopology parse_grid(const std::string& text, Count tile_dim) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw ParseError("grid '" + text + "' is not of the form RxC");
    GridTopology t{0, 0, tile_dim};
    const auto parse = [&](const char* b, const char* e, Count& out) {
        const auto [ptr, ec] = std::from_chars(b, e, out);
        if (ec != std::errc{} || ptr != e || b == e || out == 0)
            throw ParseError("grid '" + text + "' is not of the form RxC with positive integers");
    };
    parse(text.data(), text.data() + x, t.pe_rows);
    parse(text.data() + x + 1, text.data() + text.size(), t.pe_cols);
    return t;
}

}  // namespace pscale
