#pragma once

#include <string>
#include <vector>

#include "pscale/error.hpp"

namespace pscale {

/// A rows x cols grid of square PTC chiplets, each tile_dim x tile_dim MAC
/// lanes. For dataflow purposes the grid behaves as one monolithic array of
/// (pe_rows * tile_dim) x (pe_cols * tile_dim) lanes.
struct GridTopology {
    Count pe_rows = 1;
    Count pe_cols = 1;
    Count tile_dim = 4;

    Count pe_count() const { return pe_rows * pe_cols; }
    bool operator==(const GridTopology&) const = default;
};

struct ArrayDims {
    Count rows = 0;  // ar
    Count cols = 0;  // ac

    bool operator==(const ArrayDims&) const = default;
};

void validate(const GridTopology& t);

/// Every ordered divisor pair (r, c) with r * c == pe_count, by r ascending.
std::vector<GridTopology> enumerate_topologies(Count pe_count, Count tile_dim = 4);

ArrayDims effective_dims(const GridTopology& t);

/// min(rows, cols) / max(rows, cols); 1 for a square grid.
double symmetry_score(const GridTopology& t);

/// "RxC", e.g. "16x32".
std::string to_string(const GridTopology& t);

/// Parses "RxC" (case-insensitive 'x'). Throws ParseError.
GridTopology parse_grid(const std::string& text, Count tile_dim = 4);

}  // namespace pscale
