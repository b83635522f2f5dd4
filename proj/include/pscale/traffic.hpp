#pragma once

#include "pscale/error.hpp"

namespace pscale {

/// Element-access counts for the three operand classes. Partial sums travel
/// through the output-side SRAM, so psum_reads belongs to the ofmap class.
struct MemoryTraffic {
    Count ifmap_reads = 0;
    Count filter_reads = 0;
    Count psum_reads = 0;
    Count ofmap_writes = 0;

    Count total() const {
        return checked_add(checked_add(ifmap_reads, filter_reads, "traffic total"),
                           checked_add(psum_reads, ofmap_writes, "traffic total"), "traffic total");
    }

    MemoryTraffic& operator+=(const MemoryTraffic& o) {
        ifmap_reads = checked_add(ifmap_reads, o.ifmap_reads, "ifmap traffic");
        filter_reads = checked_add(filter_reads, o.filter_reads, "filter traffic");
        psum_reads = checked_add(psum_reads, o.psum_reads, "psum traffic");
        ofmap_writes = checked_add(ofmap_writes, o.ofmap_writes, "ofmap traffic");
        return *this;
    }

    friend MemoryTraffic operator+(MemoryTraffic a, const MemoryTraffic& b) { return a += b; }
    bool operator==(const MemoryTraffic&) const = default;
};

}  // namespace pscale
