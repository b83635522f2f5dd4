#include "pscale/memory.hpp"

namespace pscale {

namespace {

// Union of the windows [e*stride, e*stride + extent) for e in [0, out).
Count touched_span(Count out, Count extent, Count stride) {
    if (stride <= extent) return (out - 1) * stride + extent;
    return checked_mul(out, extent, "touched span");
}

bool fits(Count elements, Count word_bytes, Count capacity) {
    Count bytes = 0;
    if (__builtin_mul_overflow(elements, word_bytes, &bytes)) return false;
    return bytes <= capacity;
}

}  // namespace

void validate(const BufferConfig& b) {
    if (b.word_bytes == 0) throw ValidationError("buffers.word_bytes must be >= 1");
    if (b.ifmap_sram_bytes < b.word_bytes || b.filter_sram_bytes < b.word_bytes ||
        b.ofmap_sram_bytes < b.word_bytes)
        throw ValidationError("every SRAM capacity must hold at least one word");
}

OperandFootprint working_set(const LayerShape& l) {
    const auto [e, f] = ofmap_dims(l);
    const Count ph = l.ifmap_h + 2 * l.padding;
    const Count pw = l.ifmap_w + 2 * l.padding;
    return {checked_mul(checked_mul(ph, pw, "ifmap footprint"), l.channels, "ifmap footprint"),
            checked_mul(checked_mul(l.filt_h * l.filt_w, l.channels, "filter footprint"), l.num_filters,
                        "filter footprint"),
            checked_mul(checked_mul(e, f, "ofmap footprint"), l.num_filters, "ofmap footprint")};
}

OperandFootprint touched_elements(const LayerShape& l) {
    auto fp = working_set(l);
    const auto [e, f] = ofmap_dims(l);
    fp.ifmap = checked_mul(checked_mul(touched_span(e, l.filt_h, l.stride), touched_span(f, l.filt_w, l.stride),
                                       "ifmap footprint"),
                           l.channels, "ifmap footprint");
    return fp;
}

MemoryTraffic demand_traffic(const FoldPlan& p) {
    MemoryTraffic m;
    m.filter_reads = checked_mul(p.sr, p.sc, "filter reads");
    m.ifmap_reads = checked_mul(checked_mul(p.col_folds, p.t, "ifmap reads"), p.sr, "ifmap reads");
    const Count per_row_fold = checked_mul(p.t, p.sc, "ofmap writes");
    m.ofmap_writes = checked_mul(p.row_folds, per_row_fold, "ofmap writes");
    m.psum_reads = checked_mul(p.row_folds - 1, per_row_fold, "psum reads");
    return m;
}

MemoryTraffic dram_traffic(const FoldPlan&, const LayerShape& layer, const MemoryTraffic& demand,
                           const BufferConfig& buf) {
    const auto capacity = working_set(layer);
    const auto unique = touched_elements(layer);
    MemoryTraffic out;
    out.ifmap_reads = fits(capacity.ifmap, buf.word_bytes, buf.ifmap_sram_bytes) ? unique.ifmap : demand.ifmap_reads;
    out.filter_reads =
        fits(capacity.filter, buf.word_bytes, buf.filter_sram_bytes) ? unique.filter : demand.filter_reads;
    if (fits(capacity.ofmap, buf.word_bytes, buf.ofmap_sram_bytes)) {
        out.ofmap_writes = unique.ofmap;
        out.psum_reads = 0;
    } else {
        out.ofmap_writes = demand.ofmap_writes;
        out.psum_reads = demand.psum_reads;
    }
    return out;
}

MemoryTraffic aggregate_traffic(std::span<const MemoryTraffic> reports) {
    MemoryTraffic sum;
    for (const auto& r : reports) sum += r;
    return sum;
}

}  // namespace pscale
