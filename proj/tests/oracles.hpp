// Test-only oracles. Each one recomputes a quantity by enumeration, without
// calling the library routine it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "pscale/memory.hpp"
#include "pscale/refsim.hpp"
#include "pscale/workload.hpp"

namespace oracle {

using pscale::Count;
using pscale::LayerShape;

/// Number of window positions along one axis, by scanning every start.
inline Count window_positions(Count in, Count pad, Count filt, Count stride) {
    Count n = 0;
    for (Count start = 0; start + filt <= in + 2 * pad; start += stride) ++n;
    return n;
}

/// MAC count of a naive 6-nested-loop convolution.
inline Count conv_macs(const LayerShape& l) {
    const Count e = window_positions(l.ifmap_h, l.padding, l.filt_h, l.stride);
    const Count f = window_positions(l.ifmap_w, l.padding, l.filt_w, l.stride);
    Count macs = 0;
    for (Count m = 0; m < l.num_filters; ++m)
        for (Count y = 0; y < e; ++y)
            for (Count x = 0; x < f; ++x)
                for (Count c = 0; c < l.channels; ++c)
                    for (Count ry = 0; ry < l.filt_h; ++ry)
                        for (Count sx = 0; sx < l.filt_w; ++sx) ++macs;
    return macs;
}

/// Direct convolution over the reference simulator's synthetic operands,
/// laid out (e * F + f) * M + m.
inline std::vector<std::int64_t> conv_values(const LayerShape& l) {
    const Count e = window_positions(l.ifmap_h, l.padding, l.filt_h, l.stride);
    const Count f = window_positions(l.ifmap_w, l.padding, l.filt_w, l.stride);
    std::vector<std::int64_t> out(e * f * l.num_filters, 0);
    for (Count y = 0; y < e; ++y)
        for (Count x = 0; x < f; ++x)
            for (Count m = 0; m < l.num_filters; ++m) {
                std::int64_t acc = 0;
                for (Count c = 0; c < l.channels; ++c)
                    for (Count ry = 0; ry < l.filt_h; ++ry)
                        for (Count sx = 0; sx < l.filt_w; ++sx) {
                            const std::int64_t h = static_cast<std::int64_t>(y * l.stride + ry) - static_cast<std::int64_t>(l.padding);
                            const std::int64_t w = static_cast<std::int64_t>(x * l.stride + sx) - static_cast<std::int64_t>(l.padding);
                            if (h < 0 || w < 0 || h >= static_cast<std::int64_t>(l.ifmap_h) ||
                                w >= static_cast<std::int64_t>(l.ifmap_w))
                                continue;
                            acc += pscale::refsim_ifmap_value(static_cast<Count>(h), static_cast<Count>(w), c) *
                                   pscale::refsim_weight_value(m, c, ry, sx);
                        }
                out[(y * f + x) * l.num_filters + m] = acc;
            }
    return out;
}

/// Divisor count via prime factorization.
inline Count divisor_count(Count n) {
    Count count = 1;
    for (Count p = 2; p * p <= n; ++p) {
        Count k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        count *= k + 1;
    }
    if (n > 1) count *= 2;
    return count;
}

/// Fold extents by walking the tile origins one lane at a time.
inline std::vector<Count> tile_extents(Count extent, Count lanes) {
    std::vector<Count> out;
    Count filled = 0;
    while (filled < extent) {
        Count take = 0;
        while (take < lanes && filled < extent) {
            ++take;
            ++filled;
        }
        out.push_back(take);
    }
    return out;
}

/// Replays the weight-stationary fold schedule access by access and applies
/// the per-class threshold policy with an exact set of resident elements:
/// a class that fits its SRAM pays one DRAM access per first touch, a class
/// that does not fit pays one per access.
inline pscale::MemoryTraffic replay_dram(const LayerShape& l, Count ar, Count ac, const pscale::BufferConfig& buf) {
    const Count e = window_positions(l.ifmap_h, l.padding, l.filt_h, l.stride);
    const Count f = window_positions(l.ifmap_w, l.padding, l.filt_w, l.stride);
    const Count sr = l.filt_h * l.filt_w * l.channels;
    const Count sc = l.num_filters;
    const Count ph = l.ifmap_h + 2 * l.padding;
    const Count pw = l.ifmap_w + 2 * l.padding;
    const bool ifmap_fits = ph * pw * l.channels * buf.word_bytes <= buf.ifmap_sram_bytes;
    const bool filter_fits = sr * sc * buf.word_bytes <= buf.filter_sram_bytes;
    const bool ofmap_fits = e * f * sc * buf.word_bytes <= buf.ofmap_sram_bytes;

    std::vector<char> ifmap_seen(ph * pw * l.channels, 0);
    std::vector<char> filter_seen(sr * sc, 0);
    std::vector<char> ofmap_seen(e * f * sc, 0);
    pscale::MemoryTraffic dram;
    for (Count q0 = 0; q0 < sr; q0 += ar) {
        const Count r = std::min(ar, sr - q0);
        for (Count m0 = 0; m0 < sc; m0 += ac) {
            const Count c = std::min(ac, sc - m0);
            for (Count i = 0; i < r; ++i)
                for (Count j = 0; j < c; ++j) {
                    auto& seen = filter_seen[(q0 + i) * sc + m0 + j];
                    if (!filter_fits || !seen) ++dram.filter_reads;
                    seen = 1;
                }
            for (Count k = 0; k < e * f; ++k) {
                for (Count i = 0; i < r; ++i) {
                    const Count q = q0 + i;
                    const Count ch = q / (l.filt_h * l.filt_w);
                    const Count ry = (q % (l.filt_h * l.filt_w)) / l.filt_w;
                    const Count sx = q % l.filt_w;
                    const Count y = (k / f) * l.stride + ry;
                    const Count x = (k % f) * l.stride + sx;
                    auto& seen = ifmap_seen[(y * pw + x) * l.channels + ch];
                    if (!ifmap_fits || !seen) ++dram.ifmap_reads;
                    seen = 1;
                }
                for (Count j = 0; j < c; ++j) {
                    auto& seen = ofmap_seen[k * sc + m0 + j];
                    if (!ofmap_fits) {
                        if (q0 > 0) ++dram.psum_reads;
                        ++dram.ofmap_writes;
                    } else if (!seen) {
                        ++dram.ofmap_writes;
                    }
                    seen = 1;
                }
            }
        }
    }
    return dram;
}

/// Every layer of the small-instance grid: H,W <= 6, R,S <= 3, C <= 3,
/// M <= 6, stride in {1,2}, padding in {0,1}; invalid shapes skipped.
template <typename Fn>
void for_each_small_layer(Fn&& fn) {
    for (Count h = 1; h <= 6; ++h)
        for (Count w = 1; w <= 6; ++w)
            for (Count r = 1; r <= 3; ++r)
                for (Count s = 1; s <= 3; ++s)
                    for (Count p = 0; p <= 1; ++p) {
                        if (h + 2 * p < r || w + 2 * p < s) continue;
                        for (Count stride = 1; stride <= 2; ++stride)
                            for (Count c = 1; c <= 3; ++c)
                                for (Count m = 1; m <= 6; ++m)
                                    fn(LayerShape{"small", h, w, r, s, c, m, stride, p});
                    }
}

}  // namespace oracle
