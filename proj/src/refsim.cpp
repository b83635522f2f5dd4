#include "pscale/refsim.hpp"

#include <algorithm>

namespace pscale {

std::int64_t refsim_ifmap_value(Count h, Count w, Count c) {
    return static_cast<std::int64_t>((h * 31 + w * 17 + c * 7) % 11) - 5;
}

std::int64_t refsim_weight_value(Count m, Count c, Count ry, Count sx) {
    return static_cast<std::int64_t>((m * 13 + c * 5 + ry * 3 + sx) % 7) - 3;
}

RefSimResult simulate_ws_reference(const LayerShape& layer, Count ar, Count ac, Count interposer_delay) {
    validate(layer);
    if (ar == 0 || ac == 0) throw ValidationError("array dimensions must be >= 1");
    if (ar * ac > kRefSimMaxLanes || layer_macs(layer) > kRefSimMaxMacs)
        throw InstanceTooLarge("reference simulation instance too large for layer '" + layer.name + "'");

    const auto [out_h, out_w] = ofmap_dims(layer);
    const Count rs = layer.filt_h * layer.filt_w;
    const Count window = rs * layer.channels;
    const Count filters = layer.num_filters;
    const Count vectors = out_h * out_w;

    // Element q of streamed vector k: q = (c * R + ry) * S + sx.
    const auto input_at = [&](Count k, Count q) -> std::int64_t {
        const Count c = q / rs;
        const Count ry = (q % rs) / layer.filt_w;
        const Count sx = q % layer.filt_w;
        const Count ph = (k / out_w) * layer.stride + ry;
        const Count pw = (k % out_w) * layer.stride + sx;
        if (ph < layer.padding || pw < layer.padding || ph - layer.padding >= layer.ifmap_h ||
            pw - layer.padding >= layer.ifmap_w)
            return 0;
        return refsim_ifmap_value(ph - layer.padding, pw - layer.padding, c);
    };
    const auto weight_at = [&](Count q, Count m) -> std::int64_t {
        return refsim_weight_value(m, q / rs, (q % rs) / layer.filt_w, q % layer.filt_w);
    };

    RefSimResult res;
    res.ofmap.assign(vectors * filters, 0);

    constexpr std::int64_t kIdle = -1;
    const Count rows_max = std::min(ar, window);
    const Count cols_max = std::min(ac, filters);
    std::vector<std::int64_t> weight(rows_max * cols_max);
    std::vector<std::int64_t> in_val(rows_max * cols_max);
    std::vector<std::int64_t> in_vec(rows_max * cols_max);
    std::vector<std::int64_t> psum(rows_max * cols_max);

    bool first_fold = true;
    for (Count q0 = 0; q0 < window; q0 += ar) {
        const Count r = std::min(ar, window - q0);
        for (Count m0 = 0; m0 < filters; m0 += ac) {
            const Count c = std::min(ac, filters - m0);
            if (!first_fold) res.cycles += interposer_delay;
            first_fold = false;

            for (Count i = 0; i < r; ++i) {
                for (Count j = 0; j < c; ++j) {
                    weight[i * c + j] = weight_at(q0 + i, m0 + j);
                    ++res.filter_reads;
                }
                ++res.cycles;
            }

            std::fill(in_vec.begin(), in_vec.begin() + static_cast<std::ptrdiff_t>(r * c), kIdle);
            std::fill(psum.begin(), psum.begin() + static_cast<std::ptrdiff_t>(r * c), 0);

            const Count steps = vectors + r + c - 2;
            for (Count s = 0; s < steps; ++s) {
                // Shift in place: bottom-up over rows, right-to-left over
                // columns, so each register still holds last cycle's value
                // when its neighbour reads it.
                for (Count ii = r; ii-- > 0;) {
                    for (Count jj = c; jj-- > 0;) {
                        const Count idx = ii * c + jj;
                        if (jj > 0) {
                            in_val[idx] = in_val[idx - 1];
                            in_vec[idx] = in_vec[idx - 1];
                        } else if (s >= ii && s - ii < vectors) {
                            in_vec[idx] = static_cast<std::int64_t>(s - ii);
                            in_val[idx] = input_at(s - ii, q0 + ii);
                            ++res.ifmap_reads;
                        } else {
                            in_vec[idx] = kIdle;
                        }
                        const std::int64_t above = ii > 0 ? psum[idx - c] : 0;
                        if (in_vec[idx] != kIdle) {
                            psum[idx] = above + weight[idx] * in_val[idx];
                            ++res.useful_mac_events;
                        } else {
                            psum[idx] = 0;
                        }
                    }
                }
                for (Count jj = 0; jj < c; ++jj) {
                    const Count idx = (r - 1) * c + jj;
                    if (in_vec[idx] == kIdle) continue;
                    auto& out = res.ofmap[static_cast<Count>(in_vec[idx]) * filters + m0 + jj];
                    if (q0 > 0) ++res.psum_reads;
                    out += psum[idx];
                    ++res.ofmap_writes;
                }
                ++res.cycles;
            }
        }
    }
    return res;
}

}  // namespace pscale
