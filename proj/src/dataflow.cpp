#include "pscale/dataflow.hpp"

namespace pscale {

namespace {

std::vector<Count> fold_sizes(Count extent, Count lanes) {
    std::vector<Count> sizes(extent / lanes, lanes);
    if (extent % lanes != 0) sizes.push_back(extent % lanes);
    return sizes;
}

}  // namespace

FoldPlan plan_folds(const LayerShape& layer, Count ar, Count ac, Count interposer_delay) {
    if (ar == 0 || ac == 0) throw ValidationError("array dimensions must be >= 1");
    validate(layer);
    const auto [e, f] = ofmap_dims(layer);
    FoldPlan plan;
    plan.sr = checked_mul(checked_mul(layer.filt_h, layer.filt_w, "window size"), layer.channels, "window size");
    plan.sc = layer.num_filters;
    plan.t = checked_mul(e, f, "ofmap pixels");
    plan.row_sizes = fold_sizes(plan.sr, ar);
    plan.col_sizes = fold_sizes(plan.sc, ac);
    plan.row_folds = plan.row_sizes.size();
    plan.col_folds = plan.col_sizes.size();
    plan.interposer_delay = interposer_delay;
    return plan;
}

Count ws_cycles(const FoldPlan& p) {
    // Sum over (i, j) of 2 r_i + c_j + t - 2, folded into closed form.
    const Count folds = checked_mul(p.row_folds, p.col_folds, "fold count");
    Count cycles = checked_mul(checked_mul(2, p.sr, "cycles"), p.col_folds, "cycles");
    cycles = checked_add(cycles, checked_mul(p.sc, p.row_folds, "cycles"), "cycles");
    cycles = checked_add(cycles, checked_mul(p.t, folds, "cycles"), "cycles");
    cycles -= 2 * folds;  // every fold contributes >= 2 cycles, so this cannot wrap
    if (folds > 1) cycles = checked_add(cycles, checked_mul(folds - 1, p.interposer_delay, "cycles"), "cycles");
    return cycles;
}

Count plan_useful_macs(const FoldPlan& p) {
    return checked_mul(checked_mul(p.sr, p.sc, "useful MACs"), p.t, "useful MACs");
}

double utilization_ratio(Count useful_macs, Count cycles, Count ar, Count ac) {
    if (cycles == 0) throw ValidationError("utilization of a zero-cycle run");
    return static_cast<double>(useful_macs) /
           (static_cast<double>(cycles) * static_cast<double>(ar) * static_cast<double>(ac));
}

double ws_utilization(const FoldPlan& plan, Count cycles, Count ar, Count ac) {
    return utilization_ratio(plan_useful_macs(plan), cycles, ar, ac);
}

}  // namespace pscale
