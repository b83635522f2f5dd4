#include "pscale/photonics.hpp"

#include <cmath>

namespace pscale {

void validate(const OpticalParams& p) {
    if (!(p.mzi_loss_db >= 0) || !(p.crossing_loss_db >= 0) || !(p.margin_db >= 0))
        throw ValidationError("optical losses and margin must be >= 0 dB");
    if (!(p.link_budget_db > 0)) throw ValidationError("optical.link_budget_db must be > 0");
}

void validate(const LaserParams& p) {
    if (!(p.laser_power_w > 0) || !(p.cycle_time_s > 0))
        throw ValidationError("laser power and cycle time must be > 0");
}

double fanout_loss_db(Count n) {
    if (n == 0) throw ValidationError("fanout of zero ports");
    return 10.0 * std::log10(static_cast<double>(n));
}

double mesh_loss_db(Count n, const OpticalParams& p) {
    if (n == 0) throw ValidationError("mesh size must be >= 1");
    return static_cast<double>(n) * p.mzi_loss_db + static_cast<double>(p.crossings_per_link) * p.crossing_loss_db;
}

double total_link_loss_db(Count n, const OpticalParams& p) {
    return mesh_loss_db(n, p) + fanout_loss_db(n) + p.margin_db;
}

bool link_feasible(Count n, const OpticalParams& p) { return total_link_loss_db(n, p) <= p.link_budget_db; }

Count max_monolithic_mesh(const OpticalParams& p) {
    if (!link_feasible(1, p)) throw ValidationError("no feasible mesh size: n = 1 already exceeds the link budget");
    Count best = 1;
    for (Count n = 2; n <= kMeshScanLimit && link_feasible(n, p); ++n) best = n;
    return best;
}

double laser_energy_j(Count total_cycles, const LaserParams& lp) {
    return (lp.laser_power_w * lp.cycle_time_s) * static_cast<double>(total_cycles);
}

}  // namespace pscale
