#pragma once

#include "pscale/error.hpp"

namespace pscale {

/// Scalar dB link-budget parameters for an n x n MZI mesh.
struct OpticalParams {
    double mzi_loss_db = 0.4;       // per MZI stage
    double crossing_loss_db = 0.05; // per waveguide crossing
    Count crossings_per_link = 0;
    double link_budget_db = 15.0;
    double margin_db = 0.0;

    bool operator==(const OpticalParams&) const = default;
};

/// Continuous-wave laser: on for every cycle of an inference.
struct LaserParams {
    double laser_power_w = 1.0;
    double cycle_time_s = 1e-9;

    bool operator==(const LaserParams&) const = default;
};

void validate(const OpticalParams& p);
void validate(const LaserParams& p);

/// Upper end of the max_monolithic_mesh scan.
inline constexpr Count kMeshScanLimit = 1024;

/// Passive 1:n split, 10 log10(n).
double fanout_loss_db(Count n);

/// n MZI stages deep plus the per-link crossings.
double mesh_loss_db(Count n, const OpticalParams& p);

/// mesh + fanout + margin.
double total_link_loss_db(Count n, const OpticalParams& p);

bool link_feasible(Count n, const OpticalParams& p);

/// Largest feasible n up to kMeshScanLimit. Throws ValidationError if even
/// n = 1 is infeasible.
Count max_monolithic_mesh(const OpticalParams& p);

double laser_energy_j(Count total_cycles, const LaserParams& lp);

}  // namespace pscale
