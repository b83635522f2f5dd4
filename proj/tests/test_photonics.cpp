#include <doctest.h>

#include "pscale/photonics.hpp"

using namespace pscale;

TEST_CASE("fanout_loss_db") {
    CHECK(fanout_loss_db(1) == 0.0);
    CHECK(fanout_loss_db(4) == doctest::Approx(6.0206).epsilon(1e-4));
    CHECK(fanout_loss_db(16) == doctest::Approx(12.0412).epsilon(1e-4));
    for (Count a = 1; a <= 64; ++a)
        for (Count b = 1; b <= 64; b += 7) CHECK(std::abs(fanout_loss_db(a * b) - fanout_loss_db(a) - fanout_loss_db(b)) < 1e-9);
    CHECK_THROWS_AS(fanout_loss_db(0), ValidationError);
}

TEST_CASE("mesh_loss_db") {
    OpticalParams p;
    CHECK(mesh_loss_db(16, p) == doctest::Approx(6.4));
    CHECK(mesh_loss_db(1, p) == doctest::Approx(0.4));
    p.mzi_loss_db = 0.5;
    p.crossing_loss_db = 0.1;
    p.crossings_per_link = 10;
    CHECK(mesh_loss_db(4, p) == doctest::Approx(3.0));
}

TEST_CASE("link_feasible") {
    const OpticalParams defaults;
    CHECK(total_link_loss_db(4, defaults) == doctest::Approx(1.6 + 6.0206).epsilon(1e-4));
    CHECK(link_feasible(4, defaults));
    CHECK(total_link_loss_db(16, defaults) == doctest::Approx(18.4412).epsilon(1e-4));
    CHECK_FALSE(link_feasible(16, defaults));
    OpticalParams tight;
    tight.link_budget_db = 0.4;
    CHECK(link_feasible(1, tight));
    tight.margin_db = 0.1;
    CHECK_FALSE(link_feasible(1, tight));
}

TEST_CASE("max_monolithic_mesh") {
    const OpticalParams defaults;
    const Count n = max_monolithic_mesh(defaults);
    CHECK(n >= 4);
    CHECK(n < 16);
    CHECK(link_feasible(n, defaults));
    CHECK_FALSE(link_feasible(n + 1, defaults));
    CHECK(n == 11);  // 4.4 + 10.41 = 14.81 dB; n = 12 gives 15.59 dB

    // 4 MZIs + 1:4 fanout total 7.6206 dB, so the boundary sits just above it.
    OpticalParams edge;
    edge.link_budget_db = 7.63;
    CHECK(max_monolithic_mesh(edge) == 4);
    edge.link_budget_db = 7.62;
    CHECK(max_monolithic_mesh(edge) == 3);

    OpticalParams lossless;
    lossless.mzi_loss_db = 0.0;
    lossless.link_budget_db = 30.0;
    CHECK(max_monolithic_mesh(lossless) == 1000);
    lossless.link_budget_db = 40.0;
    CHECK(max_monolithic_mesh(lossless) == kMeshScanLimit);

    OpticalParams hopeless;
    hopeless.mzi_loss_db = 2.0;
    hopeless.link_budget_db = 1.0;
    CHECK_THROWS_AS(max_monolithic_mesh(hopeless), ValidationError);
}

TEST_CASE("max_monolithic_mesh monotonicity") {
    Count prev = kMeshScanLimit;
    for (double mzi = 0.0; mzi <= 1.0; mzi += 0.05) {
        OpticalParams p;
        p.mzi_loss_db = mzi;
        const Count n = max_monolithic_mesh(p);
        CHECK(n <= prev);
        prev = n;
    }
    prev = 1;
    for (double budget = 1.0; budget <= 30.0; budget += 0.5) {
        OpticalParams p;
        p.link_budget_db = budget;
        const Count n = max_monolithic_mesh(p);
        CHECK(n >= prev);
        prev = n;
    }
    OpticalParams p;
    for (Count n = 1; n < 200; ++n) {
        CHECK(mesh_loss_db(n + 1, p) > mesh_loss_db(n, p));
        CHECK(total_link_loss_db(n + 1, p) > total_link_loss_db(n, p));
    }
}

TEST_CASE("laser_energy_j") {
    const LaserParams lp{1.0, 1e-9};
    CHECK(laser_energy_j(0, lp) == 0.0);
    CHECK(laser_energy_j(1'000'000, lp) == doctest::Approx(1e-3));
    for (const LaserParams& p : {LaserParams{1.0, 1e-9}, LaserParams{0.37, 3.3e-10}, LaserParams{12.5, 7e-11}}) {
        for (Count k : {1ULL, 3ULL, 977ULL, 123'456'789ULL, 1ULL << 40}) CHECK(laser_energy_j(2 * k, p) == 2 * laser_energy_j(k, p));
    }
    CHECK_THROWS_AS(validate(LaserParams{0.0, 1e-9}), ValidationError);
}
