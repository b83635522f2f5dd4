#include <doctest.h>

#include "oracles.hpp"
#include "pscale/sweep.hpp"

using namespace pscale;

namespace {

SweepConfig small_config(std::vector<Count> pe_counts, Count tile) {
    SweepConfig c;
    c.pe_counts = std::move(pe_counts);
    c.tile_dim = tile;
    c.workloads = {"inline"};
    return c;
}

Workload one_layer(LayerShape l) { return {"synthetic", {std::move(l)}}; }

}  // namespace

TEST_CASE("single synthetic layer on 4 PEs with 1x1 tiles") {
    const LayerShape l{"L1", 5, 5, 3, 3, 2, 4, 1, 0};
    const auto config = small_config({4}, 1);
    const auto res = run_sweep(config, {one_layer(l)});
    REQUIRE(res.workloads.size() == 1);
    const auto& w = res.workloads[0];
    REQUIRE(w.topologies.size() == 3);
    const std::vector<GridTopology> expected{{1, 4, 1}, {2, 2, 1}, {4, 1, 1}};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(w.topologies[i].topology == expected[i]);
        const auto direct = evaluate_layer(l, expected[i], 0, config.buffers);
        CHECK(w.topologies[i].layers.at(0) == direct);
        CHECK(w.topologies[i].total_cycles == direct.cycles);
        CHECK(w.topologies[i].util_mac == direct.utilization);
        CHECK(w.topologies[i].util_mean == direct.utilization);
    }
    REQUIRE(w.scales.size() == 1);
    CHECK(w.scales[0].eta == 1.0);
}

TEST_CASE("preset sweeps cover every divisor topology") {
    SweepConfig c;
    c.workloads = {"preset:alphagozero"};
    c.pe_counts = {512};
    const auto res = run_sweep(c);
    CHECK(res.workloads[0].topologies.size() == 10);
    CHECK(oracle::divisor_count(512) == 10);

    c.workloads = {"preset:googlenet", "preset:mobilenet"};
    c.pe_counts = {128, 1024};
    const auto g = run_sweep(c);
    for (const auto& w : g.workloads) {
        CHECK(w.topologies.size() == oracle::divisor_count(128) + oracle::divisor_count(1024));
        REQUIRE(w.scales.size() == 2);
        CHECK(w.scales[1].pe_count == 1024);
        CHECK(w.scales[1].eta > 0.0);
        CHECK(w.scales[1].eta ==
              scaling_efficiency({128, w.scales[0].best_cycles, 0}, {1024, w.scales[1].best_cycles, 0}));
    }
}

TEST_CASE("parallel evaluation equals serial evaluation") {
    SweepConfig c;
    c.workloads = {"preset:resnet18", "preset:mobilenet"};
    c.pe_counts = {16, 64, 96};
    c.interposer_delay = 2;
    c.buffers = {50'000, 20'000, 100'000, 1};
    CHECK(run_sweep(c) == run_sweep_serial(c));
}

TEST_CASE("utilization wall") {
    // Large t, exact tiling at every scale: near-ideal scaling.
    const LayerShape ideal{"big", 100, 100, 1, 1, 16, 16, 1, 0};
    auto res = run_sweep(small_config({1, 4, 16}, 1), {one_layer(ideal)});
    auto wall = detect_utilization_wall(res, "synthetic", 0.7);
    REQUIRE(wall.points.size() == 3);
    for (const auto& p : wall.points) {
        CHECK(p.eta > 0.99);
        CHECK_FALSE(p.below_threshold);
    }
    CHECK_FALSE(wall.wall_at.has_value());

    // Fits one chiplet: adding a PE gains nothing.
    const LayerShape tiny{"tiny", 3, 3, 1, 1, 4, 4, 1, 0};
    res = run_sweep(small_config({1, 2}, 4), {one_layer(tiny)});
    wall = detect_utilization_wall(res, "synthetic", 0.7);
    CHECK(wall.points[1].eta == 0.5);
    CHECK(wall.points[1].below_threshold);
    CHECK(wall.wall_at == 2);

    CHECK_THROWS_AS(detect_utilization_wall(res, "missing"), LookupError);
    const auto single = run_sweep(small_config({4}, 1), {one_layer(tiny)});
    CHECK_THROWS_AS(detect_utilization_wall(single, "synthetic"), ValidationError);
}

TEST_CASE("symmetric rule") {
    const LayerShape tiny{"tiny", 3, 3, 1, 1, 4, 4, 1, 0};
    auto res = run_sweep(small_config({1}, 4), {one_layer(tiny)});
    auto rule = detect_symmetric_rule(res, "synthetic", 1);
    CHECK(rule.best == GridTopology{1, 1, 4});
    CHECK(rule.util_ratio_best_over_worst_linear == 1.0);
    CHECK(rule.traffic_ratio_linear_over_best == 1.0);

    // Every topology of 16 PEs runs the layer in one fold with equal cycles;
    // the tie goes to the square grid.
    res = run_sweep(small_config({16}, 4), {one_layer(tiny)});
    rule = detect_symmetric_rule(res, "synthetic", 16);
    CHECK(rule.best == GridTopology{4, 4, 4});
    for (const auto& t : res.workloads[0].topologies) CHECK(t.useful_macs == layer_macs(tiny));
    CHECK_THROWS_AS(detect_symmetric_rule(res, "synthetic", 32), LookupError);
}

TEST_CASE("errors") {
    SweepConfig c;
    c.workloads = {"/nonexistent/net.csv"};
    CHECK_THROWS_WITH_AS(run_sweep(c), doctest::Contains("/nonexistent/net.csv"), IoError);
    c.workloads = {"preset:resnet18", "preset:resnet18"};
    c.pe_counts = {4};
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
    c.pe_counts = {};
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
    const SweepResult empty;
    CHECK_THROWS_AS(empty.workload("x"), LookupError);
}
