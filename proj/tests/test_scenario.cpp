#include <doctest.h>

#include <cmath>

#include "wct/scenario.hpp"

using namespace wct;

TEST_CASE("the scenario table exposes the reference experiments") {
    for (const char* name : {"fig3", "fig4", "fig5", "fig8", "fig10", "fig12", "fig13", "fig15"})
        CHECK_NOTHROW(scenario_config(name));
    CHECK_THROWS(scenario_config("fig99"));

    auto f3 = scenario_config("fig3");
    CHECK(f3.n == 2);
    CHECK(f3.k == 1);
    CHECK(f3.geometry.count == 256);
    CHECK(f3.axes_count == 400);
    CHECK(f3.psi_count == 90);

    auto f13 = scenario_config("fig13");
    CHECK(f13.kind == DataKind::beam);
    CHECK(f13.dir_count == 30000);
    CHECK(f13.geometry.count == 1800);
}

TEST_CASE("scenario pieces are mutually consistent") {
    for (const auto& sc : scenarios()) {
        const auto& cfg = sc.config;
        auto vs = run_vertices(cfg);
        CHECK(vs.count() == cfg.geometry.count);
        auto axes = run_axes(cfg);
        CHECK(axes.count() == cfg.axes_count);
        auto grid = run_s_grid(cfg);
        CHECK(grid.s_max == doctest::Approx(vs.max_reach()));
        auto ph = run_phantom(cfg);
        CHECK(ph.dim == cfg.n);
        CHECK(ph.support_radius() < grid.s_max + 1e-12);
        auto rc = to_recon_config(cfg);
        CHECK_NOTHROW(validate_config(rc));
        int expect = cfg.n == 2 ? (cfg.noise > 0.0 ? 4 : 0) : 6 + (cfg.noise > 0.0 ? 2 : 0);
        CHECK(rc.smooth_passes == expect);
        CHECK(rc.smooth == (expect > 0));
    }
}

TEST_CASE("run configurations survive the JSON round-trip") {
    for (const char* name : {"fig4", "fig12", "fig15"}) {
        auto cfg = scenario_config(name);
        auto back = run_config_from_json(run_config_to_json(cfg));
        CHECK(back.name == cfg.name);
        CHECK(back.n == cfg.n);
        CHECK(back.k == cfg.k);
        CHECK(back.kind == cfg.kind);
        CHECK(back.geometry.kind == cfg.geometry.kind);
        CHECK(back.geometry.count == cfg.geometry.count);
        CHECK(back.axes_count == cfg.axes_count);
        CHECK(back.psi_count == cfg.psi_count);
        CHECK(back.dir_count == cfg.dir_count);
        CHECK(back.noise == cfg.noise);
        CHECK(back.seed == cfg.seed);
        CHECK(back.smooth_passes == cfg.smooth_passes);
        CHECK(back.s_bins == cfg.s_bins);
        CHECK(back.max_per_bin == cfg.max_per_bin);
    }
}
