#include "wct/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace wct {

namespace {

std::pair<int, int> sphere_factors(int count, int n_az, int n_pol) {
    if (n_az > 0 && n_pol > 0) return {n_az, n_pol};
    // Default 2m x m factorization of the total count.
    int m = static_cast<int>(std::lround(std::sqrt(count / 2.0)));
    if (2 * m * m != count)
        throw std::invalid_argument("sphere direction count is not of the form 2m^2");
    return {2 * m, m};
}

std::vector<Scenario> build_scenarios() {
    std::vector<Scenario> v;
    auto add = [&](const std::string& name, const std::string& summary, RunConfig cfg) {
        cfg.name = name;
        v.push_back({name, summary, std::move(cfg)});
    };

    RunConfig c2;  // 2D cone, circle
    c2.n = 2;
    c2.k = 1;
    c2.kind = DataKind::cone;
    c2.geometry = {GeometryKind::circle, 1.0, 256, 0, 0};
    c2.axes_count = 400;
    c2.psi_count = 90;
    c2.grid_size = 256;
    add("fig3", "2D cone k=1, 256 circle vertices, 400 axes, 90 openings, 256^2 grid", c2);

    RunConfig c2sq = c2;
    c2sq.geometry = {GeometryKind::square, 2.0, 256, 0, 0};
    add("fig4", "2D cone k=1, 256 square-boundary vertices, 400 axes, 90 openings", c2sq);

    RunConfig c2n = c2;
    c2n.noise = 0.05;
    c2n.smooth = true;
    add("fig5", "fig3 with 5% Gaussian noise on the cone data", c2n);

    RunConfig c3;  // 3D cone, sphere
    c3.n = 3;
    c3.k = 0;
    c3.kind = DataKind::cone;
    c3.geometry = {GeometryKind::sphere, 1.0, 1800, 60, 30};
    c3.axes_count = 1800;
    c3.psi_count = 200;
    c3.n_phi = 360;
    c3.grid_size = 90;
    add("fig8", "3D cone k=0, 1800 sphere vertices, 1800 axes, 200 openings, 90^2 planes", c3);

    RunConfig c3k2 = c3;
    c3k2.k = 2;
    add("fig10", "3D cone k=2, same sampling as fig8", c3k2);

    RunConfig c3n = c3k2;
    c3n.noise = 0.05;
    c3n.smooth = true;
    add("fig12", "fig10 with 5% Gaussian noise on the cone data", c3n);

    RunConfig b3;  // 3D divergent beam, sphere
    b3.n = 3;
    b3.k = 1;
    b3.kind = DataKind::beam;
    b3.geometry = {GeometryKind::sphere, 1.0, 1800, 60, 30};
    b3.axes_count = 1800;
    b3.dir_count = 30000;
    b3.grid_size = 90;
    add("fig13", "3D beam k=1, 1800 sphere sources, 30000 ray directions, 90^2 planes", b3);

    RunConfig b3k2 = b3;
    b3k2.k = 2;
    add("fig15", "3D beam k=2, same sampling as fig13", b3k2);

    return v;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> table = build_scenarios();
    return table;
}

RunConfig scenario_config(const std::string& name) {
    for (const auto& s : scenarios())
        if (s.name == name) return s.config;
    throw std::invalid_argument("unknown scenario: " + name);
}

Phantom run_phantom(const RunConfig& cfg) {
    return cfg.n == 2 ? two_disk_phantom_2d() : ball_phantom_3d();
}

VertexSet run_vertices(const RunConfig& cfg) { return make_vertex_set(cfg.geometry); }

DirectionGrid run_axes(const RunConfig& cfg) {
    if (cfg.n == 2) return make_circle_directions(cfg.axes_count);
    auto [az, pol] = sphere_factors(cfg.axes_count, 0, 0);
    return make_sphere_directions_product(az, pol);
}

DirectionGrid run_beam_directions(const RunConfig& cfg) {
    if (cfg.n == 2) return make_circle_directions(cfg.dir_count);
    return make_sphere_directions_spiral(cfg.dir_count);
}

std::vector<double> run_psi(const RunConfig& cfg) { return make_psi_grid(cfg.psi_count); }

SGrid run_s_grid(const RunConfig& cfg) {
    SGrid g;
    g.count = cfg.s_bins;
    g.s_max = run_vertices(cfg).max_reach();
    return g;
}

std::vector<ImageGrid> run_outputs(const RunConfig& cfg) {
    const int m = cfg.grid_size;
    if (cfg.n == 2)
        return {ImageGrid::make(2, {m, m, 1}, {-1, -1, 0}, {1, 1, 0})};
    if (cfg.full_volume)
        return {ImageGrid::make(3, {m, m, m}, {-1, -1, -1}, {1, 1, 1})};
    return {
        ImageGrid::make(3, {1, m, m}, {0, -1, -1}, {0, 1, 1}),        // x = 0
        ImageGrid::make(3, {m, 1, m}, {-1, 0, -1}, {1, 0, 1}),        // y = 0
        ImageGrid::make(3, {m, m, 1}, {-1, -1, 0.25}, {1, 1, 0.25}),  // z = 0.25
    };
}

ReconConfig to_recon_config(const RunConfig& cfg) {
    ReconConfig rc;
    rc.n = cfg.n;
    rc.k = cfg.k;
    rc.kind = cfg.kind;
    rc.phantom = run_phantom(cfg);
    rc.s_grid = run_s_grid(cfg);
    // The 3D scattered assemblies carry fit jitter that the higher
    // s-derivatives amplify; a few binomial passes on G suppress it. The 2D
    // pipeline only differentiates once and loses edge accuracy to the blur,
    // so noiseless 2D runs stay unsmoothed.
    int auto_passes = cfg.n == 2 ? (cfg.noise > 0.0 ? 4 : 0)
                                 : 6 + (cfg.noise > 0.0 ? 2 : 0);
    if (cfg.smooth && auto_passes == 0) auto_passes = 1;
    rc.smooth_passes = cfg.smooth_passes > 0 ? cfg.smooth_passes : auto_passes;
    rc.smooth = rc.smooth_passes > 0;
    rc.max_per_bin = cfg.noise > 0.0 ? 0 : cfg.max_per_bin;
    if (cfg.kind == DataKind::beam) rc.beam_axes = run_axes(cfg);
    rc.noise_level = 0.0;  // the CLI applies noise when reading the sinogram
    rc.noise_seed = cfg.seed;
    rc.outputs = run_outputs(cfg);
    return rc;
}

nlohmann::json run_config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["name"] = cfg.name;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["kind"] = cfg.kind == DataKind::cone ? "cone"
                                           : (cfg.kind == DataKind::beam ? "beam" : "radon");
    j["geometry"] = {{"kind", static_cast<int>(cfg.geometry.kind)},
                     {"size", cfg.geometry.size},
                     {"count", cfg.geometry.count},
                     {"n_azimuth", cfg.geometry.n_azimuth},
                     {"n_polar", cfg.geometry.n_polar}};
    j["axes_count"] = cfg.axes_count;
    j["psi_count"] = cfg.psi_count;
    j["n_phi"] = cfg.n_phi;
    j["dir_count"] = cfg.dir_count;
    j["grid_size"] = cfg.grid_size;
    j["full_volume"] = cfg.full_volume;
    j["noise"] = cfg.noise;
    j["seed"] = cfg.seed;
    j["smooth"] = cfg.smooth;
    j["smooth_passes"] = cfg.smooth_passes;
    j["s_bins"] = cfg.s_bins;
    j["max_per_bin"] = cfg.max_per_bin;
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.name = j.value("name", std::string("custom"));
    cfg.n = j.at("n").get<int>();
    cfg.k = j.at("k").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cone")
        cfg.kind = DataKind::cone;
    else if (kind == "beam")
        cfg.kind = DataKind::beam;
    else if (kind == "radon")
        cfg.kind = DataKind::radon;
    else
        throw std::invalid_argument("unknown data kind: " + kind);
    const auto& g = j.at("geometry");
    cfg.geometry.kind = static_cast<GeometryKind>(g.at("kind").get<int>());
    cfg.geometry.size = g.at("size").get<double>();
    cfg.geometry.count = g.at("count").get<int>();
    cfg.geometry.n_azimuth = g.value("n_azimuth", 0);
    cfg.geometry.n_polar = g.value("n_polar", 0);
    cfg.axes_count = j.value("axes_count", cfg.axes_count);
    cfg.psi_count = j.value("psi_count", cfg.psi_count);
    cfg.n_phi = j.value("n_phi", cfg.n_phi);
    cfg.dir_count = j.value("dir_count", cfg.dir_count);
    cfg.grid_size = j.value("grid_size", cfg.grid_size);
    cfg.full_volume = j.value("full_volume", false);
    cfg.noise = j.value("noise", 0.0);
    cfg.seed = j.value("seed", std::uint64_t{1234});
    cfg.smooth = j.value("smooth", false);
    cfg.smooth_passes = j.value("smooth_passes", 0);
    cfg.s_bins = j.value("s_bins", 129);
    cfg.max_per_bin = j.value("max_per_bin", 4);
    return cfg;
}

}  // namespace wct
