#include <doctest.h>

#include <cmath>

#include "wct/recon.hpp"
#include "wct/scenario.hpp"

using namespace wct;

namespace {

ReconConfig small_2d_config() {
    ReconConfig rc;
    rc.n = 2;
    rc.k = 1;
    rc.kind = DataKind::radon;
    rc.phantom = two_disk_phantom_2d();
    rc.s_grid = {1.0, 129};
    rc.outputs = {ImageGrid::make(2, {65, 65, 1}, {-1, -1, 0}, {1, 1, 0})};
    return rc;
}

}  // namespace

TEST_CASE("configuration validation enforces the supported combinations") {
    ReconConfig rc = small_2d_config();
    CHECK_NOTHROW(validate_config(rc));
    rc.kind = DataKind::cone;
    CHECK_NOTHROW(validate_config(rc));
    rc.k = 0;  // 2D cone inversion only covers weight 1
    CHECK_THROWS(validate_config(rc));
    rc.n = 3;
    CHECK_NOTHROW(validate_config(rc));
    rc.kind = DataKind::beam;  // 3D beam covers weights 1 and 2 only
    CHECK_THROWS(validate_config(rc));
    rc.k = 2;
    CHECK_NOTHROW(validate_config(rc));
    rc.outputs.clear();
    CHECK_THROWS(validate_config(rc));
}

TEST_CASE("backprojection of constant filtered data gives a constant image") {
    GTable t;
    t.s = make_s_grid(2.0, 17);  // wide enough that no sample falls outside
    auto img_descr = ImageGrid::make(2, {9, 9, 1}, {-1, -1, 0}, {1, 1, 0});

    t.axes = make_circle_directions(64);
    t.values.assign(static_cast<std::size_t>(64) * 17, 1.0);
    auto img2 = backproject(t, img_descr, 2, 1);
    for (double v : img2.values)
        CHECK(v == doctest::Approx(2 * kPi / (4 * kPi)).epsilon(1e-9));  // = 1/2

    GTable t3;
    t3.s = t.s;
    t3.axes = make_sphere_directions_product(16, 8);
    t3.values.assign(static_cast<std::size_t>(t3.axes.count()) * 17, 1.0);
    auto img_descr3 = ImageGrid::make(3, {5, 5, 5}, {-1, -1, -1}, {1, 1, 1});
    auto img3 = backproject(t3, img_descr3, 3, 0);
    for (double v : img3.values)
        CHECK(v == doctest::Approx(-4 * kPi / (8 * kPi * kPi)).epsilon(1e-6));
}

TEST_CASE("filter chain and backprojection are linear") {
    ReconConfig rc = small_2d_config();
    auto radon = radon_forward(rc.phantom, make_circle_directions(64), make_s_grid(1.3, 521));
    auto g = g_from_radon(radon, weight_h(2, 1), rc.s_grid);
    auto res1 = finish_from_g(g, rc);
    GTable g2 = g;
    for (double& v : g2.values) v *= 2.0;
    auto res2 = finish_from_g(g2, rc);
    for (size_t i = 0; i < res1.images[0].values.size(); ++i)
        CHECK(res2.images[0].values[i] ==
              doctest::Approx(2.0 * res1.images[0].values[i]).epsilon(1e-9).scale(1e-12));
}

TEST_CASE("oracle-path reconstruction recovers the phantom") {
    ReconConfig rc = small_2d_config();
    auto radon = radon_forward(rc.phantom, make_circle_directions(400), make_s_grid(1.3, 521));
    auto res = reconstruct(rc, radon);
    CHECK(res.metrics.rel_l2 < 0.12);
    // plateau values at the two disk centers
    const auto& img = res.images[0];
    double at_outer = img.at(32, 34, 0);   // (0, 0.06): annulus
    double at_inner = img.at(32, 45, 0);   // (0, 0.4): both disks
    CHECK(at_outer == doctest::Approx(-0.5).epsilon(0.2));
    CHECK(at_inner == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("small cone-path reconstruction matches the oracle path") {
    ReconConfig rc = small_2d_config();
    rc.kind = DataKind::cone;
    auto vs = make_circle_vertices(1.0, 256);
    auto axes = make_circle_directions(200);
    auto cone = cone_forward(rc.phantom, vs, axes, make_psi_grid(90), 1, 0);
    auto res = reconstruct(rc, cone);
    CHECK(res.metrics.rel_l2 < 0.25);

    ReconConfig rr = small_2d_config();
    auto radon = radon_forward(rc.phantom, axes, make_s_grid(1.3, 521));
    auto res_r = reconstruct(rr, radon);
    double dev = 0.0;
    for (size_t i = 0; i < res.images[0].values.size(); ++i)
        dev = std::max(dev, std::abs(res.images[0].values[i] - res_r.images[0].values[i]));
    CHECK(dev < 0.35);  // both paths see the same object
}

TEST_CASE("jump mask excludes a band around primitive boundaries") {
    Phantom ph = ball_phantom_3d();
    auto grid = rasterize(ph, ImageGrid::make(3, {1, 61, 61}, {0, -1, -1}, {0, 1, 1}));
    auto mask = jump_mask(grid, ph, 2.0 * grid.cell_size(1));
    // center of the ball and far corner are kept
    auto idx = [&](int iy, int iz) { return static_cast<std::size_t>(iy) * 61 + iz; };
    CHECK(mask[idx(30, 38)] == 1);  // (0, 0, 0.25), inside
    CHECK(mask[idx(2, 2)] == 1);    // far outside
    // a cell on the boundary |x - c| = r is masked out
    int iy_b = 30, iz_b = 0;
    double best = 1e9;
    for (int iz = 0; iz < 61; ++iz) {
        double d = std::abs((grid.cell_center(0, iy_b, iz) - ph.primitives[0].center).norm() -
                            ph.primitives[0].radius);
        if (d < best) { best = d; iz_b = iz; }
    }
    CHECK(mask[idx(iy_b, iz_b)] == 0);
}

TEST_CASE("metrics on crafted fields") {
    auto ref = rasterize(two_disk_phantom_2d(), ImageGrid::make(2, {33, 33, 1}, {-1, -1, 0}, {1, 1, 0}));
    std::vector<std::uint8_t> all(ref.size(), 1);
    auto m0 = compute_metrics(ref, ref, all);
    CHECK(m0.rel_l2 == 0.0);
    CHECK(m0.max_abs_err == 0.0);

    auto off = ref;
    for (double& v : off.values) v += 0.1;
    auto m1 = compute_metrics(off, ref, all);
    CHECK(m1.max_abs_err == doctest::Approx(0.1));
    double ref2 = 0.0;
    for (double v : ref.values) ref2 += v * v;
    CHECK(m1.rel_l2 == doctest::Approx(0.1 * std::sqrt(ref.size() / ref2)));

    std::vector<std::uint8_t> none(ref.size(), 0);
    CHECK_THROWS(compute_metrics(off, ref, none));
}

TEST_CASE("profiles extract axis rows and the diagonal") {
    auto img = rasterize(two_disk_phantom_2d(), ImageGrid::make(2, {65, 65, 1}, {-1, -1, 0}, {1, 1, 0}));
    auto py = profile(img, ProfileAxis::y, {0.0, 0.0});
    REQUIRE(py.t.size() == 65);
    for (size_t j = 0; j < py.t.size(); ++j)
        CHECK(py.value[j] == img.at(32, static_cast<int>(j), 0));
    auto pd = profile(img, ProfileAxis::diagonal, {0.0, 0.0});
    REQUIRE(pd.t.size() == 65);
    CHECK(pd.t.front() < 0.0);
    CHECK(pd.t.back() > 0.0);
    CHECK(std::abs(pd.t.back() - std::sqrt(2.0)) < 0.1);
}

TEST_CASE("noisy reconstruction is deterministic in the seed") {
    ReconConfig rc = small_2d_config();
    rc.kind = DataKind::cone;
    rc.noise_level = 0.05;
    rc.noise_seed = 42;
    rc.smooth = true;
    rc.smooth_passes = 4;
    auto vs = make_circle_vertices(1.0, 128);
    auto axes = make_circle_directions(100);
    auto cone = cone_forward(rc.phantom, vs, axes, make_psi_grid(45), 1, 0);
    auto r1 = reconstruct(rc, cone);
    auto r2 = reconstruct(rc, cone);
    CHECK(r1.images[0].values == r2.images[0].values);
    rc.noise_seed = 43;
    auto r3 = reconstruct(rc, cone);
    CHECK(r1.images[0].values != r3.images[0].values);
}
