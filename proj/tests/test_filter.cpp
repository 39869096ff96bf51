#include <doctest.h>

#include <cmath>
#include <vector>

#include "wct/filter.hpp"

using namespace wct;

namespace {

GTable make_table(int n_axes, double s_max, int count,
                  const std::function<double(double)>& f) {
    GTable t;
    t.axes = make_circle_directions(n_axes);
    t.s = make_s_grid(s_max, count);
    t.values.resize(static_cast<std::size_t>(n_axes) * count);
    t.counts.assign(t.values.size(), 1);
    for (int a = 0; a < n_axes; ++a)
        for (int j = 0; j < count; ++j) t.row(a)[j] = f(t.s[j]);
    return t;
}

}  // namespace

TEST_CASE("kernel classification by dimension and weight") {
    auto s21 = weight_h(2, 1);
    CHECK(s21.kind == KernelKind::sign_type);
    CHECK(s21.eval(0.3) == doctest::Approx(0.5));
    CHECK(s21.eval(-0.3) == doctest::Approx(-0.5));

    auto s32 = weight_h(3, 2);
    CHECK(s32.kind == KernelKind::sign_type);
    CHECK(s32.eval(0.7) == doctest::Approx(0.5));

    auto a22 = weight_h(2, 2);
    CHECK(a22.kind == KernelKind::abs_type);
    CHECK(a22.eval(-0.4) == doctest::Approx(0.2));  // |t|/2

    auto d20 = weight_h(2, 0);
    CHECK(d20.kind == KernelKind::delta_derivative);
    CHECK(d20.delta_order == 0);

    auto d31 = weight_h(3, 1);
    CHECK(d31.kind == KernelKind::delta_derivative);
    CHECK(d31.delta_order == 0);

    auto d30 = weight_h(3, 0);
    CHECK(d30.kind == KernelKind::delta_derivative);
    CHECK(d30.delta_order == 1);

    CHECK_THROWS(weight_h(4, 0));
}

TEST_CASE("finite differences are exact on low-degree polynomials") {
    auto cubic = [](double s) { return s * s * s - 2 * s * s + 0.5 * s - 1; };
    auto t = make_table(2, 1.0, 65, cubic);

    auto d1 = derivative_s(t, 1);
    auto d2 = derivative_s(t, 2);
    auto d3 = derivative_s(t, 3);
    double h = t.s[1] - t.s[0];
    for (int j = 0; j < 65; ++j) {
        double s = t.s[j];
        // first derivative carries the O(h^2 f''') truncation term
        CHECK(std::abs(d1.row(0)[j] - (3 * s * s - 4 * s + 0.5)) < 4.0 * h * h);
        CHECK(d2.row(0)[j] == doctest::Approx(6 * s - 4).epsilon(1e-9).scale(1.0));
        CHECK(d3.row(0)[j] == doctest::Approx(6.0).epsilon(1e-8).scale(1.0));
    }
    // quadratic input: first derivative exact everywhere, including the ends
    auto q = make_table(1, 1.0, 33, [](double s) { return 2 * s * s - s + 3; });
    auto dq = derivative_s(q, 1);
    for (int j = 0; j < 33; ++j)
        CHECK(dq.row(0)[j] == doctest::Approx(4 * q.s[j] - 1).epsilon(1e-10).scale(1.0));
}

TEST_CASE("discrete Hilbert transform on reference pairs") {
    // H[cos](s) = sin(s) away from the truncation boundary
    double w = 8 * kPi;
    auto t = make_table(1, 1.0, 513, [&](double s) { return std::cos(w * s); });
    auto ht = hilbert(t);
    for (int j = 0; j < 513; ++j)
        if (std::abs(t.s[j]) < 0.5)
            CHECK(std::abs(ht.row(0)[j] - std::sin(w * t.s[j])) < 0.05);

    // H[1/(1+s^2)](s) = s/(1+s^2), testable on a wide grid
    auto u = make_table(1, 40.0, 2049, [](double s) { return 1.0 / (1.0 + s * s); });
    auto hu = hilbert(u);
    for (int j = 0; j < 2049; ++j)
        if (std::abs(u.s[j]) < 5.0) {
            double s = u.s[j];
            CHECK(std::abs(hu.row(0)[j] - s / (1.0 + s * s)) < 0.02);
        }
}

TEST_CASE("binomial smoothing is conservative and symmetric") {
    auto c = make_table(1, 1.0, 33, [](double) { return 2.5; });
    auto sc = smooth_binomial(c, 3);
    for (int j = 0; j < 33; ++j) CHECK(sc.row(0)[j] == doctest::Approx(2.5).epsilon(1e-12));

    GTable spike = make_table(1, 1.0, 33, [](double) { return 0.0; });
    spike.row(0)[16] = 1.0;
    auto ss = smooth_binomial(spike, 1);
    CHECK(ss.row(0)[16] == doctest::Approx(6.0 / 16));
    CHECK(ss.row(0)[15] == doctest::Approx(4.0 / 16));
    CHECK(ss.row(0)[17] == doctest::Approx(4.0 / 16));
    CHECK(ss.row(0)[14] == doctest::Approx(1.0 / 16));
    double sum = 0.0;
    for (int j = 0; j < 33; ++j) sum += ss.row(0)[j];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));  // mass preserved away from ends
}

TEST_CASE("table sampling interpolates linearly and vanishes outside") {
    auto t = make_table(1, 1.0, 5, [](double s) { return s; });  // s = -1,-.5,0,.5,1
    CHECK(t.sample(0, 0.25) == doctest::Approx(0.25));
    CHECK(t.sample(0, -0.7) == doctest::Approx(-0.7));
    CHECK(t.sample(0, 1.5) == 0.0);
    CHECK(t.sample(0, -1.5) == 0.0);
    CHECK(t.max_abs() == doctest::Approx(1.0));
}

TEST_CASE("plane data from the radon oracle path") {
    Phantom ph = ball_phantom_3d();
    auto axes = make_sphere_directions_product(8, 4);
    auto radon = radon_forward(ph, axes, make_s_grid(1.3, 521));
    SGrid grid{1.0, 129};

    // identity kernel: G equals the plane integral itself
    auto g_id = g_from_radon(radon, weight_h(3, 1), grid);
    for (int a = 0; a < axes.count(); ++a)
        for (int j = 0; j < 129; ++j)
            CHECK(std::abs(g_id.row(a)[j] -
                           radon_analytic(ph, axes.nodes[a], g_id.s[j])) < 2e-3);

    // derivative kernel: G = d/ds of the plane integral
    auto g_d = g_from_radon(radon, weight_h(3, 0), grid);
    const auto& prim = ph.primitives[0];
    for (int a = 0; a < axes.count(); ++a) {
        double c = prim.center.dot(axes.nodes[a]);
        for (int j = 0; j < 129; ++j) {
            double d = g_d.s[j] - c;
            double expect = std::abs(d) < prim.radius ? -2.0 * kPi * prim.density * d : 0.0;
            if (std::abs(std::abs(d) - prim.radius) > 0.05)  // away from the kink
                CHECK(std::abs(g_d.row(a)[j] - expect) < 0.05);
        }
    }
}

TEST_CASE("cone and radon paths assemble the same plane data (2D)") {
    Phantom ph = two_disk_phantom_2d();
    auto vs = make_circle_vertices(1.0, 256);
    auto axes = make_circle_directions(64);
    auto spec = weight_h(2, 1);
    SGrid grid{1.0, 129};

    auto cone = cone_forward(ph, vs, axes, make_psi_grid(180), 1, 0);
    auto g_cone = g_from_cone(cone, spec, grid);
    auto radon = radon_forward(ph, axes, make_s_grid(1.3, 521));
    auto g_radon = g_from_radon(radon, spec, grid);

    double mx = g_radon.max_abs(), dev = 0.0;
    for (int a = 0; a < axes.count(); ++a)
        for (int j = 0; j < 129; ++j)
            if (std::abs(g_radon.s[j]) <= 0.8)
                dev = std::max(dev, std::abs(g_cone.row(a)[j] - g_radon.row(a)[j]));
    CHECK(dev < 0.02 * mx);
    CHECK(g_cone.max_bin_std < 0.01 * mx);
}
