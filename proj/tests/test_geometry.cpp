#include <doctest.h>

#include <cmath>

#include "wct/geometry.hpp"

using namespace wct;

TEST_CASE("circle vertices lie on the circle with uniform spacing") {
    auto vs = make_circle_vertices(1.5, 64);
    REQUIRE(vs.count() == 64);
    CHECK(vs.dim == 2);
    double chord = 2.0 * 1.5 * std::sin(kPi / 64);
    for (int i = 0; i < vs.count(); ++i) {
        CHECK(vs.points[i].norm() == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(vs.tangent1[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
        // tangent is perpendicular to the radius
        CHECK(std::abs(vs.points[i].dot(vs.tangent1[i])) < 1e-12);
    }
    CHECK(vs.max_spacing() == doctest::Approx(chord).epsilon(1e-9));
    CHECK(vs.max_reach() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("square vertices cover the boundary") {
    auto vs = make_square_vertices(2.0, 256);
    REQUIRE(vs.count() == 256);
    int corners = 0;
    for (int i = 0; i < vs.count(); ++i) {
        const Vec3& p = vs.points[i];
        double m = std::max(std::abs(p.x), std::abs(p.y));
        CHECK(m == doctest::Approx(1.0).epsilon(1e-12));  // on the boundary
        if (std::abs(std::abs(p.x) - 1.0) < 1e-12 && std::abs(std::abs(p.y) - 1.0) < 1e-12)
            ++corners;
        CHECK(vs.tangent1[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(corners == 4);
    CHECK(vs.max_reach() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("sphere vertices form the requested mesh with orthonormal tangents") {
    auto vs = make_sphere_vertices(1.0, 12, 6);
    REQUIRE(vs.count() == 72);
    CHECK(vs.dim == 3);
    CHECK(vs.tangent_dim == 2);
    for (int i = 0; i < vs.count(); ++i) {
        CHECK(vs.points[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(vs.points[i].z) < 1.0);  // poles excluded
        const Vec3 &t1 = vs.tangent1[i], &t2 = vs.tangent2[i];
        CHECK(t1.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t2.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(t1.dot(t2)) < 1e-12);
        CHECK(std::abs(t1.dot(vs.points[i])) < 1e-12);
        CHECK(std::abs(t2.dot(vs.points[i])) < 1e-12);
    }
}

TEST_CASE("vertex set factory dispatches on the descriptor") {
    auto c = make_vertex_set({GeometryKind::circle, 1.0, 32, 0, 0});
    CHECK(c.kind == GeometryKind::circle);
    CHECK(c.count() == 32);
    auto s = make_vertex_set({GeometryKind::square, 2.0, 64, 0, 0});
    CHECK(s.kind == GeometryKind::square);
    auto sp = make_vertex_set({GeometryKind::sphere, 1.0, 72, 12, 6});
    CHECK(sp.count() == 72);
}

TEST_CASE("direction grids are quadrature rules on the unit sphere") {
    auto c = make_circle_directions(128);
    CHECK(c.weight_sum() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    auto p = make_sphere_directions_product(24, 12);
    CHECK(p.weight_sum() == doctest::Approx(4.0 * kPi).epsilon(1e-9));
    auto sp = make_sphere_directions_spiral(500);
    CHECK(sp.weight_sum() == doctest::Approx(4.0 * kPi).epsilon(1e-12));

    for (const auto* g : {&c, &p, &sp}) {
        Vec3 mean{};
        double quad = 0.0;  // integral of z^2, should be |S^{n-1}|/n
        for (int i = 0; i < g->count(); ++i) {
            CHECK(g->nodes[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
            mean += g->weights[i] * g->nodes[i];
            quad += g->weights[i] * g->nodes[i].z * g->nodes[i].z;
        }
        CHECK(mean.norm() < 1e-6 * g->weight_sum());
        double expect = g->dim == 2 ? 0.0 : 4.0 * kPi / 3.0;
        CHECK(quad == doctest::Approx(expect).epsilon(0.02).scale(1.0));
    }
}

TEST_CASE("completeness check passes for enclosing circle and sphere") {
    auto circ = make_circle_vertices(1.0, 256);
    auto rep = tuy_check(circ, {{0, 0, 0}, 0.8}, 64, 64, 1e-3, 7);
    CHECK(rep.satisfied);
    CHECK(rep.witness_fraction == doctest::Approx(1.0));

    auto sph = make_sphere_vertices(1.0, 60, 30);
    auto rep3 = tuy_check(sph, {{0, 0, 0.25}, 0.5}, 32, 64, 1e-3, 7);
    CHECK(rep3.satisfied);
}

TEST_CASE("completeness check fails for a line segment") {
    VertexSet seg;
    seg.dim = 2;
    seg.kind = GeometryKind::custom;
    for (int i = 0; i < 64; ++i) {
        seg.points.push_back({-1.0 + 2.0 * i / 63.0, 1.0, 0.0});
        seg.tangent1.push_back({1.0, 0.0, 0.0});
        seg.tangent2.push_back({0.0, 0.0, 0.0});
    }
    auto rep = tuy_check(seg, {{0, 0, 0}, 0.5}, 64, 64, 1e-3, 7);
    CHECK_FALSE(rep.satisfied);
    CHECK(rep.witness_fraction < 1.0);
    // the reported unwitnessed plane really has no nearby vertex
    bool found = false;
    for (const auto& u : seg.points)
        if (std::abs(rep.worst_theta.dot(rep.worst_x - u)) < 0.5 * seg.max_spacing())
            found = true;
    CHECK_FALSE(found);
}
