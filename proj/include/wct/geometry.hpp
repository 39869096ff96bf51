#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wct/vec.hpp"

namespace wct {

enum class GeometryKind { circle, square, sphere, custom };

// Cone-vertex (beam-source) locations on a circle, square boundary, sphere,
// or an explicitly given point set. Tangent vectors back the Tuy checker.
struct VertexSet {
    int dim = 2;
    GeometryKind kind = GeometryKind::custom;
    double radius = 0.0;  // circle/sphere radius, or side/2 for the square
    std::vector<Vec3> points;
    std::vector<Vec3> tangent1;  // unit tangent, per point
    std::vector<Vec3> tangent2;  // second tangent (sphere only), zero otherwise
    int tangent_dim = 1;

    int count() const { return static_cast<int>(points.size()); }

    // Largest nearest-neighbor distance over the set.
    double max_spacing() const;
    // max |u| over the set (the reachable |u.beta| range).
    double max_reach() const;
    // |P_u theta| for the tangent space at point i.
    double tangent_projection(int i, const Vec3& theta) const;
};

VertexSet make_circle_vertices(double radius, int count);
// Count must be divisible by 4; corners are included once each.
VertexSet make_square_vertices(double side, int count);
// Azimuth x polar product mesh; polar samples are cell-centered so the
// poles are excluded.
VertexSet make_sphere_vertices(double radius, int n_azimuth, int n_polar);

struct GeometryDescriptor {
    GeometryKind kind = GeometryKind::circle;
    double size = 1.0;  // radius, or side length for the square
    int count = 256;    // total point count
    int n_azimuth = 0;  // sphere mesh; derived from count when left 0
    int n_polar = 0;
};

VertexSet make_vertex_set(const GeometryDescriptor& d);

// Quadrature nodes and weights on S^{n-1}.
struct DirectionGrid {
    int dim = 2;
    std::vector<Vec3> nodes;
    std::vector<double> weights;

    int count() const { return static_cast<int>(nodes.size()); }
    double weight_sum() const;
};

DirectionGrid make_circle_directions(int count);
DirectionGrid make_sphere_directions_product(int n_azimuth, int n_polar);
// Golden-angle spiral point set with equal weights 4*pi/count.
DirectionGrid make_sphere_directions_spiral(int count);

struct Ball {
    Vec3 center;
    double radius = 1.0;
};

struct TuyReport {
    bool satisfied = false;
    double witness_fraction = 0.0;
    double tangency_margin = 0.0;  // min over witnessed pairs of |P_u theta|
    Vec3 worst_x;                  // pair with no witness, or the most tangential one
    Vec3 worst_theta;
};

// Samples (x, theta) pairs in region x S^{n-1} and searches the vertex set
// for a plane witness u with |theta.(x-u)| below 2x the vertex spacing and
// |P_u theta| >= margin.
TuyReport tuy_check(const VertexSet& vs, const Ball& region, int x_samples,
                    int theta_samples, double margin, std::uint64_t seed = 0);

}  // namespace wct
