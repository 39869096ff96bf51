#include "wct/geometry.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace wct {

double VertexSet::max_spacing() const {
    double worst = 0.0;
    int n = count();
    for (int i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            best = std::min(best, (points[i] - points[j]).norm2());
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double VertexSet::max_reach() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.norm());
    return m;
}

double VertexSet::tangent_projection(int i, const Vec3& theta) const {
    double a = tangent1[i].dot(theta);
    if (tangent_dim == 1) return std::abs(a);
    double b = tangent2[i].dot(theta);
    return std::sqrt(a * a + b * b);
}

VertexSet make_circle_vertices(double radius, int count) {
    if (count < 4) throw std::invalid_argument("circle vertex count must be >= 4");
    if (radius <= 0) throw std::invalid_argument("circle radius must be positive");
    VertexSet vs;
    vs.dim = 2;
    vs.kind = GeometryKind::circle;
    vs.radius = radius;
    vs.tangent_dim = 1;
    for (int j = 0; j < count; ++j) {
        double a = 2.0 * kPi * j / count;
        vs.points.push_back(radius * unit2(a));
        vs.tangent1.push_back(unit2(a + kPi / 2));
        vs.tangent2.push_back({});
    }
    return vs;
}

VertexSet make_square_vertices(double side, int count) {
    if (count < 4) throw std::invalid_argument("square vertex count must be >= 4");
    if (count % 4 != 0) throw std::invalid_argument("square vertex count must be divisible by 4");
    if (side <= 0) throw std::invalid_argument("square side must be positive");
    VertexSet vs;
    vs.dim = 2;
    vs.kind = GeometryKind::square;
    vs.radius = side / 2;
    vs.tangent_dim = 1;
    int per_side = count / 4;
    double h = side / 2;
    double step = side / per_side;
    // Walk the perimeter counterclockwise from (h,-h); each corner belongs
    // to the side it starts.
    const Vec3 corners[4] = {{h, -h}, {h, h}, {-h, h}, {-h, -h}};
    const Vec3 dirs[4] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};
    for (int s = 0; s < 4; ++s) {
        for (int j = 0; j < per_side; ++j) {
            vs.points.push_back(corners[s] + (j * step) * dirs[s]);
            vs.tangent1.push_back(dirs[s]);
            vs.tangent2.push_back({});
        }
    }
    return vs;
}

VertexSet make_sphere_vertices(double radius, int n_azimuth, int n_polar) {
    if (n_azimuth < 2 || n_polar < 2) throw std::invalid_argument("sphere mesh counts must be >= 2");
    if (radius <= 0) throw std::invalid_argument("sphere radius must be positive");
    VertexSet vs;
    vs.dim = 3;
    vs.kind = GeometryKind::sphere;
    vs.radius = radius;
    vs.tangent_dim = 2;
    for (int i = 0; i < n_polar; ++i) {
        double th = (i + 0.5) * kPi / n_polar;  // cell-centered, poles excluded
        double st = std::sin(th), ct = std::cos(th);
        for (int j = 0; j < n_azimuth; ++j) {
            double ph = 2.0 * kPi * j / n_azimuth;
            Vec3 n{st * std::cos(ph), st * std::sin(ph), ct};
            vs.points.push_back(radius * n);
            vs.tangent1.push_back({ct * std::cos(ph), ct * std::sin(ph), -st});
            vs.tangent2.push_back({-std::sin(ph), std::cos(ph), 0.0});
        }
    }
    return vs;
}

VertexSet make_vertex_set(const GeometryDescriptor& d) {
    switch (d.kind) {
        case GeometryKind::circle:
            return make_circle_vertices(d.size, d.count);
        case GeometryKind::square:
            return make_square_vertices(d.size, d.count);
        case GeometryKind::sphere: {
            int na = d.n_azimuth, np = d.n_polar;
            if (na == 0 || np == 0) {
                // Default factorization count = 2m * m.
                int m = static_cast<int>(std::lround(std::sqrt(d.count / 2.0)));
                if (m < 2 || 2 * m * m != d.count)
                    throw std::invalid_argument(
                        "sphere vertex count not factorable as 2m*m; give azimuth/polar counts");
                na = 2 * m;
                np = m;
            }
            return make_sphere_vertices(d.size, na, np);
        }
        default:
            throw std::invalid_argument("unknown geometry kind");
    }
}

double DirectionGrid::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

DirectionGrid make_circle_directions(int count) {
    if (count <= 0) throw std::invalid_argument("direction count must be positive");
    DirectionGrid g;
    g.dim = 2;
    double w = 2.0 * kPi / count;
    for (int j = 0; j < count; ++j) {
        g.nodes.push_back(unit2(2.0 * kPi * j / count));
        g.weights.push_back(w);
    }
    return g;
}

DirectionGrid make_sphere_directions_product(int n_azimuth, int n_polar) {
    if (n_azimuth <= 0 || n_polar <= 0) throw std::invalid_argument("direction counts must be positive");
    DirectionGrid g;
    g.dim = 3;
    double dth = kPi / n_polar;
    double dph = 2.0 * kPi / n_azimuth;
    for (int i = 0; i < n_polar; ++i) {
        double th = (i + 0.5) * dth;
        double st = std::sin(th), ct = std::cos(th);
        double w = st * dth * dph;
        for (int j = 0; j < n_azimuth; ++j) {
            double ph = j * dph;
            g.nodes.push_back({st * std::cos(ph), st * std::sin(ph), ct});
            g.weights.push_back(w);
        }
    }
    return g;
}

DirectionGrid make_sphere_directions_spiral(int count) {
    if (count <= 0) throw std::invalid_argument("direction count must be positive");
    DirectionGrid g;
    g.dim = 3;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    double w = 4.0 * kPi / count;
    for (int i = 0; i < count; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / count;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double ph = golden * i;
        g.nodes.push_back({r * std::cos(ph), r * std::sin(ph), z});
        g.weights.push_back(w);
    }
    return g;
}

TuyReport tuy_check(const VertexSet& vs, const Ball& region, int x_samples,
                    int theta_samples, double margin, std::uint64_t seed) {
    if (vs.count() == 0) throw std::invalid_argument("empty vertex set");
    if (region.radius <= 0) throw std::invalid_argument("region radius must be positive");
    if (margin <= 0 || margin >= 1) throw std::invalid_argument("margin must be in (0,1)");

    double tol = 2.0 * vs.max_spacing();

    // Deterministic sample points in the region.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Vec3> xs;
    while (static_cast<int>(xs.size()) < x_samples) {
        Vec3 p{uni(rng), uni(rng), vs.dim == 3 ? uni(rng) : 0.0};
        if (p.norm2() <= 1.0) xs.push_back(region.center + region.radius * p);
    }
    std::vector<Vec3> thetas;
    if (vs.dim == 2) {
        for (int j = 0; j < theta_samples; ++j)
            thetas.push_back(unit2(kPi * j / theta_samples));
    } else {
        DirectionGrid dg = make_sphere_directions_spiral(theta_samples);
        thetas = dg.nodes;
    }

    TuyReport rep;
    rep.tangency_margin = std::numeric_limits<double>::infinity();
    int witnessed = 0;
    int total = 0;
    bool have_worst = false;
    for (const Vec3& x : xs) {
        for (const Vec3& th : thetas) {
            ++total;
            double best = -1.0;  // best |P_u theta| among on-plane vertices
            for (int i = 0; i < vs.count(); ++i) {
                if (std::abs(th.dot(x - vs.points[i])) > tol) continue;
                best = std::max(best, vs.tangent_projection(i, th));
            }
            if (best >= 0.0) {
                ++witnessed;
                if (best < rep.tangency_margin) {
                    rep.tangency_margin = best;
                    if (!have_worst) {  // keep a missing-witness pair if one was seen
                        rep.worst_x = x;
                        rep.worst_theta = th;
                    }
                }
            } else if (!have_worst) {
                have_worst = true;
                rep.worst_x = x;
                rep.worst_theta = th;
            }
        }
    }
    rep.witness_fraction = total > 0 ? static_cast<double>(witnessed) / total : 0.0;
    if (witnessed == 0) rep.tangency_margin = 0.0;
    rep.satisfied = rep.witness_fraction == 1.0 && rep.tangency_margin > margin;
    return rep;
}

}  // namespace wct
