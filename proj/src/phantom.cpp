#include "wct/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wct {

double Phantom::support_radius() const {
    double r = 0.0;
    for (const auto& p : primitives) r = std::max(r, p.center.norm() + p.radius);
    return r;
}

double Phantom::value_at(const Vec3& p) const {
    double v = 0.0;
    for (const auto& prim : primitives)
        if ((p - prim.center).norm2() < prim.radius * prim.radius) v += prim.density;
    return v;
}

Phantom two_disk_phantom_2d() {
    Phantom ph;
    ph.dim = 2;
    // Net density: 0.5 on the inner disk, -0.5 on the annulus.
    ph.primitives = {{{0, 0.4, 0}, 0.5, -0.5}, {{0, 0.4, 0}, 0.25, 1.0}};
    return ph;
}

Phantom ball_phantom_3d() {
    Phantom ph;
    ph.dim = 3;
    ph.primitives = {{{0, 0, 0.25}, 0.5, 1.0}};
    return ph;
}

std::vector<HitInterval> ray_intersect(const Phantom& ph, const Vec3& origin, const Vec3& dir) {
    if (std::abs(dir.norm2() - 1.0) > 1e-9)
        throw std::invalid_argument("ray direction must be unit-norm");
    std::vector<HitInterval> hits;
    for (const auto& prim : ph.primitives) {
        Vec3 b = origin - prim.center;
        double bs = b.dot(dir);
        double disc = bs * bs - (b.norm2() - prim.radius * prim.radius);
        if (disc <= 0.0) continue;
        double sq = std::sqrt(disc);
        double lo = -bs - sq, hi = -bs + sq;
        if (hi <= 0.0) continue;
        hits.push_back({std::max(lo, 0.0), hi, prim.density});
    }
    return hits;
}

double beam_integral_analytic(const Phantom& ph, const Vec3& u, const Vec3& sigma, int k) {
    double acc = 0.0;
    for (const auto& h : ray_intersect(ph, u, sigma)) {
        double hi = std::pow(h.exit, k + 1), lo = std::pow(h.enter, k + 1);
        acc += h.density * (hi - lo) / (k + 1);
    }
    return acc;
}

double radon_analytic(const Phantom& ph, const Vec3& beta, double s) {
    double acc = 0.0;
    for (const auto& prim : ph.primitives) {
        double d = s - prim.center.dot(beta);
        double q = prim.radius * prim.radius - d * d;
        if (q <= 0.0) continue;
        acc += prim.density * (ph.dim == 2 ? 2.0 * std::sqrt(q) : kPi * q);
    }
    return acc;
}

ImageGrid ImageGrid::make(int dim, std::array<int, 3> shape, std::array<double, 3> lo,
                          std::array<double, 3> hi) {
    ImageGrid g;
    g.dim = dim;
    g.shape = shape;
    g.lo = lo;
    g.hi = hi;
    for (int a = 0; a < 3; ++a) {
        if (shape[a] < 1) throw std::invalid_argument("grid shape entries must be >= 1");
        if (shape[a] > 1 && hi[a] <= lo[a]) throw std::invalid_argument("degenerate grid extent");
    }
    g.values.assign(g.size(), 0.0);
    return g;
}

ImageGrid rasterize(const Phantom& ph, const ImageGrid& grid_descr) {
    ImageGrid g = grid_descr;
    g.values.assign(g.size(), 0.0);
    for (int ix = 0; ix < g.shape[0]; ++ix)
        for (int iy = 0; iy < g.shape[1]; ++iy)
            for (int iz = 0; iz < g.shape[2]; ++iz)
                g.at(ix, iy, iz) = ph.value_at(g.cell_center(ix, iy, iz));
    return g;
}

}  // namespace wct
