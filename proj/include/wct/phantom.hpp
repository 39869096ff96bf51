#pragma once

#include <array>
#include <vector>

#include "wct/vec.hpp"

namespace wct {

// Ball (disk in 2D) with a constant density; overlapping primitives add.
struct Primitive {
    Vec3 center;
    double radius = 1.0;
    double density = 1.0;
};

struct Phantom {
    int dim = 2;
    std::vector<Primitive> primitives;

    // Smallest R with all primitives inside the ball of radius R.
    double support_radius() const;
    // Point evaluation (sum of densities of containing primitives).
    double value_at(const Vec3& p) const;
};

// The two-disk phantom and the off-center ball of the reference experiments.
Phantom two_disk_phantom_2d();
Phantom ball_phantom_3d();

struct HitInterval {
    double enter = 0.0;
    double exit = 0.0;
    double density = 0.0;
};

// Per-primitive parameter interval where origin + rho*dir is inside,
// clipped to rho >= 0. dir must be unit-norm.
std::vector<HitInterval> ray_intersect(const Phantom& ph, const Vec3& origin, const Vec3& dir);

// Exact k-weighted ray integral: sum of density*(exit^{k+1}-enter^{k+1})/(k+1).
double beam_integral_analytic(const Phantom& ph, const Vec3& u, const Vec3& sigma, int k);

// Exact hyperplane integral: chord length in 2D, disk area in 3D.
double radon_analytic(const Phantom& ph, const Vec3& beta, double s);

// Uniform Cartesian sampling of a scalar field. Cross-section planes in 3D
// are grids with one singleton axis (lo == hi on that axis).
struct ImageGrid {
    int dim = 2;
    std::array<int, 3> shape = {1, 1, 1};
    std::array<double, 3> lo = {0, 0, 0};
    std::array<double, 3> hi = {0, 0, 0};
    std::vector<double> values;  // row-major, x slowest

    static ImageGrid make(int dim, std::array<int, 3> shape, std::array<double, 3> lo,
                          std::array<double, 3> hi);

    std::size_t size() const {
        return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
    }
    double cell_size(int axis) const {
        return shape[axis] > 1 ? (hi[axis] - lo[axis]) / shape[axis] : 0.0;
    }
    // Cell-centered coordinate along an axis; singleton axes sit at lo.
    double coord(int axis, int i) const {
        return shape[axis] > 1 ? lo[axis] + (i + 0.5) * cell_size(axis) : lo[axis];
    }
    Vec3 cell_center(int ix, int iy, int iz) const {
        return {coord(0, ix), coord(1, iy), coord(2, iz)};
    }
    double& at(int ix, int iy, int iz) {
        return values[(static_cast<std::size_t>(ix) * shape[1] + iy) * shape[2] + iz];
    }
    double at(int ix, int iy, int iz) const {
        return values[(static_cast<std::size_t>(ix) * shape[1] + iy) * shape[2] + iz];
    }
};

// Point-samples densities at cell centers.
ImageGrid rasterize(const Phantom& ph, const ImageGrid& grid_descr);

}  // namespace wct
