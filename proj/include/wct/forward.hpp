#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wct/geometry.hpp"
#include "wct/phantom.hpp"

namespace wct {

// Sampled D^k f over (vertex, direction).
struct BeamSinogram {
    int k = 0;
    VertexSet vertices;
    DirectionGrid directions;
    std::vector<double> values;  // (vertex, direction)

    double& at(int u, int s) {
        return values[static_cast<std::size_t>(u) * directions.count() + s];
    }
    double at(int u, int s) const {
        return values[static_cast<std::size_t>(u) * directions.count() + s];
    }
};

// Sampled C^k f over (vertex, axis, psi).
struct ConeSinogram {
    int k = 0;
    VertexSet vertices;
    DirectionGrid axes;
    std::vector<double> psi;
    int n_phi = 360;  // azimuthal quadrature of the 3D cone surface integral
    std::vector<double> values;  // (vertex, axis, psi)

    std::size_t slice_size() const { return static_cast<std::size_t>(axes.count()) * psi.size(); }
    std::span<const double> slice(int u) const {
        return {values.data() + static_cast<std::size_t>(u) * slice_size(), slice_size()};
    }
};

struct RadonSinogram {
    DirectionGrid axes;
    std::vector<double> s;
    std::vector<double> values;  // (axis, s)
};

// Uniform cell-centered grid on (0, pi); endpoints excluded.
std::vector<double> make_psi_grid(int count);
// Uniform grid of count samples covering [-s_max, s_max].
std::vector<double> make_s_grid(double s_max, int count);

BeamSinogram divergent_beam_forward(const Phantom& ph, const VertexSet& vertices,
                                    const DirectionGrid& directions, int k);

// Single cone value. 2D: the two rays at beta rotated by +-psi. 3D: azimuthal
// quadrature of sin(psi) * Int D_u^k(sigma(psi,phi)) dphi with n_phi nodes.
double cone_value(const Phantom& ph, const Vec3& u, const Vec3& beta, double psi, int k,
                  int dim, int n_phi);

ConeSinogram cone_forward(const Phantom& ph, const VertexSet& vertices, const DirectionGrid& axes,
                          const std::vector<double>& psi, int k, int n_phi = 360);

// Streaming variant: calls emit(u, slice) for each vertex with the (axis, psi)
// block, without materializing the whole sinogram.
void cone_forward_stream(const Phantom& ph, const VertexSet& vertices, const DirectionGrid& axes,
                         const std::vector<double>& psi, int k, int n_phi,
                         const std::function<void(int, std::span<const double>)>& emit);

RadonSinogram radon_forward(const Phantom& ph, const DirectionGrid& axes,
                            const std::vector<double>& s_grid);

// Adds zero-mean Gaussian noise with std = level * max|values|. One
// generator stream per vertex: values_per_vertex fixes the stream stride.
void add_noise(std::span<double> values, double level, std::uint64_t seed,
               std::size_t values_per_vertex);

// The unit-variance noise field alone (used by the fused noisy pipelines,
// which exploit linearity of the filter chain).
void fill_unit_noise(std::span<double> values, std::uint64_t seed, std::size_t values_per_vertex);

// Streaming form of add_noise for one vertex's block: adds scale * N(0,1)
// from the same per-vertex stream add_noise would use.
void add_scaled_noise_vertex(std::span<double> slice, double scale, std::uint64_t seed,
                             std::uint64_t vtx);

}  // namespace wct
