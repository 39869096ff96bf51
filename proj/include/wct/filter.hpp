#pragma once

#include <span>
#include <vector>

#include "wct/forward.hpp"
#include "wct/geometry.hpp"

namespace wct {

enum class KernelKind { sign_type, abs_type, delta_derivative };

// Classification of the 1D filtering kernel for a given (n, k): a signed or
// absolute power |t|^{k-n+1}, or the (n-k-2)-nd delta derivative.
struct FilterSpec {
    int n = 2;
    int k = 0;
    KernelKind kind = KernelKind::sign_type;
    int delta_order = 0;  // n-k-2, delta kind only
    double scale = 0.5;   // 1/(2 (k-n+1)!), sign/abs kinds

    // Pointwise kernel value (sign/abs kinds only).
    double eval(double t) const;
};

FilterSpec weight_h(int n, int k);

// Uniform s-grid the scattered per-vertex values are fitted onto.
struct SGrid {
    double s_max = 1.0;
    int count = 129;
};

// The filtered plane data G(s, beta), one row per axis direction.
struct GTable {
    DirectionGrid axes;
    std::vector<double> s;
    std::vector<double> values;   // (axis, s)
    std::vector<int> counts;      // per-bin sample counts; 0 = filled by interpolation
    double max_bin_std = 0.0;     // max within-bin std over interior bins, diagnostic

    std::span<double> row(int a) {
        return {values.data() + static_cast<std::size_t>(a) * s.size(), s.size()};
    }
    std::span<const double> row(int a) const {
        return {values.data() + static_cast<std::size_t>(a) * s.size(), s.size()};
    }
    double max_abs() const;
    // Linear interpolation in s; zero outside the grid.
    double sample(int a, double s_val) const;
};

// Inner pairing of one (u, beta) cone data row (over psi) with the kernel:
// quadrature against h(-cos psi) for sign/abs kinds, the delta_order-th
// t-derivative of C/sqrt(1-t^2) at t=0 for the delta kind.
double cone_inner_value(std::span<const double> row, const std::vector<double>& psi,
                        const FilterSpec& spec);

// Linear functional pairing a per-vertex beam row (over the direction grid)
// with h(-sigma.beta) for a fixed axis. Sign/abs kinds hold a dense weight
// vector; delta kinds a sparse interpolation stencil on circles sigma.beta=t.
class BeamKernel {
public:
    BeamKernel(const DirectionGrid& dirs, const Vec3& beta, const FilterSpec& spec,
               int circle_nodes = 720);

    double apply(std::span<const double> vertex_row) const;
    // Sign/abs only: row given as (index, value) pairs of its nonzero entries.
    double apply_sparse(std::span<const int> idx, std::span<const double> val) const;

private:
    std::vector<double> dense_;
    std::vector<int> stencil_idx_;
    std::vector<double> stencil_w_;
};

// Streaming accumulator for G from cone data: feed per-vertex (axis, psi)
// slices, then finalize into a binned GTable.
class ConeGAccumulator {
public:
    ConeGAccumulator(const DirectionGrid& axes, std::vector<double> psi, const FilterSpec& spec,
                     const SGrid& grid);
    void add_vertex(const Vec3& u, std::span<const double> slice);
    GTable finalize() const;

private:
    DirectionGrid axes_;
    std::vector<double> psi_;
    FilterSpec spec_;
    SGrid grid_;
    std::vector<double> kernel_w_;  // per-psi quadrature weights, sign/abs
    // Scattered (s = u.beta, inner value) samples per axis.
    std::vector<std::vector<std::pair<double, double>>> samples_;
};

GTable g_from_cone(const ConeSinogram& cone, const FilterSpec& spec, const SGrid& grid);

// Assembles G rows over the given axis grid (the beam direction grid is the
// inner quadrature set and is generally much denser). max_per_bin > 0 limits
// how many vertices feed each s-bin per axis (the rest carry no new
// information on noiseless data); 0 uses all vertices.
GTable g_from_beam(const BeamSinogram& beam, const DirectionGrid& axes, const FilterSpec& spec,
                   const SGrid& grid, int max_per_bin = 0);

GTable g_from_radon(const RadonSinogram& radon, const FilterSpec& spec, const SGrid& grid);

// Central finite differences of the requested order (2nd-order accurate),
// one-sided stencils at the row ends.
GTable derivative_s(const GTable& table, int order);

// Discrete Hilbert transform per row: spectral multiplier -i sgn(freq) with
// zero-padding to >= 4x the row length.
GTable hilbert(const GTable& table);

// 5-point binomial smoothing of each row, `passes` times.
GTable smooth_binomial(const GTable& table, int passes = 1);

}  // namespace wct
