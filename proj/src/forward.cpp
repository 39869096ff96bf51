#include "wct/forward.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wct {

namespace {

// Flattened primitive data for the inner projection loops.
struct FlatPhantom {
    std::vector<Vec3> center;
    std::vector<double> r2;
    std::vector<double> density;
    Vec3 bound_center;
    double bound_radius = 0.0;

    explicit FlatPhantom(const Phantom& ph) {
        Vec3 c{};
        for (const auto& p : ph.primitives) c += p.center * (1.0 / ph.primitives.size());
        bound_center = ph.primitives.empty() ? Vec3{} : c;
        for (const auto& p : ph.primitives) {
            center.push_back(p.center);
            r2.push_back(p.radius * p.radius);
            density.push_back(p.density);
            bound_radius = std::max(bound_radius, (p.center - c).norm() + p.radius);
        }
    }
};

inline double chord_power(double lo, double hi, int k) {
    switch (k) {
        case 0: return hi - lo;
        case 1: return 0.5 * (hi * hi - lo * lo);
        default: return (hi * hi * hi - lo * lo * lo) / 3.0;
    }
}

// D_u^k f(sigma) given per-vertex precomputed b_i = u - c_i and |b_i|^2.
inline double beam_value(const FlatPhantom& fp, std::span<const Vec3> b,
                         std::span<const double> b2, const Vec3& sigma, int k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < fp.center.size(); ++i) {
        double bs = b[i].dot(sigma);
        double disc = bs * bs - (b2[i] - fp.r2[i]);
        if (disc <= 0.0) continue;
        double sq = std::sqrt(disc);
        double hi = -bs + sq;
        if (hi <= 0.0) continue;
        acc += fp.density[i] * chord_power(std::max(-bs - sq, 0.0), hi, k);
    }
    return acc;
}

void check_k(int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("weight exponent k must be in {0,1,2}");
}

}  // namespace

std::vector<double> make_psi_grid(int count) {
    if (count < 2) throw std::invalid_argument("psi count must be >= 2");
    std::vector<double> psi(count);
    for (int j = 0; j < count; ++j) psi[j] = (j + 0.5) * kPi / count;
    return psi;
}

std::vector<double> make_s_grid(double s_max, int count) {
    if (count < 2 || s_max <= 0) throw std::invalid_argument("bad s grid");
    std::vector<double> s(count);
    for (int j = 0; j < count; ++j) s[j] = -s_max + 2.0 * s_max * j / (count - 1);
    return s;
}

BeamSinogram divergent_beam_forward(const Phantom& ph, const VertexSet& vertices,
                                    const DirectionGrid& directions, int k) {
    check_k(k);
    BeamSinogram sg;
    sg.k = k;
    sg.vertices = vertices;
    sg.directions = directions;
    sg.values.assign(static_cast<std::size_t>(vertices.count()) * directions.count(), 0.0);
    FlatPhantom fp(ph);
    std::vector<Vec3> b(fp.center.size());
    std::vector<double> b2(fp.center.size());
    for (int u = 0; u < vertices.count(); ++u) {
        for (std::size_t i = 0; i < fp.center.size(); ++i) {
            b[i] = vertices.points[u] - fp.center[i];
            b2[i] = b[i].norm2();
        }
        for (int s = 0; s < directions.count(); ++s)
            sg.at(u, s) = beam_value(fp, b, b2, directions.nodes[s], k);
    }
    return sg;
}

double cone_value(const Phantom& ph, const Vec3& u, const Vec3& beta, double psi, int k,
                  int dim, int n_phi) {
    check_k(k);
    if (psi <= 0.0 || psi >= kPi) throw std::invalid_argument("psi must be in (0,pi)");
    FlatPhantom fp(ph);
    std::vector<Vec3> b(fp.center.size());
    std::vector<double> b2(fp.center.size());
    for (std::size_t i = 0; i < fp.center.size(); ++i) {
        b[i] = u - fp.center[i];
        b2[i] = b[i].norm2();
    }
    if (dim == 2) {
        return beam_value(fp, b, b2, rot2(beta, psi), k) +
               beam_value(fp, b, b2, rot2(beta, -psi), k);
    }
    auto [e1, e2] = perp_basis(beta);
    double cp = std::cos(psi), sp = std::sin(psi);
    double dphi = 2.0 * kPi / n_phi;
    double acc = 0.0;
    for (int j = 0; j < n_phi; ++j) {
        double phi = j * dphi;
        Vec3 sigma = cp * beta + sp * (std::cos(phi) * e1 + std::sin(phi) * e2);
        acc += beam_value(fp, b, b2, sigma, k);
    }
    return sp * acc * dphi;
}

void cone_forward_stream(const Phantom& ph, const VertexSet& vertices, const DirectionGrid& axes,
                         const std::vector<double>& psi, int k, int n_phi,
                         const std::function<void(int, std::span<const double>)>& emit) {
    check_k(k);
    for (double p : psi)
        if (p <= 0.0 || p >= kPi) throw std::invalid_argument("psi must be in (0,pi)");

    FlatPhantom fp(ph);
    const int n_axes = axes.count();
    const int n_psi = static_cast<int>(psi.size());
    std::vector<double> slice(static_cast<std::size_t>(n_axes) * n_psi);

    if (vertices.dim == 2) {
        std::vector<Vec3> b(fp.center.size());
        std::vector<double> b2(fp.center.size());
        for (int u = 0; u < vertices.count(); ++u) {
            for (std::size_t i = 0; i < fp.center.size(); ++i) {
                b[i] = vertices.points[u] - fp.center[i];
                b2[i] = b[i].norm2();
            }
            for (int a = 0; a < n_axes; ++a)
                for (int m = 0; m < n_psi; ++m)
                    slice[static_cast<std::size_t>(a) * n_psi + m] =
                        beam_value(fp, b, b2, rot2(axes.nodes[a], psi[m]), k) +
                        beam_value(fp, b, b2, rot2(axes.nodes[a], -psi[m]), k);
            emit(u, slice);
        }
        return;
    }

    // 3D. The phi quadrature only visits the arc of directions that can hit
    // the bounding ball of the support; rays outside it integrate to zero.
    const double dphi = 2.0 * kPi / n_phi;
    std::vector<double> cphi(n_phi), sphi(n_phi);
    for (int j = 0; j < n_phi; ++j) {
        cphi[j] = std::cos(j * dphi);
        sphi[j] = std::sin(j * dphi);
    }
    std::vector<double> cpsi(n_psi), spsi(n_psi);
    for (int m = 0; m < n_psi; ++m) {
        cpsi[m] = std::cos(psi[m]);
        spsi[m] = std::sin(psi[m]);
    }
    std::vector<std::array<Vec3, 2>> basis(n_axes);
    for (int a = 0; a < n_axes; ++a) basis[a] = perp_basis(axes.nodes[a]);

    std::vector<Vec3> b(fp.center.size());
    std::vector<double> b2(fp.center.size());
    for (int u = 0; u < vertices.count(); ++u) {
        const Vec3& up = vertices.points[u];
        for (std::size_t i = 0; i < fp.center.size(); ++i) {
            b[i] = up - fp.center[i];
            b2[i] = b[i].norm2();
        }
        Vec3 bound = fp.bound_center - up;
        double d = bound.norm();
        bool inside = d <= fp.bound_radius;
        Vec3 axis_c = inside ? Vec3{0, 0, 1} : bound * (1.0 / d);
        double cos_alpha = inside ? -1.0 : std::sqrt(std::max(
            0.0, 1.0 - fp.bound_radius * fp.bound_radius / (d * d)));

        for (int a = 0; a < n_axes; ++a) {
            const Vec3& beta = axes.nodes[a];
            const Vec3& e1 = basis[a][0];
            const Vec3& e2 = basis[a][1];
            double ca = beta.dot(axis_c);
            double s1 = e1.dot(axis_c), s2 = e2.dot(axis_c);
            double sa = std::sqrt(s1 * s1 + s2 * s2);
            double phi0 = std::atan2(s2, s1);
            double* out = slice.data() + static_cast<std::size_t>(a) * n_psi;
            for (int m = 0; m < n_psi; ++m) {
                double cp = cpsi[m], sp = spsi[m];
                int j_lo = 0, j_hi = n_phi - 1;
                bool full = inside;
                if (!inside) {
                    if (sa * sp < 1e-14) {
                        // Axis parallel to the support direction: the whole
                        // phi circle is either in or out.
                        if (cp * ca < cos_alpha) {
                            out[m] = 0.0;
                            continue;
                        }
                        full = true;
                    } else {
                        double q = (cos_alpha - cp * ca) / (sp * sa);
                        if (q >= 1.0) {
                            out[m] = 0.0;
                            continue;
                        }
                        if (q <= -1.0) {
                            full = true;
                        } else {
                            double half = std::acos(q);
                            j_lo = static_cast<int>(std::ceil((phi0 - half) / dphi));
                            j_hi = static_cast<int>(std::floor((phi0 + half) / dphi));
                        }
                    }
                }
                double acc = 0.0;
                if (full) {
                    for (int j = 0; j < n_phi; ++j) {
                        Vec3 sigma = cp * beta + (sp * cphi[j]) * e1 + (sp * sphi[j]) * e2;
                        acc += beam_value(fp, b, b2, sigma, k);
                    }
                } else {
                    for (int j = j_lo; j <= j_hi; ++j) {
                        int jw = j % n_phi;
                        if (jw < 0) jw += n_phi;
                        Vec3 sigma = cp * beta + (sp * cphi[jw]) * e1 + (sp * sphi[jw]) * e2;
                        acc += beam_value(fp, b, b2, sigma, k);
                    }
                }
                out[m] = sp * acc * dphi;
            }
        }
        emit(u, slice);
    }
}

ConeSinogram cone_forward(const Phantom& ph, const VertexSet& vertices, const DirectionGrid& axes,
                          const std::vector<double>& psi, int k, int n_phi) {
    ConeSinogram sg;
    sg.k = k;
    sg.vertices = vertices;
    sg.axes = axes;
    sg.psi = psi;
    sg.n_phi = n_phi;
    sg.values.assign(static_cast<std::size_t>(vertices.count()) * sg.slice_size(), 0.0);
    cone_forward_stream(ph, vertices, axes, psi, k, n_phi,
                        [&](int u, std::span<const double> slice) {
                            std::copy(slice.begin(), slice.end(),
                                      sg.values.begin() + static_cast<std::size_t>(u) * sg.slice_size());
                        });
    return sg;
}

RadonSinogram radon_forward(const Phantom& ph, const DirectionGrid& axes,
                            const std::vector<double>& s_grid) {
    RadonSinogram sg;
    sg.axes = axes;
    sg.s = s_grid;
    sg.values.assign(static_cast<std::size_t>(axes.count()) * s_grid.size(), 0.0);
    for (int a = 0; a < axes.count(); ++a)
        for (std::size_t j = 0; j < s_grid.size(); ++j)
            sg.values[static_cast<std::size_t>(a) * s_grid.size() + j] =
                radon_analytic(ph, axes.nodes[a], s_grid[j]);
    return sg;
}

void add_scaled_noise_vertex(std::span<double> slice, double scale, std::uint64_t seed,
                             std::uint64_t vtx) {
    std::seed_seq ss{seed, vtx};
    std::mt19937_64 rng(ss);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : slice) v += scale * gauss(rng);
}

void add_noise(std::span<double> values, double level, std::uint64_t seed,
               std::size_t values_per_vertex) {
    if (level < 0) throw std::invalid_argument("noise level must be >= 0");
    if (level == 0) return;
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, std::abs(v));
    double scale = level * mx;
    std::size_t stride = values_per_vertex == 0 ? values.size() : values_per_vertex;
    for (std::size_t v0 = 0, vtx = 0; v0 < values.size(); v0 += stride, ++vtx) {
        std::seed_seq ss{seed, static_cast<std::uint64_t>(vtx)};
        std::mt19937_64 rng(ss);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::size_t end = std::min(v0 + stride, values.size());
        for (std::size_t i = v0; i < end; ++i) values[i] += scale * gauss(rng);
    }
}

void fill_unit_noise(std::span<double> values, std::uint64_t seed, std::size_t values_per_vertex) {
    std::size_t stride = values_per_vertex == 0 ? values.size() : values_per_vertex;
    for (std::size_t v0 = 0, vtx = 0; v0 < values.size(); v0 += stride, ++vtx) {
        std::seed_seq ss{seed, static_cast<std::uint64_t>(vtx)};
        std::mt19937_64 rng(ss);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::size_t end = std::min(v0 + stride, values.size());
        for (std::size_t i = v0; i < end; ++i) values[i] = gauss(rng);
    }
}

}  // namespace wct
