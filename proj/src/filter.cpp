#include "wct/filter.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wct {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// Bucketed nearest-neighbor lookup on S^2.
class DirectionIndex {
public:
    explicit DirectionIndex(const DirectionGrid& g) : grid_(g) {
        n_theta_ = std::max(4, static_cast<int>(std::sqrt(g.count() / 2.0)));
        n_phi_ = 2 * n_theta_;
        buckets_.resize(static_cast<std::size_t>(n_theta_) * n_phi_);
        for (int i = 0; i < g.count(); ++i) buckets_[bucket_of(g.nodes[i])].push_back(i);
    }

    // Indices and inverse-distance weights of the 4 nearest nodes.
    void stencil(const Vec3& dir, int out_idx[4], double out_w[4]) const {
        int bt, bp;
        bucket_coords(dir, bt, bp);
        int best[4] = {-1, -1, -1, -1};
        double bestd[4] = {1e30, 1e30, 1e30, 1e30};
        for (int ring = 2; ring <= std::max(n_theta_, n_phi_); ring += 2) {
            for (int dt = -ring; dt <= ring; ++dt) {
                int it = bt + dt;
                if (it < 0 || it >= n_theta_) continue;
                for (int dp = -ring; dp <= ring; ++dp) {
                    if (ring > 2 && std::abs(dt) < ring - 1 && std::abs(dp) < ring - 1)
                        continue;  // already visited inner block
                    int ip = ((bp + dp) % n_phi_ + n_phi_) % n_phi_;
                    for (int i : buckets_[static_cast<std::size_t>(it) * n_phi_ + ip]) {
                        double d = (grid_.nodes[i] - dir).norm2();
                        for (int s = 0; s < 4; ++s) {
                            if (d < bestd[s]) {
                                for (int t = 3; t > s; --t) {
                                    bestd[t] = bestd[t - 1];
                                    best[t] = best[t - 1];
                                }
                                bestd[s] = d;
                                best[s] = i;
                                break;
                            }
                        }
                    }
                }
            }
            if (best[3] >= 0) break;
        }
        double wsum = 0.0;
        for (int s = 0; s < 4; ++s) {
            double d = std::sqrt(std::max(bestd[s], 0.0));
            out_w[s] = 1.0 / (d + 1e-12);
            out_idx[s] = best[s];
            wsum += out_w[s];
        }
        for (int s = 0; s < 4; ++s) out_w[s] /= wsum;
    }

private:
    std::size_t bucket_of(const Vec3& v) const {
        int bt, bp;
        bucket_coords(v, bt, bp);
        return static_cast<std::size_t>(bt) * n_phi_ + bp;
    }
    void bucket_coords(const Vec3& v, int& bt, int& bp) const {
        double th = std::acos(std::clamp(v.z, -1.0, 1.0));
        double ph = std::atan2(v.y, v.x);
        if (ph < 0) ph += 2.0 * kPi;
        bt = std::clamp(static_cast<int>(th / kPi * n_theta_), 0, n_theta_ - 1);
        bp = std::clamp(static_cast<int>(ph / (2.0 * kPi) * n_phi_), 0, n_phi_ - 1);
    }

    const DirectionGrid& grid_;
    int n_theta_, n_phi_;
    std::vector<std::vector<int>> buckets_;
};

// Shared bookkeeping for the vertex-scattered G assemblies. The raw data
// are (s = u.beta, inner value) points at irregular s; snapping them to bin
// centers would add jitter that the k+1 derivatives downstream amplify by
// 1/h^{k+1}, so each output node is instead a local weighted least-squares
// quadratic fit over a window of neighboring samples.
struct BinTable {
    SGrid grid;
    int n_axes;
    std::vector<std::vector<std::pair<double, double>>> samples;

    BinTable(const SGrid& g, int axes) : grid(g), n_axes(axes), samples(axes) {}

    int bin_of(double s) const {
        double ds = 2.0 * grid.s_max / (grid.count - 1);
        int b = static_cast<int>(std::lround((s + grid.s_max) / ds));
        return (b < 0 || b >= grid.count) ? -1 : b;
    }

    void add(int axis, double s, double v) {
        if (std::abs(s) <= grid.s_max) samples[axis].push_back({s, v});
    }

    // Biweight-weighted quadratic fit centered at s0; returns the fitted
    // value and the rms residual of the window.
    static std::pair<double, double> local_fit(std::span<const std::pair<double, double>> pts,
                                               double s0, double w) {
        double m[5] = {0, 0, 0, 0, 0}, r[3] = {0, 0, 0};
        for (const auto& [s, v] : pts) {
            double x = s - s0;
            double q = 1.0 - (x * x) / (w * w * 1.0001);
            double wt = q * q;
            double xp = wt;
            for (int p = 0; p <= 4; ++p, xp *= x) m[p] += xp;
            r[0] += wt * v;
            r[1] += wt * v * (s - s0);
            r[2] += wt * v * (s - s0) * (s - s0);
        }
        // Normal equations for c0 + c1 x + c2 x^2 (Cramer); degrade to a
        // line or weighted mean when the moment matrix is singular
        // (e.g. all samples at one s).
        double det = m[0] * (m[2] * m[4] - m[3] * m[3]) - m[1] * (m[1] * m[4] - m[2] * m[3]) +
                     m[2] * (m[1] * m[3] - m[2] * m[2]);
        double c0, c1 = 0, c2 = 0;
        double scale = m[0] * m[2] * m[4] + 1e-300;
        if (std::abs(det) > 1e-10 * scale && pts.size() >= 3) {
            c0 = (r[0] * (m[2] * m[4] - m[3] * m[3]) - m[1] * (r[1] * m[4] - r[2] * m[3]) +
                  m[2] * (r[1] * m[3] - r[2] * m[2])) /
                 det;
            c1 = (m[0] * (r[1] * m[4] - r[2] * m[3]) - r[0] * (m[1] * m[4] - m[2] * m[3]) +
                  m[2] * (m[1] * r[2] - m[2] * r[1])) /
                 det;
            c2 = (m[0] * (m[2] * r[2] - m[3] * r[1]) - m[1] * (m[1] * r[2] - m[3] * r[0]) +
                  m[2] * (m[1] * r[1] - m[2] * r[0])) /
                 det;
        } else {
            double det2 = m[0] * m[2] - m[1] * m[1];
            if (std::abs(det2) > 1e-10 * (m[0] * m[2] + 1e-300) && pts.size() >= 2) {
                c0 = (r[0] * m[2] - m[1] * r[1]) / det2;
                c1 = (m[0] * r[1] - m[1] * r[0]) / det2;
            } else {
                c0 = m[0] > 0 ? r[0] / m[0] : 0.0;
            }
        }
        double res2 = 0.0;
        for (const auto& [s, v] : pts) {
            double x = s - s0;
            double d = v - (c0 + c1 * x + c2 * x * x);
            res2 += d * d;
        }
        return {c0, std::sqrt(res2 / pts.size())};
    }

    GTable finalize(const DirectionGrid& axes, const FilterSpec& spec) {
        GTable t;
        t.axes = axes;
        t.s = make_s_grid(grid.s_max, grid.count);
        t.values.assign(static_cast<std::size_t>(n_axes) * grid.count, 0.0);
        t.counts.assign(t.values.size(), 0);
        const int nb = grid.count;
        const double h = 2.0 * grid.s_max / (nb - 1);
        for (int a = 0; a < n_axes; ++a) {
            auto& sm = samples[a];
            std::sort(sm.begin(), sm.end());
            auto row = t.row(a);
            if (sm.empty()) continue;
            for (const auto& [s, v] : sm) {
                int b = bin_of(s);
                if (b >= 0) ++t.counts[static_cast<std::size_t>(a) * nb + b];
            }
            // Bins outside the per-axis sample coverage get no fit: the
            // true G there is a constant tail (sign/abs kernels: the vertex
            // reach exceeds the support radius, so the plane has swept the
            // whole mass) or zero (delta kernels: G is compactly
            // supported). Extrapolating the quadratic instead would let the
            // edge bins swing freely and pollute the derivatives.
            int b_lo = 0, b_hi = nb - 1;
            while (b_lo < nb && t.s[b_lo] < sm.front().first - h) ++b_lo;
            while (b_hi >= 0 && t.s[b_hi] > sm.back().first + h) --b_hi;
            for (int b = b_lo; b <= b_hi; ++b) {
                double s0 = t.s[b];
                // Grow the window until it holds enough points for a
                // stable quadratic.
                double w = 2.0 * h;
                std::size_t lo = 0, hi = 0;
                for (;; w *= 1.5) {
                    lo = std::lower_bound(sm.begin(), sm.end(), std::pair{s0 - w, -1e300}) -
                         sm.begin();
                    hi = std::upper_bound(sm.begin(), sm.end(), std::pair{s0 + w, 1e300}) -
                         sm.begin();
                    // Vertices can pile up at equal s (e.g. the polar rings
                    // of a sphere mesh against an axial beta), so demand
                    // several distinct abscissae, not just raw points.
                    int distinct = hi > lo ? 1 : 0;
                    for (std::size_t i = lo + 1; i < hi && distinct < 5; ++i)
                        if (sm[i].first > sm[i - 1].first + 1e-12) ++distinct;
                    if ((hi - lo >= 16 && distinct >= 5) || w > 0.5 * grid.s_max) break;
                }
                auto [val, res] = local_fit({sm.data() + lo, hi - lo}, s0, w);
                row[b] = val;
                if (hi > lo && std::abs(s0) <= 0.8 * grid.s_max)
                    t.max_bin_std = std::max(t.max_bin_std, res);
            }
            if (b_lo > b_hi) continue;
            bool flat_tail = spec.kind != KernelKind::delta_derivative;
            for (int b = 0; b < b_lo; ++b) row[b] = flat_tail ? row[b_lo] : 0.0;
            for (int b = b_hi + 1; b < nb; ++b) row[b] = flat_tail ? row[b_hi] : 0.0;
        }
        return t;
    }
};

// Indices of the psi samples bracketing pi/2 (t = cos psi straddling 0).
void bracket_half_pi(const std::vector<double>& psi, int& j0, int& j1) {
    j0 = -1;
    for (std::size_t j = 0; j < psi.size(); ++j)
        if (psi[j] < kPi / 2) j0 = static_cast<int>(j);
    j1 = j0 + 1;
    if (j0 < 0 || j1 >= static_cast<int>(psi.size()))
        throw std::invalid_argument("psi grid must bracket pi/2");
}

}  // namespace

double FilterSpec::eval(double t) const {
    int e = k - n + 1;
    double p = e == 0 ? 1.0 : std::pow(std::abs(t), e);
    if (kind == KernelKind::sign_type) return scale * p * (t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0));
    if (kind == KernelKind::abs_type) return scale * p;
    throw std::logic_error("delta kernels have no pointwise values");
}

FilterSpec weight_h(int n, int k) {
    if ((n != 2 && n != 3) || k < 0 || k > 2)
        throw std::invalid_argument("unsupported (n,k)");
    FilterSpec spec;
    spec.n = n;
    spec.k = k;
    if (k <= n - 2) {
        spec.kind = KernelKind::delta_derivative;
        spec.delta_order = n - k - 2;
        spec.scale = 1.0;
    } else {
        if (k >= n + 2) throw std::invalid_argument("unsupported (n,k): factorial underflow");
        spec.kind = (k - n) % 2 != 0 ? KernelKind::sign_type : KernelKind::abs_type;
        spec.scale = 1.0 / (2.0 * factorial(k - n + 1));
    }
    return spec;
}

double GTable::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double GTable::sample(int a, double s_val) const {
    const std::size_t n = s.size();
    double ds = s[1] - s[0];
    double t = (s_val - s[0]) / ds;
    if (t < 0.0 || t > static_cast<double>(n - 1)) return 0.0;
    std::size_t i = std::min(static_cast<std::size_t>(t), n - 2);
    double f = t - i;
    auto r = row(a);
    return r[i] * (1.0 - f) + r[i + 1] * f;
}

double cone_inner_value(std::span<const double> row, const std::vector<double>& psi,
                        const FilterSpec& spec) {
    if (psi.empty()) throw std::invalid_argument("empty psi grid");
    if (spec.kind != KernelKind::delta_derivative) {
        double dpsi = kPi / psi.size();
        double acc = 0.0;
        for (std::size_t j = 0; j < psi.size(); ++j)
            acc += row[j] * spec.eval(-std::cos(psi[j]));
        return acc * dpsi;
    }
    int j0, j1;
    bracket_half_pi(psi, j0, j1);
    double t0 = std::cos(psi[j0]), t1 = std::cos(psi[j1]);  // t0 > 0 > t1
    double c0 = row[j0] / std::sqrt(1.0 - t0 * t0);
    double c1 = row[j1] / std::sqrt(1.0 - t1 * t1);
    if (spec.delta_order == 0) return (c0 * (0.0 - t1) + c1 * t0) / (t0 - t1);
    if (spec.delta_order == 1) return (c0 - c1) / (t0 - t1);
    throw std::invalid_argument("delta order > 1 not supported");
}

BeamKernel::BeamKernel(const DirectionGrid& dirs, const Vec3& beta, const FilterSpec& spec,
                       int circle_nodes) {
    if (spec.kind != KernelKind::delta_derivative) {
        dense_.resize(dirs.count());
        for (int i = 0; i < dirs.count(); ++i)
            dense_[i] = dirs.weights[i] * spec.eval(-dirs.nodes[i].dot(beta));
        return;
    }
    if (dirs.dim == 2) {
        if (spec.delta_order != 0)
            throw std::invalid_argument("2D beam delta kernels support order 0 only");
        // <delta(sigma.beta), D> on S^1 is D at the two perpendicular
        // directions; linear interpolation in angle.
        int n = dirs.count();
        double beta_ang = std::atan2(beta.y, beta.x);
        for (int side = 0; side < 2; ++side) {
            double ang = beta_ang + (side == 0 ? 1.0 : -1.0) * kPi / 2;
            double pos = ang / (2.0 * kPi / n);
            double fl = std::floor(pos);
            int i0 = static_cast<int>(fl) % n;
            if (i0 < 0) i0 += n;
            double f = pos - fl;
            stencil_idx_.push_back(i0);
            stencil_w_.push_back(1.0 - f);
            stencil_idx_.push_back((i0 + 1) % n);
            stencil_w_.push_back(f);
        }
        return;
    }
    if (dirs.count() < 1000)
        throw std::invalid_argument("direction grid too coarse for circle interpolation");
    DirectionIndex index(dirs);
    auto [e1, e2] = perp_basis(beta);
    double dphi = 2.0 * kPi / circle_nodes;
    // delta: the great circle sigma.beta = 0. delta': central difference of
    // the azimuthal band integral at t = +-dt.
    double dt = spec.delta_order == 0 ? 0.0 : 2.0 * std::sqrt(4.0 * kPi / dirs.count());
    std::vector<std::pair<double, double>> bands;  // (t, functional factor)
    if (spec.delta_order == 0) {
        bands = {{0.0, dphi}};
    } else if (spec.delta_order == 1) {
        bands = {{dt, dphi / (2.0 * dt)}, {-dt, -dphi / (2.0 * dt)}};
    } else {
        throw std::invalid_argument("delta order > 1 not supported");
    }
    for (auto [t, factor] : bands) {
        double r = std::sqrt(1.0 - t * t);
        for (int j = 0; j < circle_nodes; ++j) {
            double phi = j * dphi;
            Vec3 dir = t * beta + (r * std::cos(phi)) * e1 + (r * std::sin(phi)) * e2;
            int idx[4];
            double w[4];
            index.stencil(dir, idx, w);
            for (int s = 0; s < 4; ++s) {
                stencil_idx_.push_back(idx[s]);
                stencil_w_.push_back(factor * w[s]);
            }
        }
    }
}

double BeamKernel::apply(std::span<const double> vertex_row) const {
    double acc = 0.0;
    if (!dense_.empty()) {
        for (std::size_t i = 0; i < dense_.size(); ++i) acc += dense_[i] * vertex_row[i];
        return acc;
    }
    for (std::size_t s = 0; s < stencil_idx_.size(); ++s)
        acc += stencil_w_[s] * vertex_row[stencil_idx_[s]];
    return acc;
}

double BeamKernel::apply_sparse(std::span<const int> idx, std::span<const double> val) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) acc += dense_[idx[i]] * val[i];
    return acc;
}

ConeGAccumulator::ConeGAccumulator(const DirectionGrid& axes, std::vector<double> psi,
                                   const FilterSpec& spec, const SGrid& grid)
    : axes_(axes), psi_(std::move(psi)), spec_(spec), grid_(grid) {
    if (psi_.empty()) throw std::invalid_argument("empty psi grid");
    if (spec_.kind != KernelKind::delta_derivative) {
        double dpsi = kPi / psi_.size();
        kernel_w_.resize(psi_.size());
        for (std::size_t j = 0; j < psi_.size(); ++j)
            kernel_w_[j] = spec_.eval(-std::cos(psi_[j])) * dpsi;
    }
    samples_.resize(axes_.count());
}

void ConeGAccumulator::add_vertex(const Vec3& u, std::span<const double> slice) {
    const int n_psi = static_cast<int>(psi_.size());
    int j0 = 0, j1 = 0;
    double t0 = 0, t1 = 0;
    if (spec_.kind == KernelKind::delta_derivative) {
        bracket_half_pi(psi_, j0, j1);
        t0 = std::cos(psi_[j0]);
        t1 = std::cos(psi_[j1]);
    }
    for (int a = 0; a < axes_.count(); ++a) {
        const double* row = slice.data() + static_cast<std::size_t>(a) * n_psi;
        double inner;
        if (spec_.kind != KernelKind::delta_derivative) {
            inner = 0.0;
            for (int j = 0; j < n_psi; ++j) inner += row[j] * kernel_w_[j];
        } else {
            double c0 = row[j0] / std::sqrt(1.0 - t0 * t0);
            double c1 = row[j1] / std::sqrt(1.0 - t1 * t1);
            inner = spec_.delta_order == 0 ? (c0 * (0.0 - t1) + c1 * t0) / (t0 - t1)
                                           : (c0 - c1) / (t0 - t1);
        }
        double s = u.dot(axes_.nodes[a]);
        if (std::abs(s) <= grid_.s_max) samples_[a].push_back({s, inner});
    }
}

GTable ConeGAccumulator::finalize() const {
    BinTable bt(grid_, axes_.count());
    bt.samples = samples_;
    return bt.finalize(axes_, spec_);
}

GTable g_from_cone(const ConeSinogram& cone, const FilterSpec& spec, const SGrid& grid) {
    if (spec.n != cone.vertices.dim || spec.k != cone.k)
        throw std::invalid_argument("filter spec does not match sinogram (n,k)");
    ConeGAccumulator acc(cone.axes, cone.psi, spec, grid);
    for (int u = 0; u < cone.vertices.count(); ++u)
        acc.add_vertex(cone.vertices.points[u], cone.slice(u));
    return acc.finalize();
}

GTable g_from_beam(const BeamSinogram& beam, const DirectionGrid& axes, const FilterSpec& spec,
                   const SGrid& grid, int max_per_bin) {
    if (spec.n != beam.vertices.dim || spec.k != beam.k)
        throw std::invalid_argument("filter spec does not match sinogram (n,k)");
    const int n_u = beam.vertices.count();
    const int n_dir = beam.directions.count();

    // Compressed nonzero entries per vertex; rays missing the support are
    // exact zeros and dominate the rows.
    std::vector<std::vector<int>> nz_idx(n_u);
    std::vector<std::vector<double>> nz_val(n_u);
    bool sparse = spec.kind != KernelKind::delta_derivative;
    if (sparse) {
        for (int u = 0; u < n_u; ++u) {
            const double* row = beam.values.data() + static_cast<std::size_t>(u) * n_dir;
            for (int i = 0; i < n_dir; ++i)
                if (row[i] != 0.0) {
                    nz_idx[u].push_back(i);
                    nz_val[u].push_back(row[i]);
                }
        }
    }

    BinTable bt(grid, axes.count());
    std::vector<int> taken(grid.count);
    for (int a = 0; a < axes.count(); ++a) {
        const Vec3& beta = axes.nodes[a];
        BeamKernel kern(beam.directions, beta, spec);
        std::fill(taken.begin(), taken.end(), 0);
        for (int u = 0; u < n_u; ++u) {
            double s = beam.vertices.points[u].dot(beta);
            int b = bt.bin_of(s);
            if (b < 0) continue;
            if (max_per_bin > 0 && taken[b] >= max_per_bin) continue;
            ++taken[b];
            double inner = sparse ? kern.apply_sparse(nz_idx[u], nz_val[u])
                                  : kern.apply({beam.values.data() +
                                                    static_cast<std::size_t>(u) * n_dir,
                                                static_cast<std::size_t>(n_dir)});
            bt.add(a, s, inner);
        }
    }
    return bt.finalize(axes, spec);
}

GTable g_from_radon(const RadonSinogram& radon, const FilterSpec& spec, const SGrid& grid) {
    const int n_s = static_cast<int>(radon.s.size());
    const int n_axes = radon.axes.count();
    double dsig = radon.s[1] - radon.s[0];

    GTable t;
    t.axes = radon.axes;
    t.s = make_s_grid(grid.s_max, grid.count);
    t.values.assign(static_cast<std::size_t>(n_axes) * grid.count, 0.0);
    t.counts.assign(t.values.size(), 1);

    for (int a = 0; a < n_axes; ++a) {
        const double* rf = radon.values.data() + static_cast<std::size_t>(a) * n_s;
        auto row = t.row(a);
        if (spec.kind != KernelKind::delta_derivative) {
            if (std::abs(rf[0]) > 1e-12 || std::abs(rf[n_s - 1]) > 1e-12)
                throw std::invalid_argument("radon s grid does not pad the support");
            for (int b = 0; b < grid.count; ++b) {
                double acc = 0.0;
                for (int j = 0; j < n_s; ++j) acc += rf[j] * spec.eval(t.s[b] - radon.s[j]);
                row[b] = acc * dsig;
            }
        } else {
            // h * Rf = Rf^{(m)}: central differences on the sinogram grid,
            // then linear interpolation onto the output bins.
            std::vector<double> der(rf, rf + n_s);
            for (int m = 0; m < spec.delta_order; ++m) {
                std::vector<double> next(n_s);
                for (int j = 1; j + 1 < n_s; ++j) next[j] = (der[j + 1] - der[j - 1]) / (2 * dsig);
                next[0] = (-3 * der[0] + 4 * der[1] - der[2]) / (2 * dsig);
                next[n_s - 1] = (3 * der[n_s - 1] - 4 * der[n_s - 2] + der[n_s - 3]) / (2 * dsig);
                der = std::move(next);
            }
            for (int b = 0; b < grid.count; ++b) {
                double pos = (t.s[b] - radon.s[0]) / dsig;
                if (pos < 0 || pos > n_s - 1) {
                    row[b] = 0.0;
                    continue;
                }
                int j = std::min(static_cast<int>(pos), n_s - 2);
                double f = pos - j;
                row[b] = der[j] * (1 - f) + der[j + 1] * f;
            }
        }
    }
    return t;
}

GTable derivative_s(const GTable& table, int order) {
    if (order < 1 || order > 3) throw std::invalid_argument("derivative order must be 1..3");
    const int n = static_cast<int>(table.s.size());
    if (n < order + 2) throw std::invalid_argument("s grid too small for derivative");
    double h = table.s[1] - table.s[0];

    GTable out = table;
    for (int a = 0; a < table.axes.count(); ++a) {
        auto src = table.row(a);
        auto dst = out.row(a);
        auto one_sided = [&](int i, int dir) {
            // 2nd-order one-sided stencils; dir=+1 forward, -1 backward.
            switch (order) {
                case 1:
                    return dir * (-3 * src[i] + 4 * src[i + dir] - src[i + 2 * dir]) / (2 * h);
                case 2:
                    return (2 * src[i] - 5 * src[i + dir] + 4 * src[i + 2 * dir] -
                            src[i + 3 * dir]) /
                           (h * h);
                default:
                    return dir *
                           (-5 * src[i] + 18 * src[i + dir] - 24 * src[i + 2 * dir] +
                            14 * src[i + 3 * dir] - 3 * src[i + 4 * dir]) /
                           (2 * h * h * h);
            }
        };
        int margin = order == 3 ? 2 : 1;
        for (int i = 0; i < n; ++i) {
            if (i < margin) {
                dst[i] = one_sided(i, +1);
            } else if (i >= n - margin) {
                dst[i] = one_sided(i, -1);
            } else {
                switch (order) {
                    case 1:
                        dst[i] = (src[i + 1] - src[i - 1]) / (2 * h);
                        break;
                    case 2:
                        dst[i] = (src[i + 1] - 2 * src[i] + src[i - 1]) / (h * h);
                        break;
                    default:
                        dst[i] = (src[i + 2] - 2 * src[i + 1] + 2 * src[i - 1] - src[i - 2]) /
                                 (2 * h * h * h);
                        break;
                }
            }
        }
    }
    return out;
}

GTable hilbert(const GTable& table) {
    const int n = static_cast<int>(table.s.size());
    int m = 1;
    while (m < 4 * n) m <<= 1;
    const int off = (m - n) / 2;

    fftw_complex* buf = fftw_alloc_complex(m);
    fftw_complex* spec = fftw_alloc_complex(m);
    fftw_plan fwd = fftw_plan_dft_1d(m, buf, spec, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan inv = fftw_plan_dft_1d(m, spec, buf, FFTW_BACKWARD, FFTW_ESTIMATE);

    GTable out = table;
    for (int a = 0; a < table.axes.count(); ++a) {
        auto src = table.row(a);
        auto dst = out.row(a);
        for (int i = 0; i < m; ++i) buf[i][0] = buf[i][1] = 0.0;
        for (int i = 0; i < n; ++i) buf[off + i][0] = src[i];
        fftw_execute(fwd);
        // Multiplier -i sgn(freq); DC and Nyquist are zeroed.
        spec[0][0] = spec[0][1] = 0.0;
        spec[m / 2][0] = spec[m / 2][1] = 0.0;
        for (int f = 1; f < m / 2; ++f) {
            double re = spec[f][0], im = spec[f][1];
            spec[f][0] = im;
            spec[f][1] = -re;
            re = spec[m - f][0];
            im = spec[m - f][1];
            spec[m - f][0] = -im;
            spec[m - f][1] = re;
        }
        fftw_execute(inv);
        for (int i = 0; i < n; ++i) dst[i] = buf[off + i][0] / m;
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(buf);
    fftw_free(spec);
    return out;
}

GTable smooth_binomial(const GTable& table, int passes) {
    static const double kKernel[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    GTable out = table;
    const int n = static_cast<int>(table.s.size());
    std::vector<double> tmp(n);
    for (int a = 0; a < table.axes.count(); ++a) {
        auto row = out.row(a);
        for (int p = 0; p < passes; ++p) {
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int t = -2; t <= 2; ++t)
                    acc += kKernel[t + 2] * row[std::clamp(i + t, 0, n - 1)];
                tmp[i] = acc;
            }
            std::copy(tmp.begin(), tmp.end(), row.begin());
        }
    }
    return out;
}

}  // namespace wct
