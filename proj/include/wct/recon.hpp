#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wct/filter.hpp"
#include "wct/forward.hpp"
#include "wct/phantom.hpp"

namespace wct {

enum class DataKind { cone, beam, radon };

struct ReconConfig {
    int n = 2;
    int k = 1;
    DataKind kind = DataKind::cone;
    Phantom phantom;  // metrics reference
    SGrid s_grid;
    bool smooth = false;
    int smooth_passes = 1;
    int max_per_bin = 0;        // beam assembly; 0 = all vertices
    DirectionGrid beam_axes;    // plane axes for the beam assembly
    double noise_level = 0.0;   // applied to the sinogram before filtering
    std::uint64_t noise_seed = 0;
    double mask_band_px = 2.0;  // jump-exclusion half-width, in cells
    std::vector<ImageGrid> outputs;  // descriptors; values ignored
};

struct Metrics {
    double rel_l2 = 0.0;
    double max_abs_err = 0.0;
};

struct ReconResult {
    std::vector<ImageGrid> images;
    std::vector<ImageGrid> references;
    Metrics metrics;
    GTable g;  // assembled plane data, kept for diagnostics
};

// Validates (n, k, kind) against the supported set; radon is accepted for
// any in-scope (n, k).
void validate_config(const ReconConfig& config);

// f(x) = c_n sum_beta w_beta F(x.beta, beta) with F linearly interpolated in
// s (zero outside its range); c_2 = 1/(4 pi) (Hilbert already applied in F),
// c_3 = -1/(8 pi^2).
ImageGrid backproject(const GTable& filtered, const ImageGrid& grid_descr, int n, int k);

// smooth (optional) -> d^{k+1}/ds^{k+1} -> Hilbert (even n) -> calibration sign.
GTable apply_filter_chain(const GTable& g, const ReconConfig& config);

// Filter chain + backprojection onto every output descriptor + metrics.
ReconResult finish_from_g(const GTable& g, const ReconConfig& config);

ReconResult reconstruct(const ReconConfig& config, const ConeSinogram& sinogram);
ReconResult reconstruct(const ReconConfig& config, const BeamSinogram& sinogram);
ReconResult reconstruct(const ReconConfig& config, const RadonSinogram& sinogram);

// 1 = cell participates in metrics; 0 = inside a band of half-width `band`
// (world units) around a primitive boundary.
std::vector<std::uint8_t> jump_mask(const ImageGrid& grid, const Phantom& ph, double band);

Metrics compute_metrics(const ImageGrid& recon, const ImageGrid& reference,
                        const std::vector<std::uint8_t>& mask);

enum class ProfileAxis { x, y, z, diagonal };

struct ProfileSeries {
    std::vector<double> t;      // position along the line
    std::vector<double> value;
};

// Nearest-row extraction along an axis line through `offset` (the other
// coordinates, in grid order), or along the main diagonal.
ProfileSeries profile(const ImageGrid& image, ProfileAxis axis, std::array<double, 2> offset);

}  // namespace wct
