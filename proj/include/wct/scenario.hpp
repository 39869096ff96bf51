#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wct/recon.hpp"

namespace wct {

// Everything needed to run one simulate/reconstruct experiment.
struct RunConfig {
    std::string name = "custom";
    int n = 2;
    int k = 1;
    DataKind kind = DataKind::cone;
    GeometryDescriptor geometry;
    int axes_count = 400;  // plane-direction (beta) grid size
    int psi_count = 90;    // cone half-opening samples
    int n_phi = 360;       // 3D cone azimuthal quadrature
    int dir_count = 0;     // beam ray directions
    int grid_size = 256;   // output image side
    bool full_volume = false;  // 3D: cube instead of the three planes
    double noise = 0.0;
    std::uint64_t seed = 1234;
    bool smooth = false;    // request smoothing even where the default is off
    int smooth_passes = 0;  // 0 = auto, scaled to dimension/weight/noise
    int s_bins = 129;
    int max_per_bin = 4;   // beam assembly; ignored by cone/radon
};

struct Scenario {
    std::string name;
    std::string summary;  // shown by --list-scenarios
    RunConfig config;
};

const std::vector<Scenario>& scenarios();
// Throws std::invalid_argument for unknown names.
RunConfig scenario_config(const std::string& name);

Phantom run_phantom(const RunConfig& cfg);
VertexSet run_vertices(const RunConfig& cfg);
DirectionGrid run_axes(const RunConfig& cfg);
DirectionGrid run_beam_directions(const RunConfig& cfg);
std::vector<double> run_psi(const RunConfig& cfg);
SGrid run_s_grid(const RunConfig& cfg);
std::vector<ImageGrid> run_outputs(const RunConfig& cfg);
ReconConfig to_recon_config(const RunConfig& cfg);

nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

}  // namespace wct
