#pragma once
// Flat `key = value` configuration files.
//
// Model keys mirror the fly-model parameter table (dt, R, N, l, d_eye, v_min,
// v_max, P01, T_loom, T_grm, CVA_deg, theta_i_deg, delta_sigma_deg,
// lambda_sigma, n_points). Harness keys: horizon_steps, collision_distance,
// extrapolation_horizon, fn_per_collision, sweep_cva_deg, sweep_t_grm,
// sweep_t_loom, trials, base_seed, seed, frame_stride, workers.
// List values are comma separated. `#` starts a comment.

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grm/state.hpp"

namespace grm {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepGrid {
    std::vector<double> cva_deg{30.0};
    std::vector<double> t_grm{6.0};
    std::vector<double> t_loom{32.0};
    int trials_per_cell = 1;
    std::uint64_t base_seed = 1;

    std::size_t cell_count() const { return cva_deg.size() * t_grm.size() * t_loom.size(); }
    void validate() const;
};

struct HarnessConfig {
    SimParams params;
    SweepGrid grid;
    std::uint64_t seed = 1;   ///< single-trial seed for `simulate`
    int frame_stride = 100;
    int workers = 0;          ///< 0: one per hardware thread
};

/// Parses config text; `origin` names the source in error messages.
HarnessConfig parse_config(std::string_view text, const std::string& origin = "<config>");

HarnessConfig load_config(const std::filesystem::path& path);

}  // namespace grm
