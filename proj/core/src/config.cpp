#include "grm/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace grm {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view v, const std::string& where) {
    T out{};
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(where + ": cannot parse '" + std::string(v) + "' as a number");
    }
    return out;
}

std::vector<double> parse_list(std::string_view v, const std::string& where) {
    std::vector<double> out;
    while (true) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        if (item.empty()) throw ConfigError(where + ": empty list element");
        out.push_back(parse_number<double>(item, where));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

void SweepGrid::validate() const {
    if (cva_deg.empty() || t_grm.empty() || t_loom.empty()) {
        throw ConfigError("sweep grid: parameter lists must be non-empty");
    }
    if (trials_per_cell < 1) throw ConfigError("sweep grid: trials must be at least 1");
}

HarnessConfig parse_config(std::string_view text, const std::string& origin) {
    HarnessConfig cfg;
    SimParams& p = cfg.params;

    using Setter = std::function<void(std::string_view, const std::string&)>;
    auto real = [](double& dst) {
        return Setter([&dst](std::string_view v, const std::string& w) { dst = parse_number<double>(v, w); });
    };
    auto degrees = [](double& dst) {
        return Setter([&dst](std::string_view v, const std::string& w) {
            dst = deg_to_rad(parse_number<double>(v, w));
        });
    };
    auto integer = [](auto& dst) {
        return Setter([&dst](std::string_view v, const std::string& w) {
            dst = parse_number<std::remove_reference_t<decltype(dst)>>(v, w);
        });
    };
    auto list = [](std::vector<double>& dst) {
        return Setter([&dst](std::string_view v, const std::string& w) { dst = parse_list(v, w); });
    };

    const std::map<std::string, Setter, std::less<>> setters = {
        {"dt", real(p.dt)},
        {"R", real(p.R)},
        {"N", integer(p.N)},
        {"l", real(p.l)},
        {"d_eye", real(p.d_eye)},
        {"v_min", real(p.v_min)},
        {"v_max", real(p.v_max)},
        {"P01", real(p.P01)},
        {"T_loom", real(p.T_loom)},
        {"T_grm", real(p.T_grm)},
        {"CVA_deg", degrees(p.cva)},
        {"theta_i_deg", degrees(p.theta_i)},
        {"delta_sigma_deg", degrees(p.delta_sigma)},
        {"lambda_sigma", real(p.lambda_sigma)},
        {"n_points", integer(p.n_points)},
        {"horizon_steps", integer(p.horizon_steps)},
        {"collision_distance", real(p.collision_distance)},
        {"extrapolation_horizon", real(p.extrapolation_horizon)},
        {"fn_per_collision", integer(p.fn_per_collision)},
        {"sweep_cva_deg", list(cfg.grid.cva_deg)},
        {"sweep_t_grm", list(cfg.grid.t_grm)},
        {"sweep_t_loom", list(cfg.grid.t_loom)},
        {"trials", integer(cfg.grid.trials_per_cell)},
        {"base_seed", integer(cfg.grid.base_seed)},
        {"seed", integer(cfg.seed)},
        {"frame_stride", integer(cfg.frame_stride)},
        {"workers", integer(cfg.workers)},
    };

    std::size_t line_no = 0;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = origin + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
        if (value.empty()) throw ConfigError(where + ": missing value for '" + std::string(key) + "'");
        it->second(value, where);
    }

    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    cfg.grid.validate();
    if (cfg.frame_stride < 1) throw ConfigError(origin + ": frame_stride must be at least 1");
    return cfg;
}

HarnessConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

}  // namespace grm
