// grmsim: command-line front end for trials, sweeps, theorem checks and plots.
//
// Exit codes: 0 success, 1 verification counterexample, 2 configuration error,
// 3 any other runtime failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "grm/config.hpp"
#include "grm/csv.hpp"
#include "grm/engine.hpp"
#include "grm/svg.hpp"
#include "grm/sweep.hpp"
#include "grm/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitCounterexample = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

grm::HarnessConfig config_or_default(const std::string& path) {
    return path.empty() ? grm::parse_config("", "<defaults>") : grm::load_config(path);
}

std::string metric(const std::optional<double>& m) {
    if (!m) return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *m);
    return buf;
}

void write_trial_logs(const grm::TrialResult& r, const fs::path& dir) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "stops.csv");
        out << "t,agent,channel,class,causes\n";
        for (std::size_t k = 0; k < r.stops.size(); ++k) {
            const auto& s = r.stops[k];
            out << s.t << ',' << s.agent << ','
                << (s.channel == grm::StopChannel::grm ? "grm"
                                                       : (s.channel == grm::StopChannel::loom ? "loom" : "both"))
                << ',' << grm::to_string(r.stop_classes[k]) << ',';
            for (std::size_t c = 0; c < s.cause_agents.size(); ++c) {
                out << (c ? ";" : "") << s.cause_agents[c];
            }
            out << '\n';
        }
    }
    {
        std::ofstream out(dir / "collisions.csv");
        out << "t,agent_a,agent_b\n";
        for (const auto& c : r.collisions) out << c.t << ',' << c.pair.first << ',' << c.pair.second << '\n';
    }
    if (r.trajectory) {
        std::ofstream out(dir / "trajectory.csv");
        out << "step,agent,x,y,heading,moving\n";
        char buf[160];
        for (std::size_t t = 0; t < r.trajectory->steps.size(); ++t) {
            const auto& frame = r.trajectory->steps[t];
            for (std::size_t i = 0; i < frame.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%zu,%zu,%.9g,%.9g,%.9g,%d\n", t, i, frame[i].pos.x,
                              frame[i].pos.y, frame[i].heading, frame[i].moving ? 1 : 0);
                out << buf;
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRM and looming collision-avoidance simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> trials;
    long stride = 0;
    bool log_trajectories = false;

    auto* simulate = app.add_subcommand("simulate", "Run one trial and write its event logs");
    simulate->add_option("--config", config_path, "Config file (key = value)")->check(CLI::ExistingFile);
    simulate->add_option("--seed", seed, "Trial seed");
    simulate->add_option("--out", out, "Output directory")->required();
    simulate->add_flag("--log-trajectories", log_trajectories, "Record per-step agent states");
    simulate->add_option("--stride", stride, "Write an SVG frame every N steps (needs --log-trajectories)");

    auto* sweep = app.add_subcommand("sweep", "Run the (CVA, T_grm, T_loom) grid and write a CSV");
    sweep->add_option("--config", config_path, "Config file (key = value)")->check(CLI::ExistingFile);
    sweep->add_option("--seed", seed, "Base seed (overrides base_seed)");
    sweep->add_option("--trials", trials, "Trials per cell (overrides trials)");
    sweep->add_option("--out", out, "Output CSV path")->required();
    std::string sweep_svg;
    sweep->add_option("--svg", sweep_svg, "Also write the mobility/safety scatter here");

    auto* verify = app.add_subcommand("verify", "Run the randomised theorem checks");
    std::size_t samples = 1000;
    verify->add_option("--samples", samples, "Samples per suite")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Sampling seed");
    verify->add_option("--out", out, "Report path");

    auto* plot = app.add_subcommand("plot", "Turn a sweep CSV into a mobility/safety scatter SVG");
    std::string in_csv;
    bool cva_glyphs = false;
    plot->add_option("--in", in_csv, "Sweep CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", out, "Output SVG")->required();
    plot->add_flag("--cva-glyphs", cva_glyphs, "Draw CVA-angled bars instead of dots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*simulate) {
            const grm::HarnessConfig cfg = config_or_default(config_path);
            const std::uint64_t s = seed.value_or(cfg.seed);
            const bool want_frames = stride > 0;
            if (want_frames && !log_trajectories) {
                std::cerr << "--stride requires --log-trajectories\n";
                return kExitConfig;
            }
            const auto t0 = std::chrono::steady_clock::now();
            const grm::TrialResult r = grm::run_trial(cfg.params, s, {log_trajectories});
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_trial_logs(r, out);
            if (want_frames) {
                const auto n = grm::emit_frames(r, fs::path(out) / "frames", stride);
                std::cout << "frames: " << n << " written to " << (fs::path(out) / "frames").string() << '\n';
            }
            std::cout << "seed " << s << ", " << cfg.params.horizon_steps << " steps in " << secs << " s\n"
                      << "TP " << r.counts.tp << "  FP " << r.counts.fp << "  TN " << r.counts.tn << "  FN "
                      << r.counts.fn << "  (excluded " << r.counts.excluded << ")\n"
                      << "mobility " << metric(r.metrics.mobility) << "  safety " << metric(r.metrics.safety)
                      << '\n';
            return 0;
        }
        if (*sweep) {
            grm::HarnessConfig cfg = config_or_default(config_path);
            if (seed) cfg.grid.base_seed = *seed;
            if (trials) cfg.grid.trials_per_cell = *trials;
            cfg.grid.validate();
            const auto t0 = std::chrono::steady_clock::now();
            const grm::SweepTable table = grm::run_sweep(cfg.grid, cfg.params, cfg.workers);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            grm::emit_csv(table, out);
            for (const auto& c : table.cells) {
                std::printf("CVA %5s  T_grm %5s  T_loom %5s  mobility %s  safety %s%s\n",
                            grm::format_shortest(c.cva_deg).c_str(), grm::format_shortest(c.t_grm).c_str(),
                            grm::format_shortest(c.t_loom).c_str(), metric(c.metrics.mobility.mean).c_str(),
                            metric(c.metrics.safety.mean).c_str(), c.failed ? "  (failed trials)" : "");
            }
            std::cout << table.rows.size() << " trials in " << secs << " s -> " << out << '\n';
            if (!sweep_svg.empty()) grm::emit_scatter_svg(table.cells, sweep_svg);
            return 0;
        }
        if (*verify) {
            const grm::VerificationReport report = grm::verify_theorems(samples, seed.value_or(1));
            std::cout << report.to_text();
            if (!out.empty()) grm::write_report(report, out);
            return report.all_passed() ? 0 : kExitCounterexample;
        }
        if (*plot) {
            std::vector<grm::SweepRow> rows = grm::read_csv(in_csv);
            grm::sort_rows(rows);
            const auto cells = grm::aggregate_cells(rows);
            const auto n = grm::emit_scatter_svg(cells, out, {cva_glyphs});
            std::cout << n << " markers -> " << out << '\n';
            return 0;
        }
    } catch (const grm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
