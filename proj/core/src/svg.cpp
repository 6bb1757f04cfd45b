#include "grm/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "grm/csv.hpp"
#include "grm/perception.hpp"

namespace grm {

namespace {

constexpr double kPlotSize = 480.0;
constexpr double kMargin = 60.0;
constexpr double kPxPerMm = 10.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SvgError("cannot open '" + path.string() + "' for writing");
    out << body;
    if (!out) throw SvgError("write failed for '" + path.string() + "'");
}

const char* agent_color(AgentId id) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette[id % 10];
}

}  // namespace

std::size_t emit_scatter_svg(std::span<const CellAggregate> cells, const std::filesystem::path& path,
                             ScatterOptions options) {
    if (cells.empty()) throw std::invalid_argument("emit_scatter_svg: no cells to plot");
    const double W = kPlotSize + 2 * kMargin;
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << W
      << "\" viewBox=\"0 0 " << W << ' ' << W << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << W << "\" fill=\"white\"/>\n"
      << "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlotSize
      << "\" height=\"" << kPlotSize << "\"/>\n";
    for (int k = 0; k <= 10; ++k) {
        const double f = k / 10.0;
        const double x = kMargin + f * kPlotSize;
        const double y = kMargin + (1.0 - f) * kPlotSize;
        s << "<line x1=\"" << fmt(x) << "\" y1=\"" << kMargin + kPlotSize << "\" x2=\"" << fmt(x)
          << "\" y2=\"" << kMargin + kPlotSize + 5 << "\"/>\n"
          << "<line x1=\"" << kMargin - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kMargin << "\" y2=\""
          << fmt(y) << "\"/>\n";
    }
    s << "</g>\n<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int k = 0; k <= 10; k += 2) {
        const double f = k / 10.0;
        s << "<text x=\"" << fmt(kMargin + f * kPlotSize) << "\" y=\"" << kMargin + kPlotSize + 20
          << "\" text-anchor=\"middle\">" << fmt(f).substr(0, 3) << "</text>\n"
          << "<text x=\"" << kMargin - 10 << "\" y=\"" << fmt(kMargin + (1.0 - f) * kPlotSize + 4)
          << "\" text-anchor=\"end\">" << fmt(f).substr(0, 3) << "</text>\n";
    }
    s << "<text x=\"" << kMargin + kPlotSize / 2 << "\" y=\"" << W - 15
      << "\" text-anchor=\"middle\">mobility</text>\n"
      << "<text x=\"15\" y=\"" << kMargin + kPlotSize / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << kMargin + kPlotSize / 2 << ")\">safety</text>\n</g>\n<g id=\"cells\">\n";

    std::size_t markers = 0;
    for (const auto& c : cells) {
        if (!c.metrics.mobility.mean || !c.metrics.safety.mean) continue;
        const double mob = *c.metrics.mobility.mean;
        const double saf = *c.metrics.safety.mean;
        const double x = kMargin + mob * kPlotSize;
        const double y = kMargin + (1.0 - saf) * kPlotSize;
        s << "<g class=\"cell\"><title>CVA=" << format_shortest(c.cva_deg)
          << " deg, T_GRM=" << format_shortest(c.t_grm) << " rad/s, T_LOOM=" << format_shortest(c.t_loom)
          << " rad/s, mobility=" << fmt(mob) << ", safety=" << fmt(saf) << ", trials=" << c.trials
          << "</title>";
        if (options.cva_glyphs) {
            const double a = deg_to_rad(c.cva_deg);
            const double dx = 8.0 * std::cos(a);
            const double dy = 8.0 * std::sin(a);
            s << "<line x1=\"" << fmt(x - dx) << "\" y1=\"" << fmt(y + dy) << "\" x2=\"" << fmt(x + dx)
              << "\" y2=\"" << fmt(y - dy) << "\" stroke=\"#333\" stroke-width=\"2\"/>";
        } else {
            s << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
              << "\" r=\"4\" fill=\"#1f77b4\" fill-opacity=\"0.7\" stroke=\"#0b3c5d\"/>";
        }
        s << "</g>\n";
        ++markers;
    }
    s << "</g>\n</svg>\n";
    write_file(path, s.str());
    return markers;
}

std::size_t emit_frames(const TrialResult& trial, const std::filesystem::path& out_dir, long stride) {
    if (!trial.trajectory) throw std::invalid_argument("emit_frames: trial has no trajectory log");
    if (stride < 1) throw std::invalid_argument("emit_frames: stride must be at least 1");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw SvgError("cannot create '" + out_dir.string() + "': " + ec.message());

    const SimParams& p = trial.params;
    const auto& steps = trial.trajectory->steps;
    const double W = p.R * kPxPerMm;
    std::size_t written = 0;

    for (std::size_t t = 0; t < steps.size(); t += static_cast<std::size_t>(stride)) {
        const auto& frame = steps[t];
        const long now = static_cast<long>(t);

        // Most recent stop per agent at or before this step.
        std::vector<std::ptrdiff_t> last_stop(frame.size(), -1);
        for (std::size_t k = 0; k < trial.stops.size(); ++k) {
            const auto& st = trial.stops[k];
            if (st.t < now && st.agent < frame.size()) last_stop[st.agent] = static_cast<std::ptrdiff_t>(k);
        }
        std::vector<bool> flash(frame.size(), false);
        for (const auto& c : trial.collisions) {
            if (c.t <= now && now - c.t < kCollisionFlashSteps) {
                if (c.pair.first < frame.size()) flash[c.pair.first] = true;
                if (c.pair.second < frame.size()) flash[c.pair.second] = true;
            }
        }

        std::ostringstream s;
        s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\""
          << W << "\" viewBox=\"0 0 " << W << ' ' << W << "\">\n"
          << "<title>step " << t << ", t=" << fmt(static_cast<double>(t) * p.dt) << " s</title>\n"
          << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << W << "\" fill=\"#fafafa\" stroke=\"black\"/>\n";

        auto px = [&](Vec2 v) { return Vec2{v.x * kPxPerMm, W - v.y * kPxPerMm}; };

        for (std::size_t i = 0; i < frame.size(); ++i) {
            const auto& a = frame[i];
            if (a.moving || last_stop[i] < 0) continue;
            const auto k = static_cast<std::size_t>(last_stop[i]);
            const StopClass cls = k < trial.stop_classes.size() ? trial.stop_classes[k] : StopClass::excluded;
            const char* color = cls == StopClass::true_positive
                                    ? "#2ca02c"
                                    : (cls == StopClass::false_positive ? "#d62728" : "#999999");
            const Vec2 c = px(a.pos);
            s << "<circle class=\"stop " << to_string(cls) << "\" cx=\"" << fmt(c.x) << "\" cy=\""
              << fmt(c.y) << "\" r=\"" << fmt(1.6 * kPxPerMm) << "\" fill=\"none\" stroke=\"" << color
              << "\" stroke-width=\"2\"/>\n";
            for (AgentId cause : trial.stops[k].cause_agents) {
                if (cause >= frame.size()) continue;
                const Vec2 d = min_image_delta(a.pos, frame[cause].pos, p.R);
                const Vec2 e = px(a.pos + d);
                s << "<line class=\"cause\" x1=\"" << fmt(c.x) << "\" y1=\"" << fmt(c.y) << "\" x2=\""
                  << fmt(e.x) << "\" y2=\"" << fmt(e.y) << "\" stroke=\"" << color << "\"/>\n";
            }
        }

        for (std::size_t i = 0; i < frame.size(); ++i) {
            const auto& a = frame[i];
            AgentState st;
            st.id = static_cast<AgentId>(i);
            st.pos = a.pos;
            st.heading = a.heading;
            const double scale = flash[i] ? 1.8 : 1.0;
            const auto pts = body_points_world(st, p.l * scale);
            // Outline order: nose, right side front to back, tail, left side back to front.
            static constexpr std::size_t ring[] = {0, 1, 3, 5, 7, 9, 11, 10, 8, 6, 4, 2};
            s << "<polygon class=\"agent" << (flash[i] ? " collided" : "") << "\" points=\"";
            for (std::size_t r : ring) {
                const Vec2 q = px(pts[r]);
                s << fmt(q.x) << ',' << fmt(q.y) << ' ';
            }
            s << "\" fill=\"" << agent_color(st.id) << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
        }
        s << "</svg>\n";

        char name[64];
        std::snprintf(name, sizeof name, "frame_%06zu.svg", t);
        write_file(out_dir / name, s.str());
        ++written;
    }
    return written;
}

}  // namespace grm
