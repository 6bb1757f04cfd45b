#pragma once
// SVG 1.1 output: the mobility/safety scatter and per-step trial frames.

#include <filesystem>
#include <span>
#include <stdexcept>

#include "grm/analysis.hpp"
#include "grm/sweep.hpp"

namespace grm {

class SvgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScatterOptions {
    bool cva_glyphs = false;  ///< draw a bar at angle CVA through each marker
};

/// Mobility on x, safety on y, both axes [0, 1]. Cells with an undefined mean
/// are skipped. Returns the number of markers drawn.
std::size_t emit_scatter_svg(std::span<const CellAggregate> cells, const std::filesystem::path& path,
                             ScatterOptions options = {});

/// Steps for which a collision keeps its pair drawn enlarged.
inline constexpr long kCollisionFlashSteps = 20;

/// One SVG per `stride` logged steps, written as frame_<step>.svg. Stopped
/// agents are ringed green (TP) or red (FP) with segments to their causes;
/// colliding pairs are drawn enlarged. Returns the number of files written.
std::size_t emit_frames(const TrialResult& trial, const std::filesystem::path& out_dir, long stride);

}  // namespace grm
