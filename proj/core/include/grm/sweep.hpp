#pragma once
// Parameter-grid sweeps over (CVA, T_grm, T_loom) with parallel trials.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grm/analysis.hpp"
#include "grm/config.hpp"
#include "grm/state.hpp"

namespace grm {

struct SweepRow {
    double cva_deg = 0.0;
    double t_grm = 0.0;
    double t_loom = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::optional<EncounterCounts> counts;  ///< empty when the trial failed
    Metrics metrics;
    std::string error;

    bool operator==(const SweepRow&) const = default;
};

struct CellAggregate {
    double cva_deg = 0.0;
    double t_grm = 0.0;
    double t_loom = 0.0;
    AggregateMetrics metrics;
    std::size_t trials = 0;
    std::size_t failed = 0;
};

struct SweepTable {
    std::vector<SweepRow> rows;         ///< sorted by (cva, t_grm, t_loom, trial)
    std::vector<CellAggregate> cells;   ///< same order as the rows' cells
};

/// Seed of trial `trial` in cell `cell`: derive_seed(base_seed, cell, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell, int trial);

/// `workers` = 0 uses std::thread::hardware_concurrency().
SweepTable run_sweep(const SweepGrid& grid, const SimParams& base, int workers = 0);

void sort_rows(std::vector<SweepRow>& rows);

/// Groups rows by cell (rows must be sorted) and averages per-trial metrics.
std::vector<CellAggregate> aggregate_cells(std::span<const SweepRow> rows);

}  // namespace grm
