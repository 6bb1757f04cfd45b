#include "grm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <tuple>

#include "grm/engine.hpp"

namespace grm {

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell, int trial) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(cell), static_cast<std::uint64_t>(trial));
}

void sort_rows(std::vector<SweepRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.cva_deg, a.t_grm, a.t_loom, a.trial) <
               std::tie(b.cva_deg, b.t_grm, b.t_loom, b.trial);
    });
}

SweepTable run_sweep(const SweepGrid& grid, const SimParams& base, int workers) {
    grid.validate();

    struct Job {
        SimParams params;
        SweepRow row;
    };
    std::vector<Job> jobs;
    jobs.reserve(grid.cell_count() * static_cast<std::size_t>(grid.trials_per_cell));
    std::size_t cell = 0;
    for (double cva : grid.cva_deg) {
        for (double tg : grid.t_grm) {
            for (double tl : grid.t_loom) {
                for (int trial = 0; trial < grid.trials_per_cell; ++trial) {
                    Job j;
                    j.params = base;
                    j.params.cva = deg_to_rad(cva);
                    j.params.T_grm = tg;
                    j.params.T_loom = tl;
                    j.row.cva_deg = cva;
                    j.row.t_grm = tg;
                    j.row.t_loom = tl;
                    j.row.trial = trial;
                    j.row.seed = trial_seed(grid.base_seed, cell, trial);
                    jobs.push_back(std::move(j));
                }
                ++cell;
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            Job& j = jobs[k];
            try {
                const TrialResult r = run_trial(j.params, j.row.seed);
                j.row.counts = r.counts;
                j.row.metrics = r.metrics;
            } catch (const std::exception& e) {
                j.row.error = e.what();
            }
        }
    };

    unsigned n = workers > 0 ? static_cast<unsigned>(workers) : std::thread::hardware_concurrency();
    n = std::clamp<unsigned>(n, 1u, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (n == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
    }

    SweepTable table;
    table.rows.reserve(jobs.size());
    for (auto& j : jobs) table.rows.push_back(std::move(j.row));
    sort_rows(table.rows);
    table.cells = aggregate_cells(table.rows);
    return table;
}

std::vector<CellAggregate> aggregate_cells(std::span<const SweepRow> rows) {
    std::vector<CellAggregate> cells;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        std::vector<Metrics> metrics;
        CellAggregate c;
        c.cva_deg = rows[i].cva_deg;
        c.t_grm = rows[i].t_grm;
        c.t_loom = rows[i].t_loom;
        while (j < rows.size() && rows[j].cva_deg == c.cva_deg && rows[j].t_grm == c.t_grm &&
               rows[j].t_loom == c.t_loom) {
            ++c.trials;
            if (rows[j].counts) metrics.push_back(rows[j].metrics);
            else ++c.failed;
            ++j;
        }
        if (!metrics.empty()) c.metrics = aggregate_metrics(metrics);
        cells.push_back(std::move(c));
        i = j;
    }
    return cells;
}

}  // namespace grm
