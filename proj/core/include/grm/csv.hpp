#pragma once
// Sweep table CSV. Header:
//   cva_deg,t_grm,t_loom,trial,seed,tp,fp,tn,fn,mobility,safety
// Grid values use the shortest round-trip decimal form, metrics six decimals,
// undefined metrics (and all count fields of a failed trial) an empty field.

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grm/sweep.hpp"

namespace grm {

inline constexpr std::string_view kCsvHeader =
    "cva_deg,t_grm,t_loom,trial,seed,tp,fp,tn,fn,mobility,safety";

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rows are sorted before formatting.
std::string format_csv(std::span<const SweepRow> rows);

void emit_csv(const SweepTable& table, const std::filesystem::path& path);

std::vector<SweepRow> parse_csv(std::string_view text);

std::vector<SweepRow> read_csv(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_shortest(double v);

}  // namespace grm
