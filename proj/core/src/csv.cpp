#include "grm/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace grm {

std::string format_shortest(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw CsvError("format_shortest: conversion failed");
    return std::string(buf.data(), ptr);
}

namespace {

std::string format_metric(const std::optional<double>& m) {
    if (!m) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *m);
    return buf;
}

template <typename T>
T parse_field(std::string_view f, std::size_t line, const char* name) {
    T out{};
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
    if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw CsvError("line " + std::to_string(line) + ": bad " + name + " field '" +
                       std::string(f) + "'");
    }
    return out;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        const auto c = line.find(',');
        out.push_back(line.substr(0, c));
        if (c == std::string_view::npos) break;
        line.remove_prefix(c + 1);
    }
    return out;
}

}  // namespace

std::string format_csv(std::span<const SweepRow> rows_in) {
    std::vector<SweepRow> rows(rows_in.begin(), rows_in.end());
    sort_rows(rows);
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += format_shortest(r.cva_deg) + ',' + format_shortest(r.t_grm) + ',' +
               format_shortest(r.t_loom) + ',' + std::to_string(r.trial) + ',' +
               std::to_string(r.seed) + ',';
        if (r.counts) {
            out += std::to_string(r.counts->tp) + ',' + std::to_string(r.counts->fp) + ',' +
                   std::to_string(r.counts->tn) + ',' + std::to_string(r.counts->fn) + ',';
        } else {
            out += ",,,,";
        }
        out += format_metric(r.metrics.mobility) + ',' + format_metric(r.metrics.safety) + '\n';
    }
    return out;
}

void emit_csv(const SweepTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open '" + path.string() + "' for writing");
    out << format_csv(table.rows);
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

std::vector<SweepRow> parse_csv(std::string_view text) {
    std::vector<SweepRow> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kCsvHeader) throw CsvError("line 1: unexpected header '" + std::string(line) + "'");
            header_seen = true;
            continue;
        }
        const auto f = split(line);
        if (f.size() != 11) {
            throw CsvError("line " + std::to_string(line_no) + ": expected 11 fields, got " +
                           std::to_string(f.size()));
        }
        SweepRow r;
        r.cva_deg = parse_field<double>(f[0], line_no, "cva_deg");
        r.t_grm = parse_field<double>(f[1], line_no, "t_grm");
        r.t_loom = parse_field<double>(f[2], line_no, "t_loom");
        r.trial = parse_field<int>(f[3], line_no, "trial");
        r.seed = parse_field<std::uint64_t>(f[4], line_no, "seed");
        if (!f[5].empty()) {
            EncounterCounts c;
            c.tp = parse_field<std::int64_t>(f[5], line_no, "tp");
            c.fp = parse_field<std::int64_t>(f[6], line_no, "fp");
            c.tn = parse_field<std::int64_t>(f[7], line_no, "tn");
            c.fn = parse_field<std::int64_t>(f[8], line_no, "fn");
            r.counts = c;
        } else {
            r.error = "trial failed";
        }
        if (!f[9].empty()) r.metrics.mobility = parse_field<double>(f[9], line_no, "mobility");
        if (!f[10].empty()) r.metrics.safety = parse_field<double>(f[10], line_no, "safety");
        rows.push_back(std::move(r));
    }
    if (!header_seen) throw CsvError("empty CSV: missing header");
    return rows;
}

std::vector<SweepRow> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_csv(ss.str());
    } catch (const CsvError& e) {
        throw CsvError(path.string() + ": " + e.what());
    }
}

}  // namespace grm
