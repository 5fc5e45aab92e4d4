#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pfc/metrics.hpp"
#include "pfc/sim_engine.hpp"
#include "pfc/steady_state.hpp"

namespace pfc {

/// Numeric CSV with a header row; '#' lines are carried as comments.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;

    std::size_t column(std::string_view name) const;  ///< throws on miss
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);
Trace read_trace_csv(const std::filesystem::path& path);

/// One summary row per (scenario, controller) pair.
struct SummaryRow {
    std::string scenario;
    std::string controller;
    double window_start = 0.0;
    double displacement_deg = 0.0;
    double thd_pct = 0.0;
    double power_factor = 0.0;
    double dc_error_V = 0.0;
};

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// `delta_rho,E,ratio` cell dump of a sweep grid.
void write_ratio_csv(std::ostream& out, const RatioGrid& grid);
void write_ratio_csv(const std::filesystem::path& path, const RatioGrid& grid);
RatioGrid read_ratio_csv(const std::filesystem::path& path);

}  // namespace pfc
