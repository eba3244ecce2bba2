#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sentcause/breadth.hpp"
#include "sentcause/config.hpp"
#include "sentcause/errors.hpp"
#include "sentcause/granger.hpp"
#include "sentcause/report.hpp"

namespace sentcause {

/// Everything computed for one market before anything is written.
struct MarketAnalysis {
    std::string market;
    TimeSeries returns;
    std::vector<BreadthRecord> breadth;
    TimeSeries sent;
    TimeSeries arms;
    ExperimentReport report;
    std::vector<AdfRow> adf;  ///< empty unless requested
};

/// Pure pipeline: returns, breadth, indicators, the experiment grid and optional ADF checks.
[[nodiscard]] MarketAnalysis analyze_market(const PricePanel& panel, const std::optional<TimeSeries>& index,
                                            const ExperimentOptions& options, bool run_adf);

struct MarketOutcome {
    std::string label;
    bool ok = false;
    std::optional<ErrorKind> error_kind;
    std::string error;
    std::vector<std::filesystem::path> files;
};

struct RunSummary {
    int exit_code = 0;  ///< 0, or the exit code of the first failing market (or the run-level failure)
    std::vector<MarketOutcome> markets;
    std::string run_error;
};

/// Runs every market in config order; one market's failure never stops the others.
/// Writes <label>_granger.{json,csv,md}, <label>_var_tables.{csv,md}, <label>_indicators.csv
/// and <label>_adf.csv (when run_adf) under output_dir.
[[nodiscard]] RunSummary run(const RunConfig& config);

}  // namespace sentcause
