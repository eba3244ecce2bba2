#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentcause/breadth.hpp"
#include "sentcause/granger.hpp"
#include "sentcause/ingest.hpp"
#include "sentcause/stats.hpp"

namespace sentcause {

/// ADF outcome for one named series, or the reason it could not be computed.
struct AdfRow {
    std::string series;
    std::optional<AdfResult> result;
    std::size_t max_lags = 0;
    std::string error;
};

// Granger report (the 32-cell grid for the default lags).
[[nodiscard]] nlohmann::ordered_json granger_json(const ExperimentReport& report);
[[nodiscard]] std::string granger_csv(const ExperimentReport& report);
/// One grid per transformation: rows {SENT, ARMS}, columns Lag<p> Test1/Test2.
[[nodiscard]] std::string granger_markdown(const ExperimentReport& report);

// VAR coefficient tables.
[[nodiscard]] std::string var_tables_csv(const ExperimentReport& report);
[[nodiscard]] std::string var_tables_markdown(const ExperimentReport& report);
/// Single table body, e.g. "| RT (-1) | 0.0369 (1.8825) | ... |" rows.
[[nodiscard]] std::string render_var_table_markdown(const CoefficientTable& table);
/// "coef (t)" with a trailing '*' when significant at 5%.
[[nodiscard]] std::string render_coefficient_cell(const CoefficientTable::Cell& cell);

/// Wide per-date indicator file: date,rt,sent,arms,adv,dec,unchanged,adv_vol,dec_vol.
[[nodiscard]] std::string indicators_csv(const TimeSeries& returns, std::span<const BreadthRecord> breadth,
                                         const TimeSeries& sent, const TimeSeries& arms);

/// `date,value`, missing rows omitted.
[[nodiscard]] std::string series_csv(const TimeSeries& s);

[[nodiscard]] std::vector<AdfRow> adf_battery(std::span<const TimeSeries> series);
[[nodiscard]] std::string adf_csv(std::span<const AdfRow> rows);

}  // namespace sentcause
