#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sentcause/date.hpp"
#include "sentcause/ingest.hpp"

namespace sentcause {

/// One trading day's advance/decline breadth, classified on the (t-1, t) close move.
struct BreadthRecord {
    Date date;
    std::int64_t adv = 0;
    std::int64_t dec = 0;
    std::int64_t adv_vol = 0;  ///< day-t volume summed over advancers
    std::int64_t dec_vol = 0;  ///< day-t volume summed over decliners
    std::int64_t unchanged = 0;

    bool operator==(const BreadthRecord&) const = default;
};

/// One record per calendar date after the first. Only tickers priced on both dates count.
/// OpenMP-parallel over dates when built with OpenMP; result is identical to the serial kernel.
[[nodiscard]] std::vector<BreadthRecord> daily_breadth(const PricePanel& panel);

/// Single-threaded reference kernel.
[[nodiscard]] std::vector<BreadthRecord> daily_breadth_serial(const PricePanel& panel);

/// ADV/DEC per date; missing when dec = 0 or adv = 0.
[[nodiscard]] TimeSeries sent_series(std::span<const BreadthRecord> records, const std::string& name = "SENT");

/// (ADV/ADVvol)/(DEC/DECvol) per date; missing when any of the four fields is 0.
[[nodiscard]] TimeSeries arms_series(std::span<const BreadthRecord> records, const std::string& name = "ARMS");

/// First difference s_t - s_{t-1}; missing unless both ends are present. First date missing.
/// Throws InsufficientDataError for fewer than 2 points. Default name prefixes "D".
[[nodiscard]] TimeSeries diff_series(const TimeSeries& s);
[[nodiscard]] TimeSeries diff_series(const TimeSeries& s, const std::string& name);

}  // namespace sentcause
