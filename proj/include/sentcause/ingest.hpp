#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentcause/date.hpp"

namespace sentcause {

struct PriceBar {
    std::string ticker;
    Date date;
    double close = 0.0;        ///< > 0
    std::int64_t volume = 0;   ///< >= 0
};

/// Validated daily panel for one market. Bars are held sorted by (date, ticker) and
/// grouped per calendar date.
class PricePanel {
public:
    PricePanel() = default;

    /// Validates invariants (close > 0, volume >= 0, unique (ticker, date)) and sorts.
    /// Throws DataError / DuplicateKeyError.
    PricePanel(std::string market, std::vector<PriceBar> bars);

    [[nodiscard]] const std::string& market() const noexcept { return market_; }
    [[nodiscard]] std::span<const Date> calendar() const noexcept { return calendar_; }
    [[nodiscard]] std::span<const PriceBar> bars() const noexcept { return bars_; }

    /// Bars of the i-th calendar date, sorted by ticker.
    [[nodiscard]] std::span<const PriceBar> day(std::size_t i) const;

    [[nodiscard]] std::size_t num_dates() const noexcept { return calendar_.size(); }
    [[nodiscard]] std::vector<std::string> tickers() const;

private:
    std::string market_;
    std::vector<PriceBar> bars_;
    std::vector<Date> calendar_;
    std::vector<std::size_t> day_offsets_;  // size = calendar_.size() + 1
};

/// Named, date-indexed sequence; absent values are explicit (`std::nullopt`), never NaN.
class TimeSeries {
public:
    struct Point {
        Date date;
        std::optional<double> value;
        bool operator==(const Point&) const = default;
    };

    TimeSeries() = default;
    /// Throws DataError if dates are not strictly increasing or a value is non-finite.
    TimeSeries(std::string name, std::vector<Point> points);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const Point> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::size_t defined_count() const noexcept;
    /// Defined values in date order (missing slots skipped).
    [[nodiscard]] std::vector<double> defined_values() const;
    [[nodiscard]] TimeSeries renamed(std::string name) const;

    bool operator==(const TimeSeries&) const = default;

private:
    std::string name_;
    std::vector<Point> points_;
};

/// Shared-calendar frame with no missing entries.
class AlignedFrame {
public:
    struct Column {
        std::string name;
        std::vector<double> values;
        bool operator==(const Column&) const = default;
    };

    AlignedFrame() = default;
    /// Throws DataError when column lengths disagree with `dates` or fewer than 2 columns.
    AlignedFrame(std::vector<Date> dates, std::vector<Column> columns);

    [[nodiscard]] std::span<const Date> dates() const noexcept { return dates_; }
    [[nodiscard]] std::span<const Column> columns() const noexcept { return columns_; }
    [[nodiscard]] std::size_t rows() const noexcept { return dates_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
    /// Index of the named column; throws DataError when absent.
    [[nodiscard]] std::size_t column_index(const std::string& name) const;
    [[nodiscard]] const Column& column(const std::string& name) const;
    /// Columns re-expressed as fully defined TimeSeries (for re-alignment).
    [[nodiscard]] std::vector<TimeSeries> as_series() const;

    bool operator==(const AlignedFrame&) const = default;

private:
    std::vector<Date> dates_;
    std::vector<Column> columns_;
};

/// Parses `date,ticker,close,volume` (LF or CRLF). Errors carry the 1-based line number.
[[nodiscard]] PricePanel parse_price_csv(std::istream& input, const std::string& market);

/// Parses an index file `date,close` into a TimeSeries of closes named `name`.
[[nodiscard]] TimeSeries parse_index_csv(std::istream& input, const std::string& name = "INDEX");

/// Simple (non-log) market return as a decimal fraction, one point per panel calendar date.
/// With an index, r_t is the index return; otherwise the equal-weighted mean of per-stock
/// returns over tickers priced on both t-1 and t. The first date is always missing.
[[nodiscard]] TimeSeries market_return_series(const PricePanel& panel,
                                              const std::optional<TimeSeries>& index_series,
                                              const std::string& name = "RT");

/// Listwise deletion onto the dates where every series is defined; column order follows input.
[[nodiscard]] AlignedFrame align(std::span<const TimeSeries> series);

}  // namespace sentcause
