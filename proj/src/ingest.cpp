#include "sentcause/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <string_view>
#include <tuple>

#include "sentcause/errors.hpp"

namespace sentcause {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::optional<double> parse_real(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v, std::chars_format::fixed | std::chars_format::scientific);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

/// Reads CSV lines, stripping CR and a UTF-8 BOM; checks the header.
class LineReader {
public:
    LineReader(std::istream& in, std::string_view expected_header) : in_(in) {
        std::string header;
        if (!next(header)) throw ParseError(1, "missing header, expected '" + std::string(expected_header) + "'");
        if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
        if (header != expected_header) {
            throw ParseError(1, "bad header '" + header + "', expected '" + std::string(expected_header) + "'");
        }
    }

    /// Next non-empty line; false at end of stream.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }

    [[nodiscard]] std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// PricePanel

PricePanel::PricePanel(std::string market, std::vector<PriceBar> bars)
    : market_(std::move(market)), bars_(std::move(bars)) {
    for (const auto& b : bars_) {
        if (!(b.close > 0.0) || !std::isfinite(b.close)) {
            throw DataError("close must be positive for " + b.ticker + " on " + b.date.iso());
        }
        if (b.volume < 0) throw DataError("negative volume for " + b.ticker + " on " + b.date.iso());
    }
    std::sort(bars_.begin(), bars_.end(), [](const PriceBar& a, const PriceBar& b) {
        return std::tie(a.date, a.ticker) < std::tie(b.date, b.ticker);
    });
    day_offsets_.push_back(0);
    for (std::size_t i = 0; i < bars_.size(); ++i) {
        if (i > 0 && bars_[i].date == bars_[i - 1].date && bars_[i].ticker == bars_[i - 1].ticker) {
            throw DuplicateKeyError("duplicate (ticker, date): (" + bars_[i].ticker + ", " + bars_[i].date.iso() + ")");
        }
        if (calendar_.empty() || calendar_.back() != bars_[i].date) {
            if (!calendar_.empty()) day_offsets_.push_back(i);
            calendar_.push_back(bars_[i].date);
        }
    }
    if (!calendar_.empty()) day_offsets_.push_back(bars_.size());
}

std::span<const PriceBar> PricePanel::day(std::size_t i) const {
    return std::span<const PriceBar>(bars_).subspan(day_offsets_.at(i), day_offsets_.at(i + 1) - day_offsets_[i]);
}

std::vector<std::string> PricePanel::tickers() const {
    std::vector<std::string> out;
    out.reserve(bars_.size());
    for (const auto& b : bars_) out.push_back(b.ticker);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// TimeSeries

TimeSeries::TimeSeries(std::string name, std::vector<Point> points)
    : name_(std::move(name)), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i > 0 && !(points_[i - 1].date < points_[i].date)) {
            throw DataError("series '" + name_ + "': dates not strictly increasing at " + points_[i].date.iso());
        }
        if (points_[i].value && !std::isfinite(*points_[i].value)) {
            throw DataError("series '" + name_ + "': non-finite value at " + points_[i].date.iso());
        }
    }
}

std::size_t TimeSeries::defined_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(points_.begin(), points_.end(), [](const Point& p) { return p.value.has_value(); }));
}

std::vector<double> TimeSeries::defined_values() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) {
        if (p.value) out.push_back(*p.value);
    }
    return out;
}

TimeSeries TimeSeries::renamed(std::string name) const {
    TimeSeries out = *this;
    out.name_ = std::move(name);
    return out;
}

// ---------------------------------------------------------------------------
// AlignedFrame

AlignedFrame::AlignedFrame(std::vector<Date> dates, std::vector<Column> columns)
    : dates_(std::move(dates)), columns_(std::move(columns)) {
    if (columns_.size() < 2) throw DataError("aligned frame needs at least 2 columns");
    for (const auto& c : columns_) {
        if (c.values.size() != dates_.size()) {
            throw DataError("column '" + c.name + "' length differs from the frame calendar");
        }
    }
}

std::size_t AlignedFrame::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return i;
    }
    throw DataError("frame has no column '" + name + "'");
}

const AlignedFrame::Column& AlignedFrame::column(const std::string& name) const {
    return columns_[column_index(name)];
}

std::vector<TimeSeries> AlignedFrame::as_series() const {
    std::vector<TimeSeries> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) {
        std::vector<TimeSeries::Point> pts(dates_.size());
        for (std::size_t i = 0; i < dates_.size(); ++i) pts[i] = {dates_[i], c.values[i]};
        out.emplace_back(c.name, std::move(pts));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

PricePanel parse_price_csv(std::istream& input, const std::string& market) {
    LineReader reader(input, "date,ticker,close,volume");
    struct Row {
        PriceBar bar;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::string line;
    while (reader.next(line)) {
        const std::size_t ln = reader.line_no();
        const auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw ParseError(ln, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        const auto date = Date::parse(fields[0]);
        if (!date) throw ParseError(ln, "bad date '" + std::string(fields[0]) + "'");
        if (fields[1].empty()) throw ParseError(ln, "empty ticker");
        const auto close = parse_real(fields[2]);
        if (!close) throw ParseError(ln, "unparsable close '" + std::string(fields[2]) + "'");
        if (!(*close > 0.0)) throw ParseError(ln, "close must be > 0");
        const auto volume = parse_integer(fields[3]);
        if (!volume) throw ParseError(ln, "unparsable volume '" + std::string(fields[3]) + "'");
        if (*volume < 0) throw ParseError(ln, "negative volume");
        rows.push_back({PriceBar{std::string(fields[1]), *date, *close, *volume}, ln});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.bar.date, a.bar.ticker, a.line) < std::tie(b.bar.date, b.bar.ticker, b.line);
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].bar.date == rows[i - 1].bar.date && rows[i].bar.ticker == rows[i - 1].bar.ticker) {
            throw DuplicateKeyError("duplicate (ticker, date) (" + rows[i].bar.ticker + ", " +
                                    rows[i].bar.date.iso() + ") on lines " + std::to_string(rows[i - 1].line) +
                                    " and " + std::to_string(rows[i].line));
        }
    }
    std::vector<PriceBar> bars;
    bars.reserve(rows.size());
    for (auto& r : rows) bars.push_back(std::move(r.bar));
    return PricePanel(market, std::move(bars));
}

TimeSeries parse_index_csv(std::istream& input, const std::string& name) {
    LineReader reader(input, "date,close");
    std::vector<std::pair<TimeSeries::Point, std::size_t>> rows;
    std::string line;
    while (reader.next(line)) {
        const std::size_t ln = reader.line_no();
        const auto fields = split_fields(line);
        if (fields.size() != 2) throw ParseError(ln, "expected 2 fields, got " + std::to_string(fields.size()));
        const auto date = Date::parse(fields[0]);
        if (!date) throw ParseError(ln, "bad date '" + std::string(fields[0]) + "'");
        const auto close = parse_real(fields[1]);
        if (!close) throw ParseError(ln, "unparsable close '" + std::string(fields[1]) + "'");
        if (!(*close > 0.0)) throw ParseError(ln, "close must be > 0");
        rows.push_back({TimeSeries::Point{*date, *close}, ln});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.date, a.second) < std::tie(b.first.date, b.second);
    });
    std::vector<TimeSeries::Point> pts;
    pts.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].first.date == rows[i - 1].first.date) {
            throw DuplicateKeyError("duplicate index date " + rows[i].first.date.iso() + " on lines " +
                                    std::to_string(rows[i - 1].second) + " and " + std::to_string(rows[i].second));
        }
        pts.push_back(rows[i].first);
    }
    return TimeSeries(name, std::move(pts));
}

// ---------------------------------------------------------------------------
// Returns

TimeSeries market_return_series(const PricePanel& panel, const std::optional<TimeSeries>& index_series,
                                 const std::string& name) {
    const auto cal = panel.calendar();
    std::vector<TimeSeries::Point> out(cal.size());
    for (std::size_t i = 0; i < cal.size(); ++i) out[i].date = cal[i];

    if (index_series) {
        std::map<Date, double> closes;
        for (const auto& p : index_series->points()) {
            if (!std::binary_search(cal.begin(), cal.end(), p.date)) {
                throw DataError("index date " + p.date.iso() + " is not in the " + panel.market() + " calendar");
            }
            if (p.value) closes.emplace(p.date, *p.value);
        }
        if (cal.size() < 2 || closes.size() < 2) {
            throw InsufficientDataError(panel.market() + ": fewer than 2 usable dates for index returns");
        }
        std::size_t usable = 0;
        for (std::size_t i = 1; i < cal.size(); ++i) {
            const auto prev = closes.find(cal[i - 1]);
            const auto cur = closes.find(cal[i]);
            if (prev != closes.end() && cur != closes.end()) {
                out[i].value = (cur->second - prev->second) / prev->second;
                ++usable;
            }
        }
        if (usable == 0) throw InsufficientDataError(panel.market() + ": no consecutive index closes");
        return TimeSeries(name, std::move(out));
    }

    if (cal.size() < 2) {
        throw InsufficientDataError(panel.market() + ": fewer than 2 calendar dates for returns");
    }
    for (std::size_t i = 1; i < cal.size(); ++i) {
        const auto prev = panel.day(i - 1);
        const auto cur = panel.day(i);
        double sum = 0.0;
        std::size_t n = 0;
        auto a = prev.begin();
        for (const auto& bar : cur) {
            while (a != prev.end() && a->ticker < bar.ticker) ++a;
            if (a != prev.end() && a->ticker == bar.ticker) {
                sum += (bar.close - a->close) / a->close;
                ++n;
            }
        }
        if (n > 0) out[i].value = sum / static_cast<double>(n);
    }
    return TimeSeries(name, std::move(out));
}

// ---------------------------------------------------------------------------
// Alignment

AlignedFrame align(std::span<const TimeSeries> series) {
    if (series.size() < 2) throw DataError("align needs at least 2 series");
    // Intersect the defined-date sets; every TimeSeries is date-sorted.
    std::vector<Date> dates;
    for (const auto& p : series[0].points()) {
        if (p.value) dates.push_back(p.date);
    }
    for (std::size_t s = 1; s < series.size(); ++s) {
        std::vector<Date> defined;
        for (const auto& p : series[s].points()) {
            if (p.value) defined.push_back(p.date);
        }
        std::vector<Date> kept;
        std::set_intersection(dates.begin(), dates.end(), defined.begin(), defined.end(), std::back_inserter(kept));
        dates = std::move(kept);
    }
    if (dates.size() < 2) {
        throw InsufficientOverlapError("aligned frame has " + std::to_string(dates.size()) + " rows, need at least 2");
    }
    std::vector<AlignedFrame::Column> columns;
    columns.reserve(series.size());
    for (const auto& s : series) {
        AlignedFrame::Column col{s.name(), {}};
        col.values.reserve(dates.size());
        auto it = s.points().begin();
        for (const auto& d : dates) {
            while (it->date < d) ++it;
            col.values.push_back(*it->value);
        }
        columns.push_back(std::move(col));
    }
    return AlignedFrame(std::move(dates), std::move(columns));
}

}  // namespace sentcause
