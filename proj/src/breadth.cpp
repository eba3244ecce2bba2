#include "sentcause/breadth.hpp"

#include "sentcause/errors.hpp"

namespace sentcause {

namespace {

BreadthRecord breadth_between(std::span<const PriceBar> prev, std::span<const PriceBar> cur, Date date) {
    BreadthRecord r;
    r.date = date;
    auto a = prev.begin();
    for (const auto& bar : cur) {
        while (a != prev.end() && a->ticker < bar.ticker) ++a;
        if (a == prev.end() || a->ticker != bar.ticker) continue;
        if (bar.close > a->close) {
            ++r.adv;
            r.adv_vol += bar.volume;
        } else if (bar.close < a->close) {
            ++r.dec;
            r.dec_vol += bar.volume;
        } else {
            ++r.unchanged;
        }
    }
    return r;
}

void require_two_dates(const PricePanel& panel) {
    if (panel.num_dates() < 2) {
        throw InsufficientDataError(panel.market() + ": breadth needs at least 2 calendar dates");
    }
}

}  // namespace

std::vector<BreadthRecord> daily_breadth_serial(const PricePanel& panel) {
    require_two_dates(panel);
    const auto cal = panel.calendar();
    std::vector<BreadthRecord> out;
    out.reserve(cal.size() - 1);
    for (std::size_t i = 1; i < cal.size(); ++i) {
        out.push_back(breadth_between(panel.day(i - 1), panel.day(i), cal[i]));
    }
    return out;
}

std::vector<BreadthRecord> daily_breadth(const PricePanel& panel) {
    require_two_dates(panel);
    const auto cal = panel.calendar();
    const auto n = static_cast<std::ptrdiff_t>(cal.size());
    std::vector<BreadthRecord> out(cal.size() - 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 1; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u - 1] = breadth_between(panel.day(u - 1), panel.day(u), cal[u]);
    }
    return out;
}

TimeSeries sent_series(std::span<const BreadthRecord> records, const std::string& name) {
    std::vector<TimeSeries::Point> pts;
    pts.reserve(records.size());
    for (const auto& r : records) {
        TimeSeries::Point p{r.date, std::nullopt};
        // a day with no advancers would give 0; kept missing so SENT stays strictly positive
        if (r.adv > 0 && r.dec > 0) p.value = static_cast<double>(r.adv) / static_cast<double>(r.dec);
        pts.push_back(p);
    }
    return TimeSeries(name, std::move(pts));
}

TimeSeries arms_series(std::span<const BreadthRecord> records, const std::string& name) {
    std::vector<TimeSeries::Point> pts;
    pts.reserve(records.size());
    for (const auto& r : records) {
        TimeSeries::Point p{r.date, std::nullopt};
        if (r.adv > 0 && r.dec > 0 && r.adv_vol > 0 && r.dec_vol > 0) {
            const double up = static_cast<double>(r.adv) / static_cast<double>(r.adv_vol);
            const double down = static_cast<double>(r.dec) / static_cast<double>(r.dec_vol);
            p.value = up / down;
        }
        pts.push_back(p);
    }
    return TimeSeries(name, std::move(pts));
}

TimeSeries diff_series(const TimeSeries& s) { return diff_series(s, "D" + s.name()); }

TimeSeries diff_series(const TimeSeries& s, const std::string& name) {
    if (s.size() < 2) throw InsufficientDataError("diff of '" + s.name() + "' needs at least 2 points");
    const auto src = s.points();
    std::vector<TimeSeries::Point> pts(src.size());
    pts[0] = {src[0].date, std::nullopt};
    for (std::size_t i = 1; i < src.size(); ++i) {
        pts[i].date = src[i].date;
        if (src[i].value && src[i - 1].value) pts[i].value = *src[i].value - *src[i - 1].value;
    }
    return TimeSeries(name, std::move(pts));
}

}  // namespace sentcause
