#include <exception>

#include "sentcause/breadth.hpp"
#include "sentcause/errors.hpp"
#include "sentcause/granger.hpp"

namespace sentcause {

const char* transform_key(Transform t) noexcept {
    switch (t) {
        case Transform::Levels: return "levels";
        case Transform::ReturnVsSentimentChange: return "rt_dsent";
        case Transform::ReturnChangeVsSentiment: return "drt_sent";
        case Transform::ReturnChangeVsSentimentChange: return "drt_dsent";
    }
    return "?";
}

const char* transform_title(Transform t) noexcept {
    switch (t) {
        case Transform::Levels: return "Stock return & sentiment";
        case Transform::ReturnVsSentimentChange: return "Stock return & sentiment change";
        case Transform::ReturnChangeVsSentiment: return "Stock return change & sentiment";
        case Transform::ReturnChangeVsSentimentChange: return "Stock return change & sentiment change";
    }
    return "?";
}

const char* indicator_key(Indicator i) noexcept { return i == Indicator::Sent ? "SENT" : "ARMS"; }
const char* direction_key(Direction d) noexcept { return d == Direction::Test1 ? "test1" : "test2"; }

bool differences_returns(Transform t) noexcept {
    return t == Transform::ReturnChangeVsSentiment || t == Transform::ReturnChangeVsSentimentChange;
}

bool differences_sentiment(Transform t) noexcept {
    return t == Transform::ReturnVsSentimentChange || t == Transform::ReturnChangeVsSentimentChange;
}

std::string returns_label(Transform t) { return differences_returns(t) ? "ΔRT" : "RT"; }

std::string sentiment_label(Transform t, Indicator i) {
    return (differences_sentiment(t) ? "Δ" : "") + std::string(indicator_key(i));
}

std::size_t ExperimentReport::unavailable_cells() const {
    std::size_t n = 0;
    for (const auto& [key, cell] : cells) n += cell.result ? 0 : 1;
    return n;
}

namespace {

struct FamilyOutput {
    FamilyKey key;
    std::size_t rows = 0;
    std::vector<std::pair<CellKey, GrangerCell>> cells;
    std::vector<std::pair<VarKey, VarTableCell>> tables;
    LagChoice aic;
};

FamilyOutput compute_family(Transform tr, Indicator ind, const TimeSeries& returns, const TimeSeries& sentiment,
                            const ExperimentOptions& options) {
    FamilyOutput out;
    out.key = {tr, ind};
    const std::string r_name = returns_label(tr);
    const std::string s_name = sentiment_label(tr, ind);

    std::optional<AlignedFrame> frame;
    std::string frame_error;
    try {
        const TimeSeries r = differences_returns(tr) ? diff_series(returns, r_name) : returns.renamed(r_name);
        const TimeSeries s = differences_sentiment(tr) ? diff_series(sentiment, s_name) : sentiment.renamed(s_name);
        const TimeSeries pair[] = {r, s};
        frame = align(pair);
        out.rows = frame->rows();
    } catch (const Error& e) {
        frame_error = e.what();
    }

    for (std::size_t lag : options.lags) {
        for (Direction dir : kAllDirections) {
            GrangerCell cell;
            if (!frame) {
                cell.error = frame_error;
            } else {
                try {
                    cell.result = dir == Direction::Test1 ? granger_test(*frame, r_name, s_name, lag)
                                                          : granger_test(*frame, s_name, r_name, lag);
                } catch (const Error& e) {
                    cell.error = e.what();
                }
            }
            out.cells.emplace_back(CellKey{tr, ind, lag, dir}, std::move(cell));
        }
        VarTableCell table;
        if (!frame) {
            table.error = frame_error;
        } else {
            try {
                table.table = coefficient_table(fit_var(*frame, lag));
            } catch (const Error& e) {
                table.error = e.what();
            }
        }
        out.tables.emplace_back(VarKey{tr, ind, lag}, std::move(table));
    }

    if (!frame) {
        out.aic.error = frame_error;
    } else {
        try {
            out.aic.selection = select_lag_detail(*frame, options.p_max_for_aic);
        } catch (const Error& e) {
            out.aic.error = e.what();
        }
    }
    return out;
}

void validate(const ExperimentOptions& options) {
    if (options.lags.empty()) throw DataError("experiment needs at least one lag");
    for (std::size_t lag : options.lags) {
        if (lag < 1) throw DataError("experiment lags must be >= 1");
    }
    if (options.p_max_for_aic < 1) throw DataError("p_max_for_aic must be >= 1");
}

std::vector<FamilyKey> family_keys() {
    std::vector<FamilyKey> keys;
    for (Transform t : kAllTransforms) {
        for (Indicator i : kAllIndicators) keys.push_back({t, i});
    }
    return keys;
}

ExperimentReport assemble(const std::string& market, const ExperimentOptions& options,
                          std::vector<FamilyOutput>& families) {
    ExperimentReport report;
    report.market = market;
    report.lags = options.lags;
    for (auto& f : families) {
        report.frame_rows[f.key] = f.rows;
        report.aic_lag[f.key] = std::move(f.aic);
        for (auto& [k, c] : f.cells) report.cells[k] = std::move(c);
        for (auto& [k, t] : f.tables) report.var_tables[k] = std::move(t);
    }
    return report;
}

const TimeSeries& pick(Indicator i, const TimeSeries& sent, const TimeSeries& arms) {
    return i == Indicator::Sent ? sent : arms;
}

}  // namespace

ExperimentReport run_experiment_serial(const TimeSeries& returns, const TimeSeries& sent, const TimeSeries& arms,
                                       const std::string& market, const ExperimentOptions& options) {
    validate(options);
    std::vector<FamilyOutput> families;
    for (const FamilyKey& key : family_keys()) {
        families.push_back(
            compute_family(key.transform, key.indicator, returns, pick(key.indicator, sent, arms), options));
    }
    return assemble(market, options, families);
}

ExperimentReport run_experiment(const TimeSeries& returns, const TimeSeries& sent, const TimeSeries& arms,
                                const std::string& market, const ExperimentOptions& options) {
    validate(options);
    const std::vector<FamilyKey> keys = family_keys();
    const auto n = static_cast<std::ptrdiff_t>(keys.size());
    std::vector<FamilyOutput> families(keys.size());
    std::vector<std::exception_ptr> failures(keys.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            families[u] = compute_family(keys[u].transform, keys[u].indicator, returns,
                                         pick(keys[u].indicator, sent, arms), options);
        } catch (...) {
            failures[u] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return assemble(market, options, families);
}

}  // namespace sentcause
