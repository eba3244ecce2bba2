#include <cmath>
#include <limits>

#include "sentcause/errors.hpp"
#include "sentcause/stats.hpp"

namespace sentcause {

namespace {

/// Regresses ds[i] on [1, s[i], ds[i-1..i-q]] for i in [first, ds.size()).
OlsFit adf_regression(std::span<const double> s, const std::vector<double>& ds, std::size_t q, std::size_t first) {
    const std::size_t rows = ds.size() - first;
    RowMatrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(q + 2));
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t i = first + r;
        const auto row = static_cast<Eigen::Index>(r);
        x(row, 0) = 1.0;
        x(row, 1) = s[i];
        for (std::size_t j = 1; j <= q; ++j) x(row, static_cast<Eigen::Index>(j + 1)) = ds[i - j];
        y[r] = ds[i];
    }
    std::vector<std::string> names{"const", "level(-1)"};
    for (std::size_t j = 1; j <= q; ++j) names.push_back("diff(-" + std::to_string(j) + ")");
    return ols_fit(DesignMatrix(std::move(x), std::move(names)), y);
}

}  // namespace

std::size_t schwert_max_lags(std::size_t n) {
    return static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

AdfResult adf_test(const TimeSeries& s, std::size_t max_lags) {
    if (s.defined_count() != s.size()) throw DataError("ADF needs a fully defined series ('" + s.name() + "')");
    const auto values = s.defined_values();
    return adf_test(std::span<const double>(values), max_lags);
}

AdfResult adf_test(std::span<const double> s, std::size_t max_lags) {
    if (s.size() < max_lags + 10) {
        throw InsufficientDataError("ADF needs at least max_lags + 10 = " + std::to_string(max_lags + 10) +
                                    " observations, got " + std::to_string(s.size()));
    }
    std::vector<double> ds(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) ds[i] = s[i + 1] - s[i];

    std::size_t best_q = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q <= max_lags; ++q) {
        const OlsFit fit = adf_regression(s, ds, q, max_lags);
        const double n = static_cast<double>(fit.residuals.size());
        const double aic = std::log(fit.rss / n) + 2.0 * static_cast<double>(q + 2) / n;
        if (aic < best_aic) {
            best_aic = aic;
            best_q = q;
        }
    }

    const OlsFit fit = adf_regression(s, ds, best_q, best_q);
    if (!(fit.se(1) > 0.0)) throw SingularDesignError("ADF regression has zero residual variance");
    AdfResult out;
    out.statistic = fit.tstats(1);
    out.lags_used = best_q;
    out.nobs = static_cast<std::size_t>(fit.residuals.size());
    out.reject_unit_root_5pct = out.statistic < kAdfCritical5Pct;
    return out;
}

}  // namespace sentcause
