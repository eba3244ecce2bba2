#include "sentcause/granger.hpp"

#include <algorithm>

#include "sentcause/errors.hpp"

namespace sentcause {

GrangerResult granger_test(const AlignedFrame& frame, const std::string& cause, const std::string& effect,
                           std::size_t p) {
    if (p < 1) throw DataError("Granger lag order must be >= 1");
    if (cause == effect) throw DataError("Granger test needs two distinct columns");
    const auto& x_col = frame.column(cause).values;
    const auto& y_col = frame.column(effect).values;
    const std::size_t t = frame.rows();
    if (t < min_var_rows(2, p)) {
        throw InsufficientDataError("Granger test at lag " + std::to_string(p) + " needs more than " +
                                    std::to_string(2 * p + 7) + " rows, frame has " + std::to_string(t));
    }
    const std::size_t t_eff = t - p;
    const auto rows = static_cast<Eigen::Index>(t_eff);

    RowMatrix unrestricted(rows, static_cast<Eigen::Index>(1 + 2 * p));
    std::vector<double> y(t_eff);
    for (std::size_t r = 0; r < t_eff; ++r) {
        const std::size_t row = r + p;
        const auto ri = static_cast<Eigen::Index>(r);
        y[r] = y_col[row];
        unrestricted(ri, 0) = 1.0;
        for (std::size_t lag = 1; lag <= p; ++lag) {
            unrestricted(ri, static_cast<Eigen::Index>(lag)) = y_col[row - lag];
            unrestricted(ri, static_cast<Eigen::Index>(p + lag)) = x_col[row - lag];
        }
    }
    std::vector<std::string> names{"C"};
    for (std::size_t lag = 1; lag <= p; ++lag) names.push_back(lag_label(effect, lag));
    std::vector<std::string> restricted_names = names;
    for (std::size_t lag = 1; lag <= p; ++lag) names.push_back(lag_label(cause, lag));
    RowMatrix restricted = unrestricted.leftCols(static_cast<Eigen::Index>(1 + p));

    const OlsFit fit_u = ols_fit(DesignMatrix(std::move(unrestricted), std::move(names)), y);
    const OlsFit fit_r = ols_fit(DesignMatrix(std::move(restricted), std::move(restricted_names)), y);

    GrangerResult res;
    res.cause = cause;
    res.effect = effect;
    res.p = p;
    res.t_eff = t_eff;
    res.df_num = p;
    res.df_den = t_eff - 2 * p - 1;
    res.rss_restricted = fit_r.rss;
    res.rss_unrestricted = fit_u.rss;

    double sum_sq = 0.0;
    for (double v : y) sum_sq += v * v;
    if (fit_u.rss <= kPerfectFitRelativeRss * sum_sq) {
        res.f_stat.reset();
        res.p_value = 0.0;
    } else {
        const double num = std::max(0.0, fit_r.rss - fit_u.rss) / static_cast<double>(res.df_num);
        const double den = fit_u.rss / static_cast<double>(res.df_den);
        res.f_stat = num / den;
        res.p_value = f_sf(*res.f_stat, static_cast<double>(res.df_num), static_cast<double>(res.df_den));
    }
    res.significant_5pct = res.p_value < kSignificanceLevel;
    return res;
}

}  // namespace sentcause
