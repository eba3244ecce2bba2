#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sentcause/ingest.hpp"

namespace sentcause {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Regressor matrix with labelled columns. Invariants: rows > cols, all entries finite.
class DesignMatrix {
public:
    DesignMatrix() = default;
    /// Throws InsufficientDataError when rows <= cols, DataError on non-finite entries
    /// or a label count that differs from the column count.
    DesignMatrix(RowMatrix values, std::vector<std::string> col_names);

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    [[nodiscard]] const RowMatrix& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::string>& col_names() const noexcept { return col_names_; }

private:
    RowMatrix values_;
    std::vector<std::string> col_names_;
};

struct OlsFit {
    Eigen::VectorXd coefs;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    Eigen::VectorXd se;
    Eigen::VectorXd tstats;  ///< coefs / se; 0 when both are 0, signed infinity when only se is 0
    std::size_t df_resid = 0;
};

/// Largest accepted condition number of the column-equilibrated design.
inline constexpr double kMaxConditionNumber = 1e12;

/// Ordinary least squares through a Householder QR of the column-equilibrated design.
/// Throws SingularDesignError when a column is all zero or the condition number exceeds
/// kMaxConditionNumber; no regularisation fallback.
[[nodiscard]] OlsFit ols_fit(const DesignMatrix& x, std::span<const double> y);

/// Condition number (ratio of extreme singular values) of X after scaling each column to unit norm.
[[nodiscard]] double equilibrated_condition_number(const RowMatrix& x);

/// P(F_{d1,d2} <= x) through the regularized incomplete beta function. x < 0 yields 0.
[[nodiscard]] double f_cdf(double x, double d1, double d2);
/// Upper tail P(F_{d1,d2} > x), computed directly (no 1 - cdf cancellation).
[[nodiscard]] double f_sf(double x, double d1, double d2);

/// Two-sided p-value of a Student-t statistic with `df` degrees of freedom.
[[nodiscard]] double t_two_sided_p(double t, double df);

/// Multivariate VAR Akaike criterion: ln det(Sigma_ML) + 2 (k^2 p + k) / T_eff.
/// Requires T_eff > k p + k (throws InsufficientDataError otherwise).
[[nodiscard]] double aic_var(double log_det_sigma, std::size_t t_eff, std::size_t k, std::size_t p);

/// Dickey-Fuller 5% critical value, constant-only regression.
inline constexpr double kAdfCritical1Pct = -3.43;
inline constexpr double kAdfCritical5Pct = -2.86;
inline constexpr double kAdfCritical10Pct = -2.57;

struct AdfResult {
    double statistic = 0.0;
    std::size_t lags_used = 0;
    std::size_t nobs = 0;
    bool reject_unit_root_5pct = false;
};

/// Augmented Dickey-Fuller test, constant-only:
///   ds_t = c + gamma s_{t-1} + sum_{j<=q} phi_j ds_{t-j} + e_t,
/// q in [0, max_lags] picked by univariate AIC on a common sample, then refit on its
/// maximal sample. Statistic is the t-ratio of gamma.
/// Throws DataError if the series has missing values, InsufficientDataError when
/// size < max_lags + 10, SingularDesignError on a degenerate regression.
[[nodiscard]] AdfResult adf_test(const TimeSeries& s, std::size_t max_lags);
[[nodiscard]] AdfResult adf_test(std::span<const double> s, std::size_t max_lags);

/// Schwert's rule floor(12 (n/100)^{1/4}).
[[nodiscard]] std::size_t schwert_max_lags(std::size_t n);

}  // namespace sentcause
