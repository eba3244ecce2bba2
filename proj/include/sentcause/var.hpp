#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sentcause/ingest.hpp"
#include "sentcause/stats.hpp"

namespace sentcause {

struct VarSpec {
    std::size_t p = 1;
    std::vector<std::string> column_names;
};

/// Stacked responses and regressors for a VAR(p).
struct LagDesign {
    Eigen::MatrixXd y;  ///< T_eff x k
    DesignMatrix x;     ///< T_eff x (1 + k p): [1, Y_{t-1}, ..., Y_{t-p}], lag-major then series
};

/// Minimum frame length accepted for a k-variable VAR(p): rows > k p + k + 5.
[[nodiscard]] constexpr std::size_t min_var_rows(std::size_t k, std::size_t p) noexcept { return k * p + k + 6; }

/// Rows t = p .. T-1 (0-based). Throws InsufficientDataError when the frame is too short.
[[nodiscard]] LagDesign build_lag_matrix(const AlignedFrame& frame, std::size_t p);

/// Same design with the sample starting at 0-based row `first_row` (>= p); used to put
/// several lag orders on a common sample.
[[nodiscard]] LagDesign build_lag_matrix(const AlignedFrame& frame, std::size_t p, std::size_t first_row);

struct VarFit {
    VarSpec spec;
    Eigen::VectorXd mu;                   ///< k
    std::vector<Eigen::MatrixXd> theta;   ///< p matrices, k x k; theta[i](eq, series)
    Eigen::MatrixXd residuals;            ///< T_eff x k
    Eigen::MatrixXd sigma;                ///< E'E / T_eff
    Eigen::VectorXd mu_se;
    std::vector<Eigen::MatrixXd> theta_se;
    Eigen::VectorXd mu_t;
    std::vector<Eigen::MatrixXd> theta_t;
    std::vector<double> rss;              ///< per equation
    std::size_t t_eff = 0;
    std::size_t df_resid = 0;

    /// Largest modulus among the companion-matrix eigenvalues (< 1 for a stable system).
    /// Diagnostic only; fits are never rejected on it.
    [[nodiscard]] double max_root_modulus() const;
};

/// Equation-by-equation OLS on the shared lag design.
[[nodiscard]] VarFit fit_var(const AlignedFrame& frame, std::size_t p);
[[nodiscard]] VarFit fit_var(const LagDesign& design, const VarSpec& spec);

/// Flattens (mu, theta) for equation `eq` in design-column order.
[[nodiscard]] Eigen::VectorXd flatten_equation(const VarFit& fit, std::size_t eq);
/// Inverse of flatten_equation across all equations: column e of `coefs` is equation e.
void reshape_coefficients(const Eigen::MatrixXd& coefs, std::size_t k, std::size_t p, Eigen::VectorXd& mu,
                          std::vector<Eigen::MatrixXd>& theta);

struct LagSelection {
    std::size_t p = 1;
    std::vector<double> aic;  ///< aic[i] is the criterion at p = i + 1
    std::size_t t_eff = 0;    ///< common sample size
};

/// AIC-minimising lag in 1..p_max, all candidates fit on rows p_max..T-1; ties go to smaller p.
[[nodiscard]] LagSelection select_lag_detail(const AlignedFrame& frame, std::size_t p_max);
[[nodiscard]] std::size_t select_lag(const AlignedFrame& frame, std::size_t p_max);

/// Coefficient/t-stat grid laid out as rows [s1(-1)..s1(-p), s2(-1)..s2(-p), ..., C] and one
/// column per equation.
struct CoefficientTable {
    struct Cell {
        double coef = 0.0;
        double se = 0.0;
        double tstat = 0.0;
        bool significant_5pct = false;  ///< two-sided Student-t at df_resid
    };
    std::vector<std::string> equations;
    std::vector<std::string> row_labels;
    std::vector<std::vector<Cell>> cells;  ///< cells[row][equation]
    std::size_t p = 0;
    std::size_t t_eff = 0;
    double max_root_modulus = 0.0;
};

[[nodiscard]] CoefficientTable coefficient_table(const VarFit& fit);

/// Row label in the "RT (-1)" style.
[[nodiscard]] std::string lag_label(const std::string& series, std::size_t lag);

}  // namespace sentcause
