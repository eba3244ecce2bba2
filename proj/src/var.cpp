#include "sentcause/var.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "sentcause/errors.hpp"

namespace sentcause {

std::string lag_label(const std::string& series, std::size_t lag) {
    return series + " (-" + std::to_string(lag) + ")";
}

LagDesign build_lag_matrix(const AlignedFrame& frame, std::size_t p) { return build_lag_matrix(frame, p, p); }

LagDesign build_lag_matrix(const AlignedFrame& frame, std::size_t p, std::size_t first_row) {
    const std::size_t k = frame.cols();
    const std::size_t t = frame.rows();
    if (p < 1) throw DataError("VAR lag order must be >= 1");
    if (first_row < p) throw DataError("sample start precedes the first available lag");
    if (t < min_var_rows(k, p) || first_row >= t) {
        throw InsufficientDataError("VAR(" + std::to_string(p) + ") on " + std::to_string(k) + " series needs more than " +
                                    std::to_string(k * p + k + 5) + " rows, frame has " + std::to_string(t));
    }
    const std::size_t t_eff = t - first_row;
    const auto cols = frame.columns();

    Eigen::MatrixXd y(static_cast<Eigen::Index>(t_eff), static_cast<Eigen::Index>(k));
    RowMatrix x(static_cast<Eigen::Index>(t_eff), static_cast<Eigen::Index>(1 + k * p));
    for (std::size_t r = 0; r < t_eff; ++r) {
        const std::size_t row = first_row + r;
        const auto ri = static_cast<Eigen::Index>(r);
        x(ri, 0) = 1.0;
        for (std::size_t s = 0; s < k; ++s) y(ri, static_cast<Eigen::Index>(s)) = cols[s].values[row];
        for (std::size_t lag = 1; lag <= p; ++lag) {
            for (std::size_t s = 0; s < k; ++s) {
                x(ri, static_cast<Eigen::Index>(1 + (lag - 1) * k + s)) = cols[s].values[row - lag];
            }
        }
    }
    std::vector<std::string> names{"C"};
    for (std::size_t lag = 1; lag <= p; ++lag) {
        for (std::size_t s = 0; s < k; ++s) names.push_back(lag_label(cols[s].name, lag));
    }
    return LagDesign{std::move(y), DesignMatrix(std::move(x), std::move(names))};
}

void reshape_coefficients(const Eigen::MatrixXd& coefs, std::size_t k, std::size_t p, Eigen::VectorXd& mu,
                          std::vector<Eigen::MatrixXd>& theta) {
    const auto ki = static_cast<Eigen::Index>(k);
    mu = coefs.row(0).transpose();
    theta.assign(p, Eigen::MatrixXd::Zero(ki, ki));
    for (std::size_t lag = 0; lag < p; ++lag) {
        for (Eigen::Index eq = 0; eq < ki; ++eq) {
            for (Eigen::Index s = 0; s < ki; ++s) {
                theta[lag](eq, s) = coefs(static_cast<Eigen::Index>(1 + lag * k) + s, eq);
            }
        }
    }
}

Eigen::VectorXd flatten_equation(const VarFit& fit, std::size_t eq) {
    const std::size_t k = fit.spec.column_names.size();
    const std::size_t p = fit.spec.p;
    Eigen::VectorXd out(static_cast<Eigen::Index>(1 + k * p));
    const auto e = static_cast<Eigen::Index>(eq);
    out(0) = fit.mu(e);
    for (std::size_t lag = 0; lag < p; ++lag) {
        for (std::size_t s = 0; s < k; ++s) {
            out(static_cast<Eigen::Index>(1 + lag * k + s)) = fit.theta[lag](e, static_cast<Eigen::Index>(s));
        }
    }
    return out;
}

VarFit fit_var(const AlignedFrame& frame, std::size_t p) {
    VarSpec spec{p, {}};
    for (const auto& c : frame.columns()) spec.column_names.push_back(c.name);
    return fit_var(build_lag_matrix(frame, p), spec);
}

VarFit fit_var(const LagDesign& design, const VarSpec& spec) {
    const std::size_t k = spec.column_names.size();
    const std::size_t p = spec.p;
    const auto t_eff = design.y.rows();
    const auto ncoef = static_cast<Eigen::Index>(1 + k * p);
    if (design.x.cols() != static_cast<std::size_t>(ncoef) || design.y.cols() != static_cast<Eigen::Index>(k)) {
        throw DataError("lag design does not match the VAR spec");
    }

    Eigen::MatrixXd coefs(ncoef, static_cast<Eigen::Index>(k));
    Eigen::MatrixXd se(ncoef, static_cast<Eigen::Index>(k));
    Eigen::MatrixXd tstats(ncoef, static_cast<Eigen::Index>(k));
    VarFit fit;
    fit.spec = spec;
    fit.residuals.resize(t_eff, static_cast<Eigen::Index>(k));
    fit.t_eff = static_cast<std::size_t>(t_eff);
    for (std::size_t eq = 0; eq < k; ++eq) {
        const auto e = static_cast<Eigen::Index>(eq);
        const Eigen::VectorXd yv = design.y.col(e);
        const OlsFit ols = ols_fit(design.x, std::span<const double>(yv.data(), static_cast<std::size_t>(yv.size())));
        coefs.col(e) = ols.coefs;
        se.col(e) = ols.se;
        tstats.col(e) = ols.tstats;
        fit.residuals.col(e) = ols.residuals;
        fit.rss.push_back(ols.rss);
        fit.df_resid = ols.df_resid;
    }
    fit.sigma = (fit.residuals.transpose() * fit.residuals) / static_cast<double>(t_eff);
    fit.sigma = 0.5 * (fit.sigma + fit.sigma.transpose());
    reshape_coefficients(coefs, k, p, fit.mu, fit.theta);
    reshape_coefficients(se, k, p, fit.mu_se, fit.theta_se);
    reshape_coefficients(tstats, k, p, fit.mu_t, fit.theta_t);
    return fit;
}

double VarFit::max_root_modulus() const {
    const auto k = static_cast<Eigen::Index>(spec.column_names.size());
    const auto p = static_cast<Eigen::Index>(spec.p);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k * p, k * p);
    for (Eigen::Index lag = 0; lag < p; ++lag) companion.block(0, lag * k, k, k) = theta[static_cast<std::size_t>(lag)];
    if (p > 1) companion.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

LagSelection select_lag_detail(const AlignedFrame& frame, std::size_t p_max) {
    if (p_max < 1) throw DataError("p_max must be >= 1");
    const std::size_t k = frame.cols();
    if (frame.rows() < min_var_rows(k, p_max)) {
        throw InsufficientDataError("lag selection up to " + std::to_string(p_max) + " needs more than " +
                                    std::to_string(k * p_max + k + 5) + " rows, frame has " +
                                    std::to_string(frame.rows()));
    }
    VarSpec spec;
    for (const auto& c : frame.columns()) spec.column_names.push_back(c.name);

    LagSelection out;
    out.t_eff = frame.rows() - p_max;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 1; p <= p_max; ++p) {
        spec.p = p;
        const VarFit fit = fit_var(build_lag_matrix(frame, p, p_max), spec);
        const double log_det = std::log(fit.sigma.determinant());
        const double aic = aic_var(log_det, out.t_eff, k, p);
        out.aic.push_back(aic);
        if (aic < best) {
            best = aic;
            out.p = p;
        }
    }
    return out;
}

std::size_t select_lag(const AlignedFrame& frame, std::size_t p_max) { return select_lag_detail(frame, p_max).p; }

CoefficientTable coefficient_table(const VarFit& fit) {
    const std::size_t k = fit.spec.column_names.size();
    const std::size_t p = fit.spec.p;
    CoefficientTable table;
    table.equations = fit.spec.column_names;
    table.p = p;
    table.t_eff = fit.t_eff;
    table.max_root_modulus = fit.max_root_modulus();
    const auto df = static_cast<double>(fit.df_resid);
    auto make_cell = [df](double coef, double se, double t) {
        CoefficientTable::Cell c{coef, se, t, false};
        c.significant_5pct = se > 0.0 && t_two_sided_p(t, df) < 0.05;
        return c;
    };
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t lag = 0; lag < p; ++lag) {
            table.row_labels.push_back(lag_label(fit.spec.column_names[s], lag + 1));
            std::vector<CoefficientTable::Cell> row;
            for (std::size_t eq = 0; eq < k; ++eq) {
                const auto e = static_cast<Eigen::Index>(eq);
                const auto si = static_cast<Eigen::Index>(s);
                row.push_back(make_cell(fit.theta[lag](e, si), fit.theta_se[lag](e, si), fit.theta_t[lag](e, si)));
            }
            table.cells.push_back(std::move(row));
        }
    }
    table.row_labels.emplace_back("C");
    std::vector<CoefficientTable::Cell> row;
    for (std::size_t eq = 0; eq < k; ++eq) {
        const auto e = static_cast<Eigen::Index>(eq);
        row.push_back(make_cell(fit.mu(e), fit.mu_se(e), fit.mu_t(e)));
    }
    table.cells.push_back(std::move(row));
    return table;
}

}  // namespace sentcause
