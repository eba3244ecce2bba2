#include <cmath>
#include <limits>

#include "sentcause/errors.hpp"
#include "sentcause/stats.hpp"

namespace sentcause {

DesignMatrix::DesignMatrix(RowMatrix values, std::vector<std::string> col_names)
    : values_(std::move(values)), col_names_(std::move(col_names)) {
    if (col_names_.size() != cols()) throw DataError("design matrix: label count differs from column count");
    if (rows() <= cols()) {
        throw InsufficientDataError("design matrix has " + std::to_string(rows()) + " rows for " +
                                    std::to_string(cols()) + " regressors");
    }
    if (!values_.allFinite()) throw DataError("design matrix contains non-finite entries");
}

namespace {

Eigen::VectorXd column_norms(const RowMatrix& x) {
    Eigen::VectorXd norms(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) norms(j) = x.col(j).norm();
    return norms;
}

}  // namespace

double equilibrated_condition_number(const RowMatrix& x) {
    const Eigen::VectorXd norms = column_norms(x);
    if ((norms.array() == 0.0).any()) return std::numeric_limits<double>::infinity();
    const Eigen::MatrixXd scaled = x * norms.cwiseInverse().asDiagonal();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

OlsFit ols_fit(const DesignMatrix& design, std::span<const double> y_in) {
    const RowMatrix& x = design.values();
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (static_cast<Eigen::Index>(y_in.size()) != n) {
        throw DataError("response length " + std::to_string(y_in.size()) + " differs from design rows " +
                        std::to_string(n));
    }
    const Eigen::Map<const Eigen::VectorXd> y(y_in.data(), n);
    if (!y.allFinite()) throw DataError("response contains non-finite entries");

    const Eigen::VectorXd norms = column_norms(x);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (norms(j) == 0.0) throw SingularDesignError("design column '" + design.col_names()[j] + "' is all zero");
    }
    const Eigen::MatrixXd scaled = x * norms.cwiseInverse().asDiagonal();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
    const auto& sv = svd.singularValues();
    const double smin = sv(k - 1);
    if (!(smin > 0.0) || sv(0) / smin > kMaxConditionNumber) {
        throw SingularDesignError("design is rank deficient or ill-conditioned (condition number " +
                                  (smin > 0.0 ? std::to_string(sv(0) / smin) : std::string("inf")) + ")");
    }

    OlsFit fit;
    const Eigen::VectorXd qty = (qr.householderQ().adjoint() * y).head(k);
    const Eigen::VectorXd scaled_coefs = r.triangularView<Eigen::Upper>().solve(qty);
    fit.coefs = scaled_coefs.cwiseQuotient(norms);
    fit.residuals = y - x * fit.coefs;
    fit.rss = fit.residuals.squaredNorm();
    fit.df_resid = static_cast<std::size_t>(n - k);

    // diag((X'X)^-1) = row norms of R^-1, unscaled.
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const double sigma2 = fit.rss / static_cast<double>(fit.df_resid);
    fit.se.resize(k);
    fit.tstats.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        fit.se(i) = std::sqrt(sigma2 * r_inv.row(i).squaredNorm()) / norms(i);
        if (fit.se(i) > 0.0) {
            fit.tstats(i) = fit.coefs(i) / fit.se(i);
        } else {
            fit.tstats(i) = fit.coefs(i) == 0.0
                                ? 0.0
                                : std::copysign(std::numeric_limits<double>::infinity(), fit.coefs(i));
        }
    }
    return fit;
}

}  // namespace sentcause
