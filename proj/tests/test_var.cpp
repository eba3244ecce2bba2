#include <doctest.h>

#include <cmath>

#include "sentcause/errors.hpp"
#include "sentcause/format.hpp"
#include "sentcause/random.hpp"
#include "sentcause/report.hpp"
#include "sentcause/var.hpp"
#include "support/simulate.hpp"

using namespace sentcause;

namespace {

AlignedFrame integer_frame(std::size_t t) {
    Eigen::MatrixXd y(static_cast<Eigen::Index>(t), 2);
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
        y(r, 0) = static_cast<double>((r * 7 + 3) % 11);
        y(r, 1) = static_cast<double>((r * r + 2) % 13) - 5.0;
    }
    return sim::frame_from(y, {"RT", "SENT"});
}

}  // namespace

TEST_CASE("build_lag_matrix shapes") {
    // smallest admissible frame for k = 2, p = 2 is 12 rows
    const auto design = build_lag_matrix(integer_frame(12), 2);
    CHECK(design.y.rows() == 10);
    CHECK(design.x.rows() == 10);
    CHECK(design.x.cols() == 5);
    CHECK(design.x.col_names() == std::vector<std::string>{"C", "RT (-1)", "SENT (-1)", "RT (-2)", "SENT (-2)"});
    CHECK_THROWS_AS((void)build_lag_matrix(integer_frame(10), 2), InsufficientDataError);
}

TEST_CASE("build_lag_matrix p = 1 prefixes the previous row with 1") {
    const auto frame = integer_frame(12);
    const auto design = build_lag_matrix(frame, 1);
    const auto& x = design.x.values();
    for (Eigen::Index r = 0; r < 2; ++r) {
        CHECK(x(r, 0) == 1.0);
        CHECK(x(r, 1) == frame.columns()[0].values[static_cast<std::size_t>(r)]);
        CHECK(x(r, 2) == frame.columns()[1].values[static_cast<std::size_t>(r)]);
    }
}

TEST_CASE("build_lag_matrix equals a loop-built oracle") {
    const auto frame = integer_frame(12);
    const std::size_t p = 2;
    const auto design = build_lag_matrix(frame, p);
    const auto& a = frame.columns()[0].values;
    const auto& b = frame.columns()[1].values;
    for (std::size_t t = p; t < frame.rows(); ++t) {
        const std::vector<double> want{1.0, a[t - 1], b[t - 1], a[t - 2], b[t - 2]};
        const auto r = static_cast<Eigen::Index>(t - p);
        for (std::size_t c = 0; c < want.size(); ++c) CHECK(design.x.values()(r, static_cast<Eigen::Index>(c)) == want[c]);
        CHECK(design.y(r, 0) == a[t]);
        CHECK(design.y(r, 1) == b[t]);
    }
    const auto late = build_lag_matrix(frame, 1, 2);
    CHECK(late.x.rows() == frame.rows() - 2);
    CHECK(late.x.values()(0, 1) == a[1]);
}

TEST_CASE("noiseless VAR(1) is recovered") {
    Eigen::MatrixXd y(40, 2);
    y.row(0) << 1.0, -0.5;
    Eigen::Vector2d mu(0.3, -0.1);
    Eigen::Matrix2d th;
    th << 0.5, 0.2, -0.3, 0.4;
    // a tiny alternating perturbation on the seed avoids an exact fixed point
    for (Eigen::Index r = 1; r < y.rows(); ++r) y.row(r) = (mu + th * y.row(r - 1).transpose()).transpose();
    const auto fit = fit_var(sim::frame_from(y, {"A", "B"}), 1);
    CHECK((fit.mu - mu).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((fit.theta[0] - th).cwiseAbs().maxCoeff() < 1e-8);
    for (double r : fit.rss) CHECK(r <= 1e-16 * static_cast<double>(fit.t_eff));
}

TEST_CASE("decoupled columns give cross-lag coefficients near zero") {
    // constants plus tiny independent sign flips
    Rng rng(12);
    Eigen::MatrixXd y(2000, 2);
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
        y(r, 0) = 5.0 + (rng.uniform() < 0.5 ? 1e-3 : -1e-3);
        y(r, 1) = -2.0 + (rng.uniform() < 0.5 ? 2e-3 : -2e-3);
    }
    const auto fit = fit_var(sim::frame_from(y, {"A", "B"}), 1);
    CHECK(std::abs(fit.theta[0](0, 1)) <= 4.0 * fit.theta_se[0](0, 1));
    CHECK(std::abs(fit.theta[0](1, 0)) <= 4.0 * fit.theta_se[0](1, 0));
    CHECK(std::abs(fit.theta[0](0, 1)) < 0.1);
    CHECK(std::abs(fit.theta[0](1, 0)) < 0.2);
}

TEST_CASE("fit_var agrees with per-equation OLS and keeps its invariants") {
    Rng rng(42);
    Eigen::Vector2d mu(0.1, -0.2);
    std::vector<Eigen::MatrixXd> th(2, Eigen::MatrixXd(2, 2));
    th[0] << 0.4, 0.1, 0.2, 0.3;
    th[1] << -0.2, 0.05, 0.0, 0.15;
    const auto y = sim::simulate_var(rng, 300, mu, th);
    const auto frame = sim::frame_from(y, {"RT", "SENT"});
    const auto fit = fit_var(frame, 2);
    const auto design = build_lag_matrix(frame, 2);
    for (std::size_t eq = 0; eq < 2; ++eq) {
        std::vector<double> col(design.y.rows());
        for (Eigen::Index r = 0; r < design.y.rows(); ++r) col[static_cast<std::size_t>(r)] = design.y(r, static_cast<Eigen::Index>(eq));
        const auto ols = ols_fit(design.x, col);
        const auto flat = flatten_equation(fit, eq);
        CHECK((flat - ols.coefs).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(fit.rss[eq] == doctest::Approx(ols.rss).epsilon(1e-12));
    }
    // sigma symmetric PSD
    CHECK((fit.sigma - fit.sigma.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.sigma);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    // t = coef / se
    for (std::size_t i = 0; i < 2; ++i)
        for (Eigen::Index a = 0; a < 2; ++a)
            for (Eigen::Index b = 0; b < 2; ++b)
                CHECK(fit.theta_t[i](a, b) * fit.theta_se[i](a, b) == doctest::Approx(fit.theta[i](a, b)).epsilon(1e-12));
    CHECK(fit.max_root_modulus() < 1.0);
    CHECK(fit.t_eff == 298);
    CHECK(fit.df_resid == 293);
}

TEST_CASE("reshape round trip") {
    Rng rng(8);
    for (std::size_t p = 1; p <= 3; ++p) {
        Eigen::MatrixXd coefs(1 + 2 * static_cast<Eigen::Index>(p), 2);
        for (Eigen::Index i = 0; i < coefs.size(); ++i) coefs(i) = rng.normal();
        VarFit fit;
        fit.spec.p = p;
        fit.spec.column_names = {"a", "b"};
        reshape_coefficients(coefs, 2, p, fit.mu, fit.theta);
        for (std::size_t eq = 0; eq < 2; ++eq) CHECK(flatten_equation(fit, eq) == coefs.col(static_cast<Eigen::Index>(eq)));
    }
}

TEST_CASE("sigma permutes with the columns") {
    Rng rng(9);
    std::vector<Eigen::MatrixXd> th(1, Eigen::MatrixXd(2, 2));
    th[0] << 0.5, 0.2, 0.1, 0.3;
    const auto y = sim::simulate_var(rng, 200, Eigen::Vector2d(0.0, 1.0), th);
    Eigen::MatrixXd swapped(y.rows(), 2);
    swapped.col(0) = y.col(1);
    swapped.col(1) = y.col(0);
    const auto a = fit_var(sim::frame_from(y, {"x", "y"}), 2).sigma;
    const auto b = fit_var(sim::frame_from(swapped, {"y", "x"}), 2).sigma;
    CHECK(std::abs(a(0, 0) - b(1, 1)) <= 1e-12 * a(0, 0));
    CHECK(std::abs(a(1, 1) - b(0, 0)) <= 1e-12 * a(1, 1));
    CHECK(std::abs(a(0, 1) - b(1, 0)) <= 1e-12 * std::abs(a(0, 0)));
}

TEST_CASE("select_lag reports a common sample") {
    Rng rng(21);
    std::vector<Eigen::MatrixXd> th(1, Eigen::MatrixXd(2, 2));
    th[0] << 0.6, 0.0, 0.3, 0.5;
    const auto frame = sim::frame_from(sim::simulate_var(rng, 2000, Eigen::Vector2d(0.0, 0.0), th), {"RT", "SENT"});
    const auto sel = select_lag_detail(frame, 6);
    CHECK(sel.aic.size() == 6);
    CHECK(sel.t_eff == 1994);
    const auto best = std::min_element(sel.aic.begin(), sel.aic.end()) - sel.aic.begin();
    CHECK(sel.p == static_cast<std::size_t>(best) + 1);
    CHECK(select_lag(frame, 6) == sel.p);
    CHECK_THROWS_AS((void)select_lag(integer_frame(20), 6), InsufficientDataError);
}

TEST_CASE("select_lag recovers a strong VAR(1)") {
    std::vector<Eigen::MatrixXd> th(1, Eigen::MatrixXd(2, 2));
    th[0] << 0.6, 0.0, 0.3, 0.5;
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(40000 + seed);
        const auto y = sim::simulate_var(rng, 2000, Eigen::Vector2d(0.0, 0.0), th);
        hits += select_lag(sim::frame_from(y, {"RT", "SENT"}), 6) == 1;
    }
    MESSAGE("VAR(1) selected in " << hits << "/200");
    CHECK(hits >= 180);
}

TEST_CASE("select_lag on white noise picks p = 1 in the plurality of replications") {
    std::array<int, 5> counts{};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(300 + seed);
        Eigen::MatrixXd y(400, 2);
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.normal();
        ++counts[select_lag(sim::frame_from(y, {"a", "b"}), 4)];
    }
    CHECK(counts[1] > counts[2]);
    CHECK(counts[1] > counts[3]);
    CHECK(counts[1] > counts[4]);
}

TEST_CASE("coefficient_table layout and rendering") {
    Rng rng(4);
    std::vector<Eigen::MatrixXd> th(2, Eigen::MatrixXd::Zero(2, 2));
    th[0](1, 0) = 0.5;
    const auto y = sim::simulate_var(rng, 200, Eigen::Vector2d(0.0, 0.0), th);
    const auto table = coefficient_table(fit_var(sim::frame_from(y, {"RT", "SENT"}), 2));
    CHECK(table.row_labels == std::vector<std::string>{"RT (-1)", "RT (-2)", "SENT (-1)", "SENT (-2)", "C"});
    CHECK(table.equations == std::vector<std::string>{"RT", "SENT"});
    REQUIRE(table.cells.size() == 5);
    CHECK(table.cells[0].size() == 2);
    CHECK(table.cells[0][1].significant_5pct);

    CHECK(render_coefficient_cell({0.0369, 0.0369 / 1.8825, 1.8825, false}) == "0.0369 (1.8825)");
    CHECK(render_coefficient_cell({0.0, 0.1, 0.0, false}) == "0.0000 (0.0000)");
    CHECK(render_coefficient_cell({-0.0, 0.1, -0.0, false}) == "0.0000 (0.0000)");
    CHECK(render_coefficient_cell({0.5, 0.1, 5.0, true}) == "0.5000 (5.0000)*");

    CoefficientTable fixture;
    fixture.equations = {"RT", "SENT"};
    fixture.row_labels = {"RT (-1)"};
    fixture.cells = {{{0.0369, 0.0196, 1.8825, false}, {0.0013, 0.0001, 13.0, true}}};
    const auto md = render_var_table_markdown(fixture);
    CHECK(md.find("| RT (-1) | 0.0369 (1.8825) | 0.0013 (13.0000)* |") != std::string::npos);
}
