#include <doctest.h>

#include <cmath>

#include "sentcause/errors.hpp"
#include "sentcause/granger.hpp"
#include "sentcause/random.hpp"
#include "support/oracles.hpp"
#include "support/simulate.hpp"

using namespace sentcause;

namespace {

AlignedFrame pair_frame(const std::vector<double>& a, const std::vector<double>& b) {
    const TimeSeries s[] = {sim::series_from("A", a), sim::series_from("B", b)};
    return align(s);
}

}  // namespace

TEST_CASE("deterministic causation is a perfect fit") {
    Rng rng(1);
    std::vector<double> cause(60), effect(60);
    for (auto& v : cause) v = rng.normal();
    effect[0] = 0.0;
    for (std::size_t t = 1; t < 60; ++t) effect[t] = cause[t - 1];
    const auto r = granger_test(pair_frame(cause, effect), "A", "B", 1);
    CHECK(r.perfect_fit());
    CHECK(r.p_value == 0.0);
    CHECK(r.significant_5pct);
}

TEST_CASE("fixed 12-row integer frame matches the exact-rational oracle") {
    const std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8};
    const std::vector<double> b{2, 7, 1, 8, 2, 8, 1, 8, 2, 8, 4, 5};
    const auto r = granger_test(pair_frame(a, b), "A", "B", 1);

    oracle::Matrix xu, xr;
    std::vector<double> y;
    for (std::size_t t = 1; t < 12; ++t) {
        xu.push_back({1.0, b[t - 1], a[t - 1]});
        xr.push_back({1.0, b[t - 1]});
        y.push_back(b[t]);
    }
    const auto rss_u = oracle::rss<oracle::Rational>(xu, y);
    const auto rss_r = oracle::rss<oracle::Rational>(xr, y);
    const oracle::Rational f = ((rss_r - rss_u) / 1) / (rss_u / (11 - 2 - 1));
    REQUIRE(r.f_stat);
    CHECK(*r.f_stat == doctest::Approx(static_cast<double>(f)).epsilon(1e-10));
    CHECK(r.t_eff == 11);
    CHECK(r.df_num == 1);
    CHECK(r.df_den == 8);
    CHECK(r.p_value == doctest::Approx(f_sf(*r.f_stat, 1, 8)).epsilon(1e-14));
}

TEST_CASE("direction asymmetry reads the right columns") {
    Rng rng(2);
    const auto [rt, sent] = sim::planted_pair(rng, 400);
    const TimeSeries s[] = {rt, sent};
    const auto frame = align(s);
    const auto fwd = granger_test(frame, "RT", "SENT", 1);
    const auto back = granger_test(frame, "SENT", "RT", 1);
    CHECK(fwd.cause == "RT");
    CHECK(fwd.effect == "SENT");
    CHECK(fwd.significant_5pct);
    CHECK(fwd.p_value < 1e-20);
    CHECK(back.p_value > fwd.p_value);
    CHECK_THROWS_AS((void)granger_test(frame, "RT", "NOPE", 1), DataError);
}

TEST_CASE("granger invariants on random frames") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t t = 40 + static_cast<std::size_t>(rng.uniform() * 200);
        const double link = rng.uniform() < 0.5 ? 0.0 : 0.3 * rng.normal();
        std::vector<double> a(t), b(t);
        for (std::size_t i = 0; i < t; ++i) {
            a[i] = rng.normal();
            b[i] = (i ? link * a[i - 1] : 0.0) + rng.normal();
        }
        const auto frame = pair_frame(a, b);
        for (std::size_t p : {1, 2, 3}) {
            const auto r = granger_test(frame, "A", "B", p);
            CHECK(r.p_value >= 0.0);
            CHECK(r.p_value <= 1.0);
            CHECK(r.significant_5pct == (r.p_value < 0.05));
            CHECK(r.rss_restricted - r.rss_unrestricted >= -1e-10);
            CHECK(r.t_eff == t - p);
            CHECK(r.df_den == t - p - 2 * p - 1);
            REQUIRE(r.f_stat);
            CHECK(*r.f_stat >= 0.0);

            const double c = 0.001 + 1000.0 * rng.uniform();
            std::vector<double> as(a), bs(b);
            for (auto& v : as) v *= c;
            for (auto& v : bs) v *= 1.0 / c;
            const auto scaled = granger_test(pair_frame(as, bs), "A", "B", p);
            CHECK(*scaled.f_stat == doctest::Approx(*r.f_stat).epsilon(1e-9));
            CHECK(std::abs(scaled.p_value - r.p_value) <= 1e-9 * std::max(r.p_value, 1e-300));
        }
    }
}

TEST_CASE("larger F gives smaller p at fixed dof") {
    double prev = 1.0;
    for (double f = 0.0; f < 50.0; f += 0.25) {
        const double p = f_sf(f, 2, 300);
        CHECK(p <= prev);
        prev = p;
    }
    CHECK(f_sf(0.0, 2, 300) == 1.0);
}

TEST_CASE("labels and keys") {
    CHECK(std::string(transform_key(Transform::Levels)) == "levels");
    CHECK(std::string(transform_key(Transform::ReturnVsSentimentChange)) == "rt_dsent");
    CHECK(std::string(transform_key(Transform::ReturnChangeVsSentiment)) == "drt_sent");
    CHECK(std::string(transform_key(Transform::ReturnChangeVsSentimentChange)) == "drt_dsent");
    CHECK(returns_label(Transform::Levels) == "RT");
    CHECK(sentiment_label(Transform::ReturnChangeVsSentimentChange, Indicator::Arms) == "ΔARMS");
    CHECK(differences_returns(Transform::ReturnChangeVsSentiment));
    CHECK_FALSE(differences_sentiment(Transform::ReturnChangeVsSentiment));
}
