// Serial reference kernels against their OpenMP counterparts.
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "sentcause/breadth.hpp"
#include "sentcause/granger.hpp"
#include "sentcause/random.hpp"

namespace {

using namespace sentcause;

PricePanel make_panel(std::size_t days, std::size_t tickers) {
    Rng rng(1);
    std::vector<PriceBar> bars;
    bars.reserve(days * tickers);
    const auto start = Date::from_ymd(2006, 1, 2).days_since_epoch();
    for (std::size_t i = 0; i < tickers; ++i) {
        double close = 10.0 + 90.0 * rng.uniform();
        for (std::size_t d = 0; d < days; ++d) {
            close *= std::exp(0.015 * rng.normal());
            bars.push_back({"T" + std::to_string(i), Date::from_days(start + static_cast<std::int32_t>(d)), close,
                            static_cast<std::int64_t>(1000 + rng.uniform() * 1e5)});
        }
    }
    return PricePanel("BENCH", std::move(bars));
}

struct Triple {
    TimeSeries rt, sent, arms;
};

Triple make_series(std::size_t n) {
    Rng rng(2);
    const auto start = Date::from_ymd(2006, 1, 2).days_since_epoch();
    std::vector<TimeSeries::Point> r, s, a;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = Date::from_days(start + static_cast<std::int32_t>(i));
        const double x = rng.normal();
        r.push_back({d, x});
        s.push_back({d, 1.0 + 0.3 * prev + 0.2 * rng.normal()});
        a.push_back({d, 1.0 - 0.2 * prev + 0.2 * rng.normal()});
        prev = x;
    }
    return {TimeSeries("RT", r), TimeSeries("SENT", s), TimeSeries("ARMS", a)};
}

void BM_breadth_serial(benchmark::State& state) {
    const auto panel = make_panel(static_cast<std::size_t>(state.range(0)), 40);
    for (auto _ : state) benchmark::DoNotOptimize(daily_breadth_serial(panel));
}

void BM_breadth_parallel(benchmark::State& state) {
    const auto panel = make_panel(static_cast<std::size_t>(state.range(0)), 40);
    for (auto _ : state) benchmark::DoNotOptimize(daily_breadth(panel));
}

void BM_experiment_serial(benchmark::State& state) {
    const auto in = make_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(in.rt, in.sent, in.arms, "BENCH"));
}

void BM_experiment_parallel(benchmark::State& state) {
    const auto in = make_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(in.rt, in.sent, in.arms, "BENCH"));
}

}  // namespace

BENCHMARK(BM_breadth_serial)->Arg(2500)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_breadth_parallel)->Arg(2500)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_serial)->Arg(2500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_parallel)->Arg(2500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
