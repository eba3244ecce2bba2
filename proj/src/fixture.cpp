#include "sentcause/fixture.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "sentcause/errors.hpp"
#include "sentcause/random.hpp"

namespace sentcause {

namespace {

struct Stock {
    std::string ticker;
    double beta = 1.0;
    double base_volume = 1000.0;
    double close = 0.0;
    std::size_t first_day = 0;
    std::size_t last_day = 0;  // inclusive
};

std::vector<Date> business_days(Date first, std::size_t n) {
    std::vector<Date> out;
    out.reserve(n);
    for (auto d = first; out.size() < n; d = Date::from_days(d.days_since_epoch() + 1)) {
        const unsigned wd = d.weekday();
        if (wd != 0 && wd != 6) out.push_back(d);
    }
    return out;
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError(path.string(), "write failed for '" + path.string() + "'");
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t market) {
    // splitmix64 finaliser over (seed, market)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (market + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void simulate_market(const FixtureMarketSpec& spec, std::uint64_t seed, std::string& panel_csv,
                     std::string& index_csv) {
    Rng rng(seed);
    const auto dates = business_days(spec.first_day, spec.trading_days);
    std::vector<Stock> stocks(spec.tickers);
    for (std::size_t i = 0; i < spec.tickers; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%s%02zu", spec.ticker_prefix.c_str(), i + 1);
        auto& s = stocks[i];
        s.ticker = name;
        s.beta = 0.6 + 0.8 * rng.uniform();
        s.base_volume = 2000.0 * std::exp(0.8 * rng.normal());
        s.close = round4(10.0 + 90.0 * rng.uniform());
        s.first_day = 0;
        s.last_day = spec.trading_days - 1;
    }
    // One late listing and one early delisting.
    if (spec.tickers >= 2 && spec.trading_days > 1000) {
        stocks[spec.tickers - 2].first_day = 250;
        stocks[spec.tickers - 1].last_day = spec.trading_days - 500;
    }

    const double beta_sq = 1.0 + 0.8 * 0.8 / 12.0;
    const double nominal_sd =
        std::sqrt(spec.market_sd * spec.market_sd * beta_sq + spec.idio_sd * spec.idio_sd / static_cast<double>(spec.tickers));

    panel_csv = "date,ticker,close,volume\n";
    index_csv = "date,close\n";
    double index = spec.index_base;
    double prev_return = 0.0;
    char line[128];
    for (std::size_t t = 0; t < dates.size(); ++t) {
        const std::string date = dates[t].iso();
        const double z = prev_return / nominal_sd;
        const double up_prob = 1.0 / (1.0 + std::exp(-spec.count_tilt * z));
        const double market = spec.market_sd * rng.normal();
        double return_sum = 0.0;
        std::size_t return_n = 0;
        for (auto& s : stocks) {
            if (t < s.first_day || t > s.last_day) continue;
            int side = 0;
            if (t > s.first_day) {
                const bool up = rng.uniform() < up_prob;
                const double magnitude = std::abs(rng.normal()) * spec.idio_sd;
                const double idio = up ? magnitude * std::sqrt((1.0 - up_prob) / up_prob)
                                       : -magnitude * std::sqrt(up_prob / (1.0 - up_prob));
                const double prev_close = s.close;
                s.close = std::max(0.01, round4(prev_close * (1.0 + s.beta * market + idio)));
                return_sum += (s.close - prev_close) / prev_close;
                ++return_n;
                side = s.close > prev_close ? 1 : (s.close < prev_close ? -1 : 0);
            }
            const double vol = s.base_volume * std::exp(0.4 * rng.normal()) *
                               std::exp(spec.volume_tilt * static_cast<double>(side) * z);
            std::snprintf(line, sizeof line, "%s,%s,%.4f,%lld\n", date.c_str(), s.ticker.c_str(), s.close,
                          static_cast<long long>(std::llround(vol)));
            panel_csv += line;
        }
        prev_return = return_n > 0 ? return_sum / static_cast<double>(return_n) : 0.0;
        if (t > 0) index *= 1.0 + prev_return;
        std::snprintf(line, sizeof line, "%s,%.6f\n", date.c_str(), index);
        index_csv += line;
    }
}

}  // namespace

std::vector<FixtureMarketSpec> default_fixture_markets() {
    FixtureMarketSpec tunis;
    tunis.label = "TunisSE";
    tunis.file_stem = "tunis";
    tunis.ticker_prefix = "TN";
    tunis.first_day = Date::from_ymd(2006, 1, 2);
    tunis.trading_days = 2500;

    FixtureMarketSpec casa;
    casa.label = "CasaSE";
    casa.file_stem = "casa";
    casa.ticker_prefix = "CS";
    casa.first_day = Date::from_ymd(2006, 1, 3);
    casa.trading_days = 2480;
    casa.market_sd = 0.005;
    casa.idio_sd = 0.014;
    casa.count_tilt = 0.4;
    casa.volume_tilt = 0.08;
    casa.index_base = 10000.0;
    return {tunis, casa};
}

std::vector<std::filesystem::path> generate_fixture(std::uint64_t seed, const std::filesystem::path& out_dir) {
    return generate_fixture(seed, out_dir, default_fixture_markets());
}

std::vector<std::filesystem::path> generate_fixture(std::uint64_t seed, const std::filesystem::path& out_dir,
                                                    const std::vector<FixtureMarketSpec>& markets) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError(out_dir.string(), "cannot create fixture directory '" + out_dir.string() + "'");
    }
    std::vector<std::filesystem::path> written;
    nlohmann::ordered_json config;
    config["markets"] = nlohmann::ordered_json::array();
    for (std::size_t m = 0; m < markets.size(); ++m) {
        const auto& spec = markets[m];
        std::string panel, index;
        simulate_market(spec, stream_seed(seed, m), panel, index);
        const auto panel_path = out_dir / (spec.file_stem + "_panel.csv");
        const auto index_path = out_dir / (spec.file_stem + "_index.csv");
        write_text(panel_path, panel);
        write_text(index_path, index);
        written.push_back(panel_path);
        written.push_back(index_path);
        config["markets"].push_back({{"label", spec.label},
                                     {"panel_path", panel_path.filename().string()},
                                     {"index_path", index_path.filename().string()}});
    }
    config["lags"] = {1, 2};
    config["p_max_for_aic"] = 10;
    config["run_adf"] = true;
    config["output_dir"] = "out";
    config["formats"] = {"json", "csv", "markdown"};
    config["seed"] = seed;
    const auto config_path = out_dir / "config.json";
    write_text(config_path, config.dump(2) + "\n");
    written.push_back(config_path);
    return written;
}

}  // namespace sentcause
