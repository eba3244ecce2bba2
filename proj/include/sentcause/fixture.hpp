#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sentcause/date.hpp"

namespace sentcause {

/// Data-generating process of one synthetic market.
///
/// Each stock's daily return is beta_i * m_t + idio_{i,t}, with m_t ~ N(0, market_sd^2). The
/// idiosyncratic move is up with probability pi_t = logistic(count_tilt * z_{t-1}) where z is the
/// standardised realised market return of the previous day; up/down magnitudes are scaled by
/// sqrt((1 - pi_t)/pi_t) and sqrt(pi_t/(1 - pi_t)), which keeps its mean at zero and its variance
/// independent of pi_t. Returns are therefore serially uncorrelated and homoskedastic while
/// the advance/decline split (SENT) follows lagged returns. Volumes are tilted by
/// exp(volume_tilt * side * z_{t-1}), which moves the volume-per-advancer ratio that ARMS measures.
struct FixtureMarketSpec {
    std::string label;
    std::string file_stem;
    std::string ticker_prefix;
    Date first_day;
    std::size_t trading_days = 2500;
    std::size_t tickers = 40;
    double market_sd = 0.004;
    double idio_sd = 0.012;
    double count_tilt = 0.5;
    double volume_tilt = 0.1;
    double index_base = 1000.0;
};

[[nodiscard]] std::vector<FixtureMarketSpec> default_fixture_markets();

/// Writes <stem>_panel.csv and <stem>_index.csv per market plus config.json into out_dir.
/// Same seed, same bytes. Returns the written paths.
std::vector<std::filesystem::path> generate_fixture(std::uint64_t seed, const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> generate_fixture(std::uint64_t seed, const std::filesystem::path& out_dir,
                                                    const std::vector<FixtureMarketSpec>& markets);

}  // namespace sentcause
