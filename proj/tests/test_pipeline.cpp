#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sentcause/config.hpp"
#include "sentcause/errors.hpp"
#include "sentcause/fixture.hpp"
#include "sentcause/pipeline.hpp"

using namespace sentcause;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sentcause_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<FixtureMarketSpec> small_markets() {
    auto markets = default_fixture_markets();
    for (auto& m : markets) {
        m.trading_days = 400;
        m.tickers = 15;
    }
    return markets;
}

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    // report rows never quote numeric fields
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

PricePanel load_panel(const fs::path& p, const std::string& label) {
    std::ifstream in(p, std::ios::binary);
    return parse_price_csv(in, label);
}

TimeSeries load_index(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return parse_index_csv(in);
}

}  // namespace

TEST_CASE("fixture is deterministic per seed with a stable schema") {
    const auto a = fresh_dir("fx_a"), b = fresh_dir("fx_b"), c = fresh_dir("fx_c");
    const auto files_a = generate_fixture(1, a, small_markets());
    (void)generate_fixture(1, b, small_markets());
    (void)generate_fixture(2, c, small_markets());
    REQUIRE(files_a.size() == 5);
    bool any_diff = false;
    for (const auto& f : files_a) {
        const auto name = f.filename();
        CHECK(slurp(a / name) == slurp(b / name));
        any_diff |= slurp(a / name) != slurp(c / name);
        CHECK(csv_lines(slurp(a / name)).front() == csv_lines(slurp(c / name)).front());
    }
    CHECK(any_diff);
    const auto panel = load_panel(a / "tunis_panel.csv", "TunisSE");
    CHECK(panel.num_dates() == 400);
    CHECK(panel.tickers().size() == 15);
}

TEST_CASE("run writes every report file and JSON equals CSV") {
    const auto dir = fresh_dir("run");
    (void)generate_fixture(3, dir, small_markets());
    auto cfg = load_config(dir / "config.json");
    cfg.export_series = true;
    const auto summary = run(cfg);
    CHECK(summary.exit_code == 0);
    REQUIRE(summary.markets.size() == 2);
    for (const auto& m : summary.markets) {
        CHECK(m.ok);
        for (const char* suffix : {"_granger.json", "_granger.csv", "_granger.md", "_var_tables.csv", "_var_tables.md",
                                   "_indicators.csv", "_adf.csv", "_rt.csv", "_sent.csv", "_arms.csv"}) {
            CHECK(fs::exists(cfg.output_dir / (m.label + suffix)));
        }
        const auto j = nlohmann::json::parse(slurp(cfg.output_dir / (m.label + "_granger.json")));
        const auto rows = csv_lines(slurp(cfg.output_dir / (m.label + "_granger.csv")));
        REQUIRE(j["cells"].size() == 32);
        REQUIRE(rows.size() == 33);
        const auto header = split(rows[0]);
        const auto col = [&](const std::string& name) {
            return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
        };
        for (std::size_t i = 0; i < 32; ++i) {
            const auto& cell = j["cells"][i];
            const auto row = split(rows[i + 1]);
            CHECK(row[col("transform")] == cell["transform"].get<std::string>());
            CHECK(row[col("direction")] == cell["direction"].get<std::string>());
            CHECK(row[col("p_value")] == cell["p_value"].dump());
            if (!cell["f_stat"].is_null()) CHECK(row[col("f_stat")] == cell["f_stat"].dump());
            CHECK(row[col("p_value_display")] == cell["p_value_display"].get<std::string>());
        }
    }

    // second run: byte-identical outputs
    std::map<std::string, std::string> first;
    for (const auto& e : fs::directory_iterator(cfg.output_dir)) first[e.path().filename().string()] = slurp(e.path());
    REQUIRE(run(cfg).exit_code == 0);
    for (const auto& [name, bytes] : first) CHECK(slurp(cfg.output_dir / name) == bytes);
}

TEST_CASE("a failing market does not disturb the other") {
    const auto dir = fresh_dir("iso");
    (void)generate_fixture(4, dir, small_markets());
    auto cfg = load_config(dir / "config.json");
    cfg.formats = {OutputFormat::Csv};
    REQUIRE(run(cfg).exit_code == 0);
    const auto reference = slurp(cfg.output_dir / "TunisSE_granger.csv");

    {
        std::ofstream(dir / "casa_panel.csv", std::ios::trunc) << "date,ticker,close,volume\n";
    }
    fs::remove_all(cfg.output_dir);
    auto summary = run(cfg);
    CHECK(summary.exit_code == 2);
    CHECK(summary.markets[0].ok);
    CHECK_FALSE(summary.markets[1].ok);
    CHECK(summary.markets[1].error_kind == ErrorKind::Data);
    CHECK(slurp(cfg.output_dir / "TunisSE_granger.csv") == reference);

    cfg.markets[1].panel_path = dir / "missing.csv";
    summary = run(cfg);
    CHECK(summary.exit_code == 4);
    CHECK(summary.markets[1].error.find("missing.csv") != std::string::npos);

    auto bad = cfg;
    bad.output_dir = dir / "config.json" / "sub";
    summary = run(bad);
    CHECK(summary.exit_code == 4);
    CHECK_FALSE(summary.run_error.empty());
}

TEST_CASE("malformed panel row is a data error naming the line") {
    const auto dir = fresh_dir("bad");
    (void)generate_fixture(5, dir, small_markets());
    {
        std::ofstream out(dir / "tunis_panel.csv", std::ios::app);
        out << "2099-01-01,TN01,0,5\n";
    }
    auto cfg = load_config(dir / "config.json");
    const auto summary = run(cfg);
    CHECK(summary.exit_code == 2);
    CHECK(summary.markets[0].error.find("line") != std::string::npos);
    CHECK(summary.markets[1].ok);
}

namespace {

struct FixtureOutcome {
    ExperimentReport tunis, casa;
};

FixtureOutcome analyze_fixture(std::uint64_t seed, const fs::path& dir) {
    (void)generate_fixture(seed, dir);
    const ExperimentOptions options{{1, 2}, 10};
    FixtureOutcome out;
    out.tunis = analyze_market(load_panel(dir / "tunis_panel.csv", "TunisSE"), load_index(dir / "tunis_index.csv"),
                               options, false)
                    .report;
    out.casa = analyze_market(load_panel(dir / "casa_panel.csv", "CasaSE"), load_index(dir / "casa_index.csv"),
                              options, false)
                   .report;
    return out;
}

}  // namespace

TEST_CASE("seed-1 fixture: returns cause sentiment in every family at lag 2") {
    const auto out = analyze_fixture(1, fresh_dir("seed1"));
    for (const auto* report : {&out.tunis, &out.casa}) {
        for (Transform t : kAllTransforms)
            for (Indicator i : kAllIndicators) {
                const auto& cell = report->cells.at({t, i, 2, Direction::Test1});
                CAPTURE(report->market);
                CAPTURE(std::string(transform_key(t)));
                CAPTURE(std::string(indicator_key(i)));
                REQUIRE(cell.result);
                CHECK(cell.result->significant_5pct);
            }
    }
}

// Where returns enter in levels the test2 null is true by construction, so each cell rejects
// with probability 0.05 whatever the seed. Seed 1 has two such rejections for CasaSE SENT at
// lag 2; the assertion stays as stated and is allowed to fail. The seed-independent version of
// the property is the Monte-Carlo case below.
TEST_CASE("seed-1 fixture: sentiment does not cause returns-in-levels at lag 2" * doctest::may_fail()) {
    const auto out = analyze_fixture(1, fresh_dir("seed1b"));
    for (const auto* report : {&out.tunis, &out.casa}) {
        for (Transform t : {Transform::Levels, Transform::ReturnVsSentimentChange})
            for (Indicator i : kAllIndicators) {
                const auto& cell = report->cells.at({t, i, 2, Direction::Test2});
                CAPTURE(report->market);
                CAPTURE(std::string(transform_key(t)));
                CAPTURE(std::string(indicator_key(i)));
                REQUIRE(cell.result);
                CHECK_FALSE(cell.result->significant_5pct);
            }
    }
}

TEST_CASE("fixture planted direction over seeds 1..40") {
    const int seeds = 40;
    std::map<std::pair<std::string, CellKey>, int> rejections;
    const auto dir = fresh_dir("mc");
    for (int s = 1; s <= seeds; ++s) {
        const auto out = analyze_fixture(static_cast<std::uint64_t>(s), dir);
        for (const auto* report : {&out.tunis, &out.casa})
            for (const auto& [key, cell] : report->cells)
                rejections[{report->market, key}] += cell.result && cell.result->significant_5pct;
    }
    for (const auto& [id, count] : rejections) {
        const auto& key = id.second;
        if (key.lag != 2) continue;
        CAPTURE(id.first);
        CAPTURE(std::string(transform_key(key.transform)));
        CAPTURE(std::string(indicator_key(key.indicator)));
        CAPTURE(count);
        if (key.direction == Direction::Test1) {
            CHECK(count >= 38);
        } else if (!differences_returns(key.transform)) {
            // nominal 5%: expected 2 of 40; 7 or more has probability below 0.5%
            CHECK(count <= 6);
        }
    }
}
