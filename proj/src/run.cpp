#include <fstream>

#include "sentcause/pipeline.hpp"

namespace sentcause {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open '" + path.string() + "'");
    return in;
}

void write_file(const std::filesystem::path& path, const std::string& content, std::vector<std::filesystem::path>& files) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot write '" + path.string() + "'");
    out << content;
    out.close();
    if (!out) throw IoError(path.string(), "write failed for '" + path.string() + "'");
    files.push_back(path);
}

void check_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError(dir.string(), "cannot create output directory '" + dir.string() + "'");
    }
    const auto probe = dir / ".sentcause_write_probe";
    {
        std::ofstream out(probe, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(dir.string(), "output directory '" + dir.string() + "' is not writable");
    }
    std::filesystem::remove(probe, ec);
}

MarketOutcome process_market(const RunConfig& config, const MarketConfig& market) {
    MarketOutcome outcome;
    outcome.label = market.label;
    try {
        std::ifstream panel_in = open_input(market.panel_path);
        const PricePanel panel = parse_price_csv(panel_in, market.label);
        std::optional<TimeSeries> index;
        if (market.index_path) {
            std::ifstream index_in = open_input(*market.index_path);
            index = parse_index_csv(index_in, market.label + "_INDEX");
        }
        const ExperimentOptions options{config.lags, config.p_max_for_aic};
        const MarketAnalysis a = analyze_market(panel, index, options, config.run_adf);

        const auto stem = config.output_dir / market.label;
        auto path = [&](const std::string& suffix) { return std::filesystem::path(stem.string() + suffix); };
        if (config.wants(OutputFormat::Json)) {
            write_file(path("_granger.json"), granger_json(a.report).dump(2) + "\n", outcome.files);
        }
        if (config.wants(OutputFormat::Csv)) {
            write_file(path("_granger.csv"), granger_csv(a.report), outcome.files);
            write_file(path("_var_tables.csv"), var_tables_csv(a.report), outcome.files);
        }
        if (config.wants(OutputFormat::Markdown)) {
            write_file(path("_granger.md"), granger_markdown(a.report), outcome.files);
            write_file(path("_var_tables.md"), var_tables_markdown(a.report), outcome.files);
        }
        write_file(path("_indicators.csv"), indicators_csv(a.returns, a.breadth, a.sent, a.arms), outcome.files);
        if (config.run_adf) write_file(path("_adf.csv"), adf_csv(a.adf), outcome.files);
        if (config.export_series) {
            write_file(path("_rt.csv"), series_csv(a.returns), outcome.files);
            write_file(path("_sent.csv"), series_csv(a.sent), outcome.files);
            write_file(path("_arms.csv"), series_csv(a.arms), outcome.files);
        }
        outcome.ok = true;
    } catch (const Error& e) {
        outcome.error_kind = e.kind();
        outcome.error = e.what();
    }
    return outcome;
}

}  // namespace

MarketAnalysis analyze_market(const PricePanel& panel, const std::optional<TimeSeries>& index,
                              const ExperimentOptions& options, bool run_adf) {
    MarketAnalysis a;
    a.market = panel.market();
    a.returns = market_return_series(panel, index, "RT");
    a.breadth = daily_breadth(panel);
    a.sent = sent_series(a.breadth, "SENT");
    a.arms = arms_series(a.breadth, "ARMS");
    a.report = run_experiment(a.returns, a.sent, a.arms, panel.market(), options);
    if (run_adf) {
        std::vector<TimeSeries> battery{a.returns, a.sent, a.arms};
        battery.push_back(diff_series(a.returns, "ΔRT"));
        battery.push_back(diff_series(a.sent, "ΔSENT"));
        battery.push_back(diff_series(a.arms, "ΔARMS"));
        a.adf = adf_battery(battery);
    }
    return a;
}

RunSummary run(const RunConfig& config) {
    RunSummary summary;
    try {
        check_output_dir(config.output_dir);
    } catch (const Error& e) {
        summary.run_error = e.what();
        summary.exit_code = exit_code_for(e.kind());
        return summary;
    }
    for (const auto& market : config.markets) {
        summary.markets.push_back(process_market(config, market));
        const auto& o = summary.markets.back();
        if (!o.ok && summary.exit_code == 0) summary.exit_code = exit_code_for(*o.error_kind);
    }
    return summary;
}

}  // namespace sentcause
