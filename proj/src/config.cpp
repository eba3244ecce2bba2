#include "sentcause/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sentcause/errors.hpp"

namespace sentcause {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kTopKeys{"markets", "lags",    "p_max_for_aic", "run_adf",
                                        "output_dir", "formats", "seed",          "export_series"};
const std::vector<std::string> kMarketKeys{"label", "panel_path", "index_path"};

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

void reject_unknown(const json& obj, const std::vector<std::string>& known, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) != known.end()) continue;
        std::string msg = "unknown config key '" + prefix + key + "'";
        if (const auto s = suggest_key(key, known)) msg += "; did you mean '" + prefix + *s + "'?";
        throw ConfigError(prefix + key, msg);
    }
}

[[noreturn]] void type_error(const std::string& field, const std::string& expected) {
    throw ConfigError(field, "config field '" + field + "' must be " + expected);
}

std::size_t positive_integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) type_error(field, "an integer >= 1");
    const auto x = v.get<std::int64_t>();
    if (x < 1) type_error(field, "an integer >= 1");
    return static_cast<std::size_t>(x);
}

std::string nonempty_string(const json& v, const std::string& field) {
    if (!v.is_string() || v.get<std::string>().empty()) type_error(field, "a non-empty string");
    return v.get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

bool safe_label(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
               c == '.';
    });
}

}  // namespace

bool RunConfig::wants(OutputFormat f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }

std::optional<std::string> suggest_key(std::string_view unknown, const std::vector<std::string>& known) {
    std::optional<std::string> best;
    std::size_t best_d = 3;
    for (const auto& k : known) {
        const std::size_t d = edit_distance(unknown, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "config root must be a JSON object");
    reject_unknown(root, kTopKeys, "");

    RunConfig cfg;
    if (!root.contains("markets")) throw ConfigError("markets", "missing required config field 'markets'");
    const json& markets = root["markets"];
    if (!markets.is_array() || markets.empty()) type_error("markets", "a non-empty array");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < markets.size(); ++i) {
        const std::string prefix = "markets[" + std::to_string(i) + "].";
        const json& m = markets[i];
        if (!m.is_object()) type_error("markets[" + std::to_string(i) + "]", "an object");
        reject_unknown(m, kMarketKeys, prefix);
        for (const char* req : {"label", "panel_path"}) {
            if (!m.contains(req)) throw ConfigError(prefix + req, "missing required config field '" + prefix + req + "'");
        }
        MarketConfig mc;
        mc.label = nonempty_string(m["label"], prefix + "label");
        if (!safe_label(mc.label)) type_error(prefix + "label", "made of letters, digits, '_', '-' or '.'");
        if (!labels.insert(mc.label).second) throw ConfigError(prefix + "label", "duplicate market label '" + mc.label + "'");
        mc.panel_path = resolve(base_dir, nonempty_string(m["panel_path"], prefix + "panel_path"));
        if (m.contains("index_path") && !m["index_path"].is_null()) {
            mc.index_path = resolve(base_dir, nonempty_string(m["index_path"], prefix + "index_path"));
        }
        cfg.markets.push_back(std::move(mc));
    }

    if (!root.contains("output_dir")) throw ConfigError("output_dir", "missing required config field 'output_dir'");
    cfg.output_dir = resolve(base_dir, nonempty_string(root["output_dir"], "output_dir"));

    if (root.contains("lags")) {
        const json& lags = root["lags"];
        if (!lags.is_array() || lags.empty()) type_error("lags", "a non-empty array of integers >= 1");
        cfg.lags.clear();
        for (const auto& v : lags) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 1) type_error("lags", "a non-empty array of integers >= 1");
            const auto lag = static_cast<std::size_t>(v.get<std::int64_t>());
            if (std::find(cfg.lags.begin(), cfg.lags.end(), lag) != cfg.lags.end()) type_error("lags", "free of duplicates");
            cfg.lags.push_back(lag);
        }
    }
    if (root.contains("p_max_for_aic")) cfg.p_max_for_aic = positive_integer(root["p_max_for_aic"], "p_max_for_aic");
    if (root.contains("run_adf")) {
        if (!root["run_adf"].is_boolean()) type_error("run_adf", "a boolean");
        cfg.run_adf = root["run_adf"].get<bool>();
    }
    if (root.contains("export_series")) {
        if (!root["export_series"].is_boolean()) type_error("export_series", "a boolean");
        cfg.export_series = root["export_series"].get<bool>();
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned()) type_error("seed", "a non-negative integer");
        cfg.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("formats")) {
        const json& formats = root["formats"];
        if (!formats.is_array() || formats.empty()) type_error("formats", "a non-empty subset of [json, csv, markdown]");
        cfg.formats.clear();
        for (const auto& v : formats) {
            const std::string s = v.is_string() ? v.get<std::string>() : "";
            OutputFormat f = OutputFormat::Json;
            if (s == "json") f = OutputFormat::Json;
            else if (s == "csv") f = OutputFormat::Csv;
            else if (s == "markdown") f = OutputFormat::Markdown;
            else type_error("formats", "a non-empty subset of [json, csv, markdown]");
            if (!cfg.wants(f)) cfg.formats.push_back(f);
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

}  // namespace sentcause
