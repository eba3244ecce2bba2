#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentcause {

enum class OutputFormat { Json, Csv, Markdown };

struct MarketConfig {
    std::string label;
    std::filesystem::path panel_path;
    std::optional<std::filesystem::path> index_path;
};

struct RunConfig {
    std::vector<MarketConfig> markets;
    std::vector<std::size_t> lags{1, 2};
    std::size_t p_max_for_aic = 10;
    bool run_adf = true;
    bool export_series = false;  ///< also write <label>_{rt,sent,arms}.csv as date,value
    std::filesystem::path output_dir;
    std::vector<OutputFormat> formats{OutputFormat::Json, OutputFormat::Csv, OutputFormat::Markdown};
    std::uint64_t seed = 1;

    [[nodiscard]] bool wants(OutputFormat f) const;
};

/// Strict JSON config parsing: unknown keys, missing required fields and type mismatches
/// raise ConfigError naming the field. Relative paths resolve against `base_dir`.
[[nodiscard]] RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

/// Reads and parses a config file (IoError when unreadable).
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Closest known key within edit distance 2, if any.
[[nodiscard]] std::optional<std::string> suggest_key(std::string_view unknown, const std::vector<std::string>& known);

}  // namespace sentcause
