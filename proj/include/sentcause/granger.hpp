#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentcause/ingest.hpp"
#include "sentcause/var.hpp"

namespace sentcause {

/// One directional Granger F-test. `f_stat` is empty for the perfect-fit case
/// (unrestricted RSS numerically zero), where p_value is 0.
struct GrangerResult {
    std::string cause;
    std::string effect;
    std::size_t p = 0;
    std::optional<double> f_stat;
    double p_value = 1.0;
    bool significant_5pct = false;
    std::size_t t_eff = 0;
    std::size_t df_num = 0;
    std::size_t df_den = 0;
    double rss_restricted = 0.0;
    double rss_unrestricted = 0.0;

    [[nodiscard]] bool perfect_fit() const noexcept { return !f_stat.has_value(); }
};

/// Unrestricted RSS at or below this fraction of sum(y^2) is treated as a perfect fit.
inline constexpr double kPerfectFitRelativeRss = 1e-20;
inline constexpr double kSignificanceLevel = 0.05;

/// Regresses effect_t on [1, effect_{t-1..t-p}, cause_{t-1..t-p}] (unrestricted) and on
/// [1, effect_{t-1..t-p}] (restricted) over identical rows t = p .. T-1;
/// F = ((RSS_r - RSS_u)/p) / (RSS_u/(T_eff - 2p - 1)), p-value from the F(p, T_eff - 2p - 1) upper tail.
[[nodiscard]] GrangerResult granger_test(const AlignedFrame& frame, const std::string& cause,
                                         const std::string& effect, std::size_t p);

// ---------------------------------------------------------------------------
// Experiment matrix

/// Which sides of the (returns, sentiment) pair are first-differenced.
enum class Transform { Levels, ReturnVsSentimentChange, ReturnChangeVsSentiment, ReturnChangeVsSentimentChange };
enum class Indicator { Sent, Arms };
/// Test1: returns side causes sentiment side. Test2: the converse.
enum class Direction { Test1, Test2 };

inline constexpr Transform kAllTransforms[] = {Transform::Levels, Transform::ReturnVsSentimentChange,
                                               Transform::ReturnChangeVsSentiment,
                                               Transform::ReturnChangeVsSentimentChange};
inline constexpr Indicator kAllIndicators[] = {Indicator::Sent, Indicator::Arms};
inline constexpr Direction kAllDirections[] = {Direction::Test1, Direction::Test2};

[[nodiscard]] const char* transform_key(Transform t) noexcept;     ///< "levels", "rt_dsent", ...
[[nodiscard]] const char* transform_title(Transform t) noexcept;   ///< "Stock return & sentiment", ...
[[nodiscard]] const char* indicator_key(Indicator i) noexcept;     ///< "SENT" / "ARMS"
[[nodiscard]] const char* direction_key(Direction d) noexcept;     ///< "test1" / "test2"
[[nodiscard]] bool differences_returns(Transform t) noexcept;
[[nodiscard]] bool differences_sentiment(Transform t) noexcept;
/// Column labels used inside the frames, e.g. "RT", "ΔRT", "SENT", "ΔARMS".
[[nodiscard]] std::string returns_label(Transform t);
[[nodiscard]] std::string sentiment_label(Transform t, Indicator i);

struct CellKey {
    Transform transform;
    Indicator indicator;
    std::size_t lag;
    Direction direction;
    auto operator<=>(const CellKey&) const = default;
};

struct FamilyKey {
    Transform transform;
    Indicator indicator;
    auto operator<=>(const FamilyKey&) const = default;
};

struct VarKey {
    Transform transform;
    Indicator indicator;
    std::size_t lag;
    auto operator<=>(const VarKey&) const = default;
};

/// Either a result or the reason it is unavailable.
struct GrangerCell {
    std::optional<GrangerResult> result;
    std::string error;
};

struct VarTableCell {
    std::optional<CoefficientTable> table;
    std::string error;
};

struct LagChoice {
    std::optional<LagSelection> selection;
    std::string error;
};

struct ExperimentOptions {
    std::vector<std::size_t> lags{1, 2};
    std::size_t p_max_for_aic = 10;
};

struct ExperimentReport {
    std::string market;
    std::vector<std::size_t> lags;
    std::map<CellKey, GrangerCell> cells;
    std::map<VarKey, VarTableCell> var_tables;
    std::map<FamilyKey, LagChoice> aic_lag;
    std::map<FamilyKey, std::size_t> frame_rows;  ///< aligned rows per family (0 when alignment failed)

    [[nodiscard]] std::size_t unavailable_cells() const;
};

/// Runs both directions at every lag, the VAR fit per lag and AIC lag selection for each of the
/// 4 transformations x 2 indicators. Per-cell failures are recorded in-cell.
/// Families are evaluated in parallel (OpenMP); output is identical to run_experiment_serial.
[[nodiscard]] ExperimentReport run_experiment(const TimeSeries& returns, const TimeSeries& sent,
                                              const TimeSeries& arms, const std::string& market,
                                              const ExperimentOptions& options = {});
[[nodiscard]] ExperimentReport run_experiment_serial(const TimeSeries& returns, const TimeSeries& sent,
                                                     const TimeSeries& arms, const std::string& market,
                                                     const ExperimentOptions& options = {});

}  // namespace sentcause
