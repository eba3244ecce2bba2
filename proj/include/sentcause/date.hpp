#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sentcause {

/// Calendar date stored as days since 1970-01-01. Dates are opaque ordered keys:
/// no timezone, no intraday component.
class Date {
public:
    constexpr Date() = default;

    [[nodiscard]] static constexpr Date from_days(std::int32_t days) noexcept {
        Date d;
        d.days_ = days;
        return d;
    }
    [[nodiscard]] static Date from_ymd(int year, unsigned month, unsigned day);

    /// Strict `YYYY-MM-DD`; rejects impossible dates such as 2010-02-30.
    [[nodiscard]] static std::optional<Date> parse(std::string_view iso);

    [[nodiscard]] std::string iso() const;
    [[nodiscard]] constexpr std::int32_t days_since_epoch() const noexcept { return days_; }
    /// 0 = Sunday ... 6 = Saturday
    [[nodiscard]] unsigned weekday() const;

    constexpr auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

}  // namespace sentcause
