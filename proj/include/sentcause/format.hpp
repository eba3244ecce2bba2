#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sentcause {

/// Four decimals; negative zero is printed as "0.0000".
[[nodiscard]] std::string format_fixed4(double x);

/// p-values: "0" for an exact zero, one significant digit in scientific notation below 1e-4
/// ("1E-159", "2E-05"), four decimals otherwise.
[[nodiscard]] std::string format_p_value(double p);

/// Shortest round-trip representation shared by the JSON and CSV writers; "null"-free:
/// non-finite values become "inf", "-inf" or "nan".
[[nodiscard]] std::string format_number(double x);

/// RFC 4180 quoting when the field contains a comma, quote or line break.
[[nodiscard]] std::string csv_field(std::string_view s);
[[nodiscard]] std::string csv_row(const std::vector<std::string>& fields);

}  // namespace sentcause
