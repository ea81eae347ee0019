#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cvi {

/// Shortest round-trip decimal form ("nan" for NaN). Locale independent.
std::string format_double(double v);

/// Joins fields with ',' and terminates the row with '\n'. Fields holding a
/// comma, quote or newline are quoted.
std::string csv_row(const std::vector<std::string>& fields);

/// Splits on `sep`, trimming surrounding blanks; empty input gives no items.
std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace cvi
