#pragma once

#include <span>
#include <string>
#include <vector>

namespace blasso::cli {

/// Formats a vector the way R's print() does: each value rounded to `digits`
/// significant digits, then a common number of decimals (or common scientific
/// notation when that is narrower) across the whole vector.
std::vector<std::string> format_vector(std::span<const double> values, int digits);

/// format_vector on a single value.
std::string format_value(double value, int digits);

std::string join(const std::vector<std::string>& parts, const std::string& separator);

}  // namespace blasso::cli
