#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "blasso/regression_data.hpp"

namespace blasso {

/// A raw table with the response split out. Rows with missing cells have
/// already been removed.
struct Dataset {
  std::string name;
  Eigen::VectorXd y_raw;
  Eigen::MatrixXd X_raw;
  std::vector<std::string> column_names;
  std::string response_name = "y";
  std::size_t dropped_rows = 0;
  std::vector<std::string> warnings;

  Eigen::Index n() const noexcept { return X_raw.rows(); }
  Eigen::Index p() const noexcept { return X_raw.cols(); }
};

/// Column name, or zero-based column index.
using ResponseColumn = std::variant<std::string, std::size_t>;

/// Reads an RFC-4180 style table. The first row is taken as a header when any
/// of its cells is non-numeric; otherwise columns are named V1, V2, ...
/// Empty, NA and NaN cells drop the row (counted, with a warning).
/// Throws IoError, ParseError (1-based row and column) or ConfigError.
Dataset load_csv(const std::filesystem::path& path, const ResponseColumn& response, char delimiter = ',');

/// Writes the response as the first column followed by the predictors, using
/// shortest round-trip number formatting.
void write_csv(const std::filesystem::path& path, const Dataset& dataset, char delimiter = ',');

enum class InteractionRule {
  None,
  /// All products of distinct columns: p0 + p0(p0-1)/2 columns.
  Pairs,
  /// Pairs plus squares: p0 + p0(p0+1)/2 columns.
  PairsAndSquares,
};

const char* to_string(InteractionRule rule) noexcept;
InteractionRule parse_interaction_rule(const std::string& text);

/// Centers y and scales every predictor to mean 0 and unit sample standard
/// deviation (n - 1 denominator). Interaction columns are products of the
/// standardized base columns, standardized again; they are named "a:b" and
/// "a^2". Zero-variance columns are dropped with a warning appended to
/// `warnings` when given. Throws InvalidParameter for n < 2 or when no
/// columns remain.
RegressionData standardize(const Dataset& dataset, InteractionRule rule = InteractionRule::None,
                           std::vector<std::string>* warnings = nullptr);

struct DesignSpec {
  enum class Kind { IidNormal, Correlated };
  Kind kind = Kind::IidNormal;
  /// Correlated designs have corr(x_i, x_j) = rho^|i-j|.
  double rho = 0.0;
};

/// y = X beta + sigma * noise with standard normal noise.
Dataset synth_regression(std::size_t n, std::size_t p, const Eigen::VectorXd& beta, double sigma,
                         const DesignSpec& design, std::uint64_t seed);

}  // namespace blasso
