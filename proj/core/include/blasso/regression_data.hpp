#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace blasso {

/// Response, design and the Gram quantities every sampler iteration reuses.
/// Built by standardize() from a Dataset, or directly from a prepared design.
struct RegressionData {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  Eigen::MatrixXd XtX;
  Eigen::VectorXd Xty;
  double y_sq_norm = 0.0;
  Eigen::VectorXd col_sq_norms;
  std::vector<std::string> column_names;

  Eigen::Index n() const noexcept { return X.rows(); }
  Eigen::Index p() const noexcept { return X.cols(); }

  /// Takes X and y as given (no centering or scaling) and precomputes the
  /// Gram quantities. Throws InvalidParameter on shape mismatch or empty input.
  static RegressionData from_design(Eigen::MatrixXd X, Eigen::VectorXd y, std::vector<std::string> names = {});
};

}  // namespace blasso
