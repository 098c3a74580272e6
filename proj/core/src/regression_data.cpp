#include "blasso/regression_data.hpp"

#include "blasso/errors.hpp"

namespace blasso {

RegressionData RegressionData::from_design(Eigen::MatrixXd X, Eigen::VectorXd y, std::vector<std::string> names) {
  if (X.rows() != y.size()) throw InvalidParameter("design has " + std::to_string(X.rows()) + " rows but y has " +
                                                   std::to_string(y.size()) + " entries");
  if (X.rows() < 1 || X.cols() < 1) throw InvalidParameter("design must have n >= 1 and p >= 1");
  if (!X.allFinite() || !y.allFinite()) throw InvalidParameter("design and response must be finite");
  if (names.empty()) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
  } else if (static_cast<Eigen::Index>(names.size()) != X.cols()) {
    throw InvalidParameter("column name count does not match design width");
  }

  RegressionData data;
  data.XtX.noalias() = X.transpose() * X;
  data.Xty.noalias() = X.transpose() * y;
  data.y_sq_norm = y.squaredNorm();
  data.col_sq_norms = data.XtX.diagonal();
  data.X = std::move(X);
  data.y = std::move(y);
  data.column_names = std::move(names);
  return data;
}

}  // namespace blasso
