#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cstdint>

namespace blasso {

/// Cholesky factor L (L L^T = A) of a symmetric positive definite matrix.
///
/// Every successful or failed construction increments a process-wide probe
/// counter so callers can assert that a code path performs no O(p^3)
/// factorizations.
class CholeskyFactor {
 public:
  /// Throws NumericalError (with size and diagonal diagnostics) when A is not
  /// numerically positive definite.
  explicit CholeskyFactor(const Eigen::MatrixXd& spd);

  Eigen::Index size() const noexcept { return llt_.rows(); }

  /// A^{-1} b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  /// L^{-T} z; for z ~ N(0, I) the result is N(0, A^{-1}).
  Eigen::VectorXd solve_upper(const Eigen::VectorXd& z) const;

  static std::uint64_t factorization_count() noexcept;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace blasso
