#include "blasso/linalg.hpp"

#include <atomic>
#include <sstream>

#include "blasso/errors.hpp"

namespace blasso {
namespace {
std::atomic<std::uint64_t> g_factorizations{0};
}

CholeskyFactor::CholeskyFactor(const Eigen::MatrixXd& spd) {
  g_factorizations.fetch_add(1, std::memory_order_relaxed);
  if (spd.rows() != spd.cols()) throw NumericalError("cholesky: matrix is not square");
  llt_.compute(spd);
  if (llt_.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "cholesky: matrix of size " << spd.rows() << " is not positive definite (min diagonal "
        << spd.diagonal().minCoeff() << ", max diagonal " << spd.diagonal().maxCoeff() << ", asymmetry "
        << (spd - spd.transpose()).cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  }
}

Eigen::VectorXd CholeskyFactor::solve(const Eigen::VectorXd& b) const { return llt_.solve(b); }

Eigen::VectorXd CholeskyFactor::solve_upper(const Eigen::VectorXd& z) const {
  return llt_.matrixU().solve(z);
}

std::uint64_t CholeskyFactor::factorization_count() noexcept {
  return g_factorizations.load(std::memory_order_relaxed);
}

}  // namespace blasso
