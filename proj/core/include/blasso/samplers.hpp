#pragma once

#include <Eigen/Core>
#include <vector>

#include "blasso/linalg.hpp"
#include "blasso/rng.hpp"

// Stochastic kernels shared by the distribution and the Gibbs samplers.
// Gamma-family draws use the shape/rate convention: Gamma(u, v) has mean u/v.

namespace blasso {

double gamma_sample(double shape, double rate, RngStream& rng);

/// 1 / Gamma(shape, rate); density proportional to x^{-shape-1} exp(-rate/x),
/// mean rate / (shape - 1).
double inverse_gamma_sample(double shape, double rate, RngStream& rng);

/// Inverse Gaussian with E = mean and Var = mean^3 / shape
/// (Michael, Schucany and Haas transformation).
double inverse_gaussian_sample(double mean, double shape, RngStream& rng);

/// Draw from the a = 0 limit of the Lasso kernel, exp(b x - c |x|), which is
/// an asymmetric Laplace with rate c - b on x > 0 and c + b on x < 0.
/// Requires |b| < c.
double laplace_limit_sample(double b, double c, RngStream& rng);

enum class TruncSide { Positive, Negative };

/// Raw moments E(X^r), r = 1..max_order, of N(mu, sigma^2) truncated to x > 0
/// (Positive) or x < 0 (Negative). max_order must lie in [1, 4].
std::vector<double> trunc_normal_moments(double mu, double sigma, TruncSide side, int max_order);

/// Draw from N(mean, scale * A^{-1}) given the Cholesky factor of the
/// precision matrix A.
Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mean, const CholeskyFactor& precision, double scale,
                           RngStream& rng);

}  // namespace blasso
