#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "blasso/rng.hpp"

namespace blasso {

/// Parameters of Lasso(a, b, c), density proportional to
/// exp(-a x^2 / 2 + b x - c |x|).
struct LassoParams {
  double a;
  double b;
  double c;
};

/// Throws InvalidParameter naming the violated constraint unless a >= 0,
/// c >= 0, all finite, and a and c are not both zero.
void validate(const LassoParams& params);

/// Two-truncated-normal mixture view of Lasso(a, b, c) with a > 0:
/// (1 - w) TN+(mu1, sigma^2) + w TN-(mu2, sigma^2).
///
/// w is the mass of the negative half-line. w and one_minus_w are each formed
/// directly from the Mill's-ratio terms (never as 1 - the other), and their
/// logarithms are kept so that probabilities far below 1e-300 still carry
/// information.
struct MixtureRep {
  double mu1;
  double mu2;
  double sigma;
  double sqrt_a;
  double w;
  double one_minus_w;
  double log_w;
  double log_one_minus_w;
  double log_Z;
  double v1;
  double v2;
  /// log Phi(-mu2 / sigma) and log Phi(mu1 / sigma), the truncation masses.
  double log_neg_mass;
  double log_pos_mass;
};

/// Throws UnsupportedParameter when a <= 0 (see classify_limit for the
/// Laplace limits).
MixtureRep make_mixture_rep(const LassoParams& params);

struct ExpFamilyDecomposition {
  /// (-a/2, b, -c), paired with the sufficient statistics (x^2, x, |x|).
  std::array<double, 3> natural_params;
  /// A(theta); equals log Z.
  double log_partition;

  static std::array<double, 3> sufficient_statistics(double x) noexcept;
  double log_density(double x) const noexcept;
};

enum class LimitClass { General, Normal, Laplace, AsymmetricLaplace, PositiveTruncNormal, NegativeTruncNormal };

std::string_view to_string(LimitClass cls) noexcept;

struct LimitTolerances {
  /// Normal when c sigma < normal * (1 + |b| sigma).
  double normal = 1e-12;
  /// Truncated-normal classes when min(w, 1 - w) < truncation.
  double truncation = 1e-300;
  /// Laplace family when a / max(b^2, c^2) < laplace.
  double laplace = 1e-12;
};

/// Full d/p/q/r surface of Lasso(a, b, c) for a > 0. Construction computes the
/// mixture representation once; every member is then a cheap const call.
class LassoDistribution {
 public:
  explicit LassoDistribution(const LassoParams& params);

  const LassoParams& params() const noexcept { return params_; }
  const MixtureRep& mixture() const noexcept { return rep_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  /// u in [0, 1]; u = 0 and u = 1 map to -inf and +inf.
  double quantile(double u) const;
  double sample(RngStream& rng) const;
  std::vector<double> sample(std::size_t n, RngStream& rng) const;
  /// Raw moment E(X^r), r in [1, 4].
  double moment(int r) const;
  double mgf(double t) const;
  double mode() const noexcept;
  ExpFamilyDecomposition exp_family() const noexcept;

 private:
  LassoParams params_;
  MixtureRep rep_;
};

double lasso_pdf(double x, const LassoParams& params, bool log_scale = false);
double lasso_cdf(double x, const LassoParams& params);
double lasso_quantile(double u, const LassoParams& params);
std::vector<double> lasso_sample(std::size_t n, const LassoParams& params, RngStream& rng);
double lasso_moment(int r, const LassoParams& params);
double lasso_mgf(double t, const LassoParams& params);
double lasso_mode(const LassoParams& params);
ExpFamilyDecomposition exp_family_decomposition(const LassoParams& params);
LimitClass classify_limit(const LassoParams& params, const LimitTolerances& tolerances = {});

}  // namespace blasso
