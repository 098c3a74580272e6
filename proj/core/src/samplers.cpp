#include "blasso/samplers.hpp"

#include <cmath>

#include "blasso/errors.hpp"
#include "blasso/special_functions.hpp"

namespace blasso {
namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidParameter(std::string(what) + " must be finite and > 0");
}

// Marsaglia & Tsang for shape >= 1, unit rate.
double gamma_unit_rate(double shape, RngStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Continued fraction for r_k = I_k / I_{k-1}, where
// I_k(alpha) = int_0^inf t^k exp(-t^2/2 - alpha t) dt; converges quickly for
// alpha >= 2 and avoids the cancellation of the forward recurrence.
constexpr int kContinuedFractionDepth = 120;
constexpr double kContinuedFractionThreshold = 2.0;

}  // namespace

double gamma_sample(double shape, double rate, RngStream& rng) {
  require_positive(shape, "gamma shape");
  require_positive(rate, "gamma rate");
  if (shape < 1.0) {
    const double g = gamma_unit_rate(shape + 1.0, rng);
    return g * std::pow(rng.uniform_open(), 1.0 / shape) / rate;
  }
  return gamma_unit_rate(shape, rng) / rate;
}

double inverse_gamma_sample(double shape, double rate, RngStream& rng) {
  require_positive(shape, "inverse-gamma shape");
  require_positive(rate, "inverse-gamma rate");
  return rate / gamma_sample(shape, 1.0, rng);
}

double inverse_gaussian_sample(double mean, double shape, RngStream& rng) {
  require_positive(mean, "inverse-Gaussian mean");
  require_positive(shape, "inverse-Gaussian shape");
  const double nu = rng.normal();
  const double t = mean * nu * nu / (2.0 * shape);
  // mean * (1 + t - sqrt(t^2 + 2t)) without cancellation.
  const double x = mean / (1.0 + t + std::sqrt(t * t + 2.0 * t));
  if (rng.uniform() * (mean + x) <= mean) return x;
  return mean * (mean / x);
}

double laplace_limit_sample(double b, double c, RngStream& rng) {
  if (!(std::abs(b) < c)) throw InvalidParameter("Laplace limit requires |b| < c");
  const double rate_pos = c - b;
  const double rate_neg = c + b;
  const double p_negative = rate_pos / (rate_pos + rate_neg);
  const double e = rng.exponential();
  return rng.uniform() < p_negative ? -e / rate_neg : e / rate_pos;
}

std::vector<double> trunc_normal_moments(double mu, double sigma, TruncSide side, int max_order) {
  if (max_order < 1 || max_order > 4) throw DomainError("trunc_normal_moments: max_order must lie in [1, 4]");
  require_positive(sigma, "truncated normal sigma");
  if (!std::isfinite(mu)) throw DomainError("trunc_normal_moments: mu must be finite");
  if (side == TruncSide::Negative) {
    auto m = trunc_normal_moments(-mu, sigma, TruncSide::Positive, max_order);
    for (std::size_t k = 0; k < m.size(); k += 2) m[k] = -m[k];
    return m;
  }

  // X = sigma * t with t weighted by exp(-t^2/2 - alpha t) on t > 0.
  const double alpha = -mu / sigma;
  std::vector<double> standardized(static_cast<std::size_t>(max_order) + 1);
  standardized[0] = 1.0;
  if (alpha >= kContinuedFractionThreshold) {
    double ratios[5] = {};
    double r = 0.0;
    for (int k = kContinuedFractionDepth; k >= 1; --k) {
      r = k / (alpha + r);
      if (k <= max_order) ratios[k] = r;
    }
    for (int k = 1; k <= max_order; ++k) standardized[k] = standardized[k - 1] * ratios[k];
  } else {
    standardized[1] = std::exp(-special::log_mills_ratio(alpha)) - alpha;
    for (int k = 2; k <= max_order; ++k)
      standardized[k] = (k - 1) * standardized[k - 2] - alpha * standardized[k - 1];
  }

  std::vector<double> moments(static_cast<std::size_t>(max_order));
  double scale = 1.0;
  for (int k = 1; k <= max_order; ++k) {
    scale *= sigma;
    moments[k - 1] = scale * standardized[k];
  }
  return moments;
}

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mean, const CholeskyFactor& precision, double scale,
                           RngStream& rng) {
  require_positive(scale, "mvn scale");
  if (mean.size() != precision.size()) throw InvalidParameter("mvn_sample: mean and precision sizes differ");
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return mean + std::sqrt(scale) * precision.solve_upper(z);
}

}  // namespace blasso
