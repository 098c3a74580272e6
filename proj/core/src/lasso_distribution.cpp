#include "blasso/lasso_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blasso/errors.hpp"
#include "blasso/samplers.hpp"
#include "blasso/special_functions.hpp"

namespace blasso {
namespace {

using special::log_mills_ratio;
using special::log_normal_cdf;

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + exp(d)) without overflow.
double softplus(double d) noexcept { return d > 0.0 ? d + std::log1p(std::exp(-d)) : std::log1p(std::exp(d)); }

double log_add(double x, double y) noexcept {
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

void require_positive_a(const LassoParams& params) {
  validate(params);
  if (!(params.a > 0.0))
    throw UnsupportedParameter("Lasso density/CDF/quantile/sampling require a > 0; use classify_limit for a = 0");
}

// log Z(a, b, c) = log[m(v1) + m(v2)] - log(a)/2. When v1 < -37 the m(v1)
// term is 1/phi(v1) to double precision and is carried in log space.
double log_normalizer(double a, double b, double c) {
  const double s = std::sqrt(a);
  const double v1 = (c - std::abs(b)) / s;
  const double v2 = (c + std::abs(b)) / s;
  return log_add(log_mills_ratio(v1), log_mills_ratio(v2)) - std::log(s);
}

}  // namespace

void validate(const LassoParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c))
    throw InvalidParameter("Lasso parameters a, b, c must be finite");
  if (p.a < 0.0) throw InvalidParameter("Lasso parameter a must be >= 0");
  if (p.c < 0.0) throw InvalidParameter("Lasso parameter c must be >= 0");
  if (p.a == 0.0 && p.c == 0.0) throw InvalidParameter("Lasso parameters a and c must not both be 0");
}

MixtureRep make_mixture_rep(const LassoParams& p) {
  require_positive_a(p);
  MixtureRep rep{};
  rep.sqrt_a = std::sqrt(p.a);
  rep.sigma = 1.0 / rep.sqrt_a;
  rep.mu1 = (p.b - p.c) / p.a;
  rep.mu2 = (p.b + p.c) / p.a;
  rep.v1 = (p.c - std::abs(p.b)) / rep.sqrt_a;
  rep.v2 = (p.c + std::abs(p.b)) / rep.sqrt_a;

  const double log_m1 = log_mills_ratio(rep.v1);
  const double log_m2 = log_mills_ratio(rep.v2);
  rep.log_Z = log_add(log_m1, log_m2) - std::log(rep.sqrt_a);

  // The negative half-line carries m((c + b)/sqrt(a)), the positive one
  // m((c - b)/sqrt(a)); which of v1, v2 that is depends on the sign of b.
  const double log_neg = p.b <= 0.0 ? log_m1 : log_m2;
  const double log_pos = p.b <= 0.0 ? log_m2 : log_m1;
  rep.log_w = -softplus(log_pos - log_neg);
  rep.log_one_minus_w = -softplus(log_neg - log_pos);
  rep.w = std::exp(rep.log_w);
  rep.one_minus_w = std::exp(rep.log_one_minus_w);

  rep.log_neg_mass = log_normal_cdf(-(p.b + p.c) / rep.sqrt_a);
  rep.log_pos_mass = log_normal_cdf((p.b - p.c) / rep.sqrt_a);
  return rep;
}

std::array<double, 3> ExpFamilyDecomposition::sufficient_statistics(double x) noexcept {
  return {x * x, x, std::abs(x)};
}

double ExpFamilyDecomposition::log_density(double x) const noexcept {
  const auto t = sufficient_statistics(x);
  return natural_params[0] * t[0] + natural_params[1] * t[1] + natural_params[2] * t[2] - log_partition;
}

std::string_view to_string(LimitClass cls) noexcept {
  switch (cls) {
    case LimitClass::General: return "General";
    case LimitClass::Normal: return "Normal";
    case LimitClass::Laplace: return "Laplace";
    case LimitClass::AsymmetricLaplace: return "AsymmetricLaplace";
    case LimitClass::PositiveTruncNormal: return "PositiveTruncNormal";
    case LimitClass::NegativeTruncNormal: return "NegativeTruncNormal";
  }
  return "Unknown";
}

LassoDistribution::LassoDistribution(const LassoParams& params) : params_(params), rep_(make_mixture_rep(params)) {}

double LassoDistribution::log_pdf(double x) const {
  if (!std::isfinite(x)) throw DomainError("lasso_pdf: x must be finite");
  return -0.5 * params_.a * x * x + params_.b * x - params_.c * std::abs(x) - rep_.log_Z;
}

double LassoDistribution::pdf(double x) const { return std::exp(log_pdf(x)); }

double LassoDistribution::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("lasso_cdf: x must not be NaN");
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  const double s = rep_.sqrt_a;
  if (x <= 0.0) {
    const double log_cdf = rep_.log_w + (log_normal_cdf(x * s - (params_.b + params_.c) / s) - rep_.log_neg_mass);
    return std::clamp(std::exp(std::min(log_cdf, 0.0)), 0.0, 1.0);
  }
  const double log_tail =
      rep_.log_one_minus_w + (log_normal_cdf((params_.b - params_.c) / s - x * s) - rep_.log_pos_mass);
  return std::clamp(1.0 - std::exp(std::min(log_tail, 0.0)), 0.0, 1.0);
}

double LassoDistribution::quantile(double u) const {
  if (std::isnan(u) || u < 0.0 || u > 1.0) throw DomainError("lasso_quantile: u must lie in [0, 1]");
  if (u == 0.0) return -kInf;
  if (u == 1.0) return kInf;
  // Compare u with w on whichever side of 1/2 keeps full relative precision:
  // log u vs log w for small u, log(1 - u) vs log(1 - w) for large u.
  const double log_u = std::log(u);
  const double log_1mu = std::log1p(-u);
  const bool lower = u <= 0.5 ? log_u <= rep_.log_w : log_1mu >= rep_.log_one_minus_w;
  if (lower) {
    // mu2 + sigma Phi^{-1}[Phi(-mu2/sigma) u / w], argument assembled in logs.
    const double log_arg = std::min(rep_.log_neg_mass + log_u - rep_.log_w, 0.0);
    const double x = rep_.mu2 + rep_.sigma * special::normal_quantile_from_log(log_arg);
    return std::min(x, 0.0);
  }
  // mu1 - sigma Phi^{-1}[Phi(mu1/sigma) (1 - u) / (1 - w)].
  const double log_arg = std::min(rep_.log_pos_mass + log_1mu - rep_.log_one_minus_w, 0.0);
  const double x = rep_.mu1 - rep_.sigma * special::normal_quantile_from_log(log_arg);
  return std::max(x, 0.0);
}

double LassoDistribution::sample(RngStream& rng) const { return quantile(rng.uniform_open()); }

std::vector<double> LassoDistribution::sample(std::size_t n, RngStream& rng) const {
  std::vector<double> out(n);
  for (auto& x : out) x = sample(rng);
  return out;
}

double LassoDistribution::moment(int r) const {
  if (r < 1 || r > 4) throw DomainError("lasso_moment: r must lie in [1, 4]");
  const auto a_moments = trunc_normal_moments(rep_.mu1, rep_.sigma, TruncSide::Positive, r);
  const auto b_moments = trunc_normal_moments(rep_.mu2, rep_.sigma, TruncSide::Negative, r);
  const auto k = static_cast<std::size_t>(r - 1);
  return rep_.one_minus_w * a_moments[k] + rep_.w * b_moments[k];
}

double LassoDistribution::mgf(double t) const {
  if (!std::isfinite(t)) throw DomainError("lasso_mgf: t must be finite");
  return std::exp(log_normalizer(params_.a, params_.b + t, params_.c) - rep_.log_Z);
}

double LassoDistribution::mode() const noexcept {
  const double b = params_.b;
  const double sign = b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0);
  return std::max(std::abs(b) - params_.c, 0.0) * sign / params_.a;
}

ExpFamilyDecomposition LassoDistribution::exp_family() const noexcept {
  return {{-0.5 * params_.a, params_.b, -params_.c}, rep_.log_Z};
}

double lasso_pdf(double x, const LassoParams& params, bool log_scale) {
  const LassoDistribution dist(params);
  return log_scale ? dist.log_pdf(x) : dist.pdf(x);
}

double lasso_cdf(double x, const LassoParams& params) { return LassoDistribution(params).cdf(x); }

double lasso_quantile(double u, const LassoParams& params) { return LassoDistribution(params).quantile(u); }

std::vector<double> lasso_sample(std::size_t n, const LassoParams& params, RngStream& rng) {
  return LassoDistribution(params).sample(n, rng);
}

double lasso_moment(int r, const LassoParams& params) { return LassoDistribution(params).moment(r); }

double lasso_mgf(double t, const LassoParams& params) { return LassoDistribution(params).mgf(t); }

double lasso_mode(const LassoParams& params) { return LassoDistribution(params).mode(); }

ExpFamilyDecomposition exp_family_decomposition(const LassoParams& params) {
  return LassoDistribution(params).exp_family();
}

LimitClass classify_limit(const LassoParams& p, const LimitTolerances& tol) {
  validate(p);
  const double abs_b = std::abs(p.b);
  const auto laplace_class = [&] {
    return abs_b <= tol.laplace * p.c ? LimitClass::Laplace : LimitClass::AsymmetricLaplace;
  };
  if (p.a == 0.0) {
    if (!(abs_b < p.c)) throw InvalidParameter("Lasso with a = 0 requires |b| < c to be normalizable");
    return laplace_class();
  }
  if (abs_b < p.c && p.a / std::max(p.b * p.b, p.c * p.c) < tol.laplace) return laplace_class();

  const double sigma = 1.0 / std::sqrt(p.a);
  if (p.c * sigma < tol.normal * (1.0 + abs_b * sigma)) return LimitClass::Normal;

  const MixtureRep rep = make_mixture_rep(p);
  const double log_threshold = std::log(tol.truncation);
  if (rep.log_w < log_threshold) return LimitClass::PositiveTruncNormal;
  if (rep.log_one_minus_w < log_threshold) return LimitClass::NegativeTruncNormal;
  return LimitClass::General;
}

}  // namespace blasso
