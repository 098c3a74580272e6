#include "blasso/special_functions.hpp"

#include <cmath>
#include <limits>

#include "blasso/errors.hpp"

namespace blasso::special {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

// log(1e-300): below this exp(log_p) leaves the range AS 241 was built for.
constexpr double kLogTinyProbability = -690.77552789821368;

// Nested Horner form, evaluated in exactly the order the coefficients are
// published so results are reproducible across implementations.
double mills_rational(double x) noexcept {
  const auto& p = kMillsRational.numerator;
  const auto& q = kMillsRational.denominator;
  if (x >= kMillsAsymptoticThreshold) return 1.0 / x;
  const double num =
      p[0] + x * (p[1] + x * (p[2] + x * (p[3] + x * (p[4] + x * (p[5] + x * (p[6] + x * (p[7] + x * p[8])))))));
  const double den =
      q[0] +
      x * (q[1] + x * (q[2] + x * (q[3] + x * (q[4] + x * (q[5] + x * (q[6] + x * (q[7] + x * (q[8] + x))))))));
  return num / den;
}

double as241_central(double q) noexcept {
  const double r = 0.180625 - q * q;
  return q *
         (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
              45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
           133.14166789178437745) * r + 3.387132872796366608) /
         (((((((r * 5226.495278852854561 + 28729.085735721942674) * r + 39307.89580009271061) * r +
              21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
           42.313330701600911252) * r + 1.0);
}

// r = sqrt(-log(min(p, 1 - p))); returns the positive deviate.
double as241_tail(double r) noexcept {
  if (r <= 5.0) {
    r -= 1.6;
    return (((((((r * 7.7454501427834140764e-4 + .0227238449892691845833) * r + .24178072517745061177) * r +
                1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
             4.6303378461565452959) * r + 1.42343711074968357734) /
           (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + .0151986665636164571966) * r +
                .14810397642748007459) * r + .68976733498510000455) * r + 1.6763848301838038494) * r +
             2.05319162663775882187) * r + 1.0);
  }
  r -= 5.0;
  return (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + .0012426609473880784386) * r +
              .026532189526576123093) * r + .29656057182850489123) * r + 1.7848265399172913358) * r +
           5.4637849111641143699) * r + 6.6579046435011037772) /
         (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
              7.868691311456132591e-4) * r + .0148753612908506148525) * r + .13692988092273580531) * r +
           .59983220655588793769) * r + 1.0);
}

// Lower tail beyond exp(-690): start from the two-term asymptotic
// log Phi(x) ~ -x^2/2 - log(-x sqrt(2 pi)) and polish with Newton steps on
// the exact log Phi, whose derivative is 1 / m(-x).
double deep_tail_quantile(double log_p) noexcept {
  const double base = -2.0 * log_p - 2.0 * kLogSqrt2Pi;
  double t = std::sqrt(-2.0 * log_p);
  for (int i = 0; i < 3; ++i) t = std::sqrt(base - 2.0 * std::log(t));
  double x = -t;
  for (int i = 0; i < 6; ++i) {
    const double step = (log_normal_cdf(x) - log_p) * mills_rational(-x);
    x -= step;
    if (std::abs(step) <= 1e-15 * std::abs(x)) break;
  }
  return x;
}

}  // namespace

double normal_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double log_normal_pdf(double x) noexcept { return -0.5 * x * x - kLogSqrt2Pi; }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double log_normal_cdf(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x == -kInf) return -kInf;
  if (x < 0.0) return log_normal_pdf(x) + std::log(mills_rational(-x));
  return std::log1p(-normal_pdf(x) * mills_rational(x));
}

double mills_ratio_positive(double x) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("mills_ratio_positive: x must be finite and >= 0");
  return mills_rational(x);
}

MillsValue mills_ratio(double x) {
  if (!std::isfinite(x)) throw DomainError("mills_ratio: x must be finite");
  if (x >= 0.0) return {mills_rational(x), false};
  if (-x < kLogSpaceThreshold) return {1.0 / normal_pdf(x) - mills_rational(-x), false};
  const double log_inv_pdf = -log_normal_pdf(x);
  if (log_inv_pdf >= std::log(std::numeric_limits<double>::max())) return {kInf, true};
  return {std::exp(log_inv_pdf) - mills_rational(-x), false};
}

double log_mills_ratio(double x) {
  if (!std::isfinite(x)) throw DomainError("log_mills_ratio: x must be finite");
  if (x >= 0.0) return std::log(mills_rational(x));
  // m(x) = Phi(-x) / phi(x), and Phi(-x) = 1 - phi(x) m(-x).
  return -log_normal_pdf(x) + std::log1p(-normal_pdf(x) * mills_rational(-x));
}

double normal_quantile(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) throw DomainError("normal_quantile: p must lie in [0, 1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) return as241_central(q);
  const double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  const double v = as241_tail(r);
  return q < 0.0 ? -v : v;
}

double normal_quantile_from_log(double log_p) {
  if (std::isnan(log_p) || log_p > 0.0) throw DomainError("normal_quantile_from_log: log_p must be <= 0");
  if (log_p == 0.0) return kInf;
  if (log_p == -kInf) return -kInf;
  if (log_p < kLogTinyProbability) return deep_tail_quantile(log_p);
  const double p = std::exp(log_p);
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) return as241_central(q);
  if (q < 0.0) return -as241_tail(std::sqrt(-log_p));
  return as241_tail(std::sqrt(-std::log(-std::expm1(log_p))));
}

}  // namespace blasso::special
