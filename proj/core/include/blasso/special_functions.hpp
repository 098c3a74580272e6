#pragma once

#include <array>

// Scalar normal-distribution kernels that stay finite over the whole real
// line: the Mill's ratio m(x) = Phi(-x) / phi(-x), log-scale density and CDF,
// and a quantile that accepts log-probabilities.

namespace blasso::special {

/// Degree (8, 9) rational approximation of m(x) on x >= 0. The numerator
/// holds p0..p8 and the denominator q0..q9 (lowest order first, q9 = 1).
struct RationalCoefficients {
  std::array<double, 9> numerator;
  std::array<double, 10> denominator;
};

inline constexpr RationalCoefficients kMillsRational{
    {46697.7602201933, 69339.6909002865, 50590.6980372328, 23184.62760379742,
     7236.31450136984, 1572.136841909630, 232.9967987466022, 21.74833514806325,
     1.000000000000095},
    {37259.42190376593, 85053.78630172011, 89598.92885811838, 57370.93777717682,
     24713.27114352290, 7467.311205544661, 1593.885178714749, 233.9967987305447,
     21.74833514813385, 1.0}};

/// Beyond this point the rational form would overflow; m(x) ~ 1/x there.
inline constexpr double kMillsAsymptoticThreshold = 1.75e34;

/// |x| at which phi(x) has lost all precision and 1/phi(x) is handled in
/// log space.
inline constexpr double kLogSpaceThreshold = 37.0;

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;
inline constexpr double kSqrtHalfPi = 1.2533141373155002512078826424055;

double normal_pdf(double x) noexcept;
double log_normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;

/// log Phi(x), finite for every finite x.
double log_normal_cdf(double x) noexcept;

/// m(x) for x >= 0. Throws DomainError for negative or non-finite x.
double mills_ratio_positive(double x);

struct MillsValue {
  double value;
  /// Set when 1/phi(x) is not representable; value is then +infinity and the
  /// caller should switch to log_mills_ratio.
  bool overflow;
};

/// m(x) over the whole real line, using m(x) = 1/phi(x) - m(-x) for x < 0.
MillsValue mills_ratio(double x);

/// log m(x) without overflow for any finite x.
double log_mills_ratio(double x);

/// Standard normal quantile (Wichura's AS 241). p in [0, 1].
double normal_quantile(double p);

/// Phi^{-1}(exp(log_p)) for log_p <= 0, accurate deep into the lower tail
/// (log_p down to -1e8 and beyond).
double normal_quantile_from_log(double log_p);

}  // namespace blasso::special
