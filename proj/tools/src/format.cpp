#include "blasso_cli/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace blasso::cli {
namespace {

struct Shape {
  int sig;       // significant digits actually needed
  int exponent;  // decimal exponent of the rounded value
};

Shape shape_of(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, std::abs(x));
  const std::string s(buf);
  const auto e_pos = s.find('e');
  std::string mantissa = s.substr(0, e_pos);
  mantissa.erase(std::remove(mantissa.begin(), mantissa.end(), '.'), mantissa.end());
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  return {static_cast<int>(mantissa.size()), std::atoi(s.c_str() + e_pos + 1)};
}

std::string special_value(double x) {
  if (std::isnan(x)) return "NaN";
  return x > 0 ? "Inf" : "-Inf";
}

}  // namespace

std::vector<std::string> format_vector(std::span<const double> values, int digits) {
  digits = std::clamp(digits, 1, 17);
  bool any_finite = false;
  bool negative = false;
  int max_sig = 1;
  int max_left = 1;
  int rgt = 0;
  int max_exp = 0;
  for (double x : values) {
    if (!std::isfinite(x)) continue;
    if (x < 0) negative = true;
    if (x == 0.0) {
      any_finite = true;
      continue;
    }
    const Shape sh = shape_of(x, digits);
    any_finite = true;
    max_sig = std::max(max_sig, sh.sig);
    max_left = std::max(max_left, sh.exponent + 1);
    rgt = std::max(rgt, sh.sig - 1 - sh.exponent);
    max_exp = std::max(max_exp, std::abs(sh.exponent));
  }

  const int neg = negative ? 1 : 0;
  const int fixed_width = neg + max_left + (rgt > 0 ? rgt + 1 : 0);
  const int sci_width = neg + (max_sig > 1 ? max_sig + 1 : 1) + (max_exp >= 100 ? 5 : 4);
  const bool fixed = !any_finite || fixed_width <= sci_width;

  std::vector<std::string> out;
  out.reserve(values.size());
  char buf[512];
  for (double x : values) {
    if (!std::isfinite(x)) {
      out.push_back(special_value(x));
    } else if (fixed) {
      std::snprintf(buf, sizeof(buf), "%.*f", rgt, x);
      out.emplace_back(buf);
    } else {
      std::snprintf(buf, sizeof(buf), "%.*e", max_sig - 1, x);
      out.emplace_back(buf);
    }
  }
  return out;
}

std::string format_value(double value, int digits) {
  return format_vector(std::span<const double>(&value, 1), digits).front();
}

std::string join(const std::vector<std::string>& parts, const std::string& separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += separator;
    out += parts[i];
  }
  return out;
}

}  // namespace blasso::cli
