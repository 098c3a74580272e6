#include "blasso/slice.hpp"

#include <cmath>
#include <limits>

#include "blasso/errors.hpp"

namespace blasso {

void SliceConfig::validate() const {
  if (!(initial_width > 0.0) || !std::isfinite(initial_width))
    throw InvalidParameter("slice initial_width must be finite and > 0");
  if (max_stepout < 1 || max_shrink < 1) throw InvalidParameter("slice step counts must be >= 1");
}

SliceResult slice_sample_step(const std::function<double(double)>& log_density, double current,
                              const SliceConfig& config, RngStream& rng) {
  config.validate();
  if (!(current > 0.0)) throw DomainError("slice_sample_step: current point must be > 0");
  const auto f = [&](double x) {
    return x > 0.0 ? log_density(x) : -std::numeric_limits<double>::infinity();
  };
  int evaluations = 1;
  const double f0 = log_density(current);
  if (!std::isfinite(f0)) throw DomainError("slice_sample_step: log density is not finite at the current point");

  const double level = f0 - rng.exponential();
  const double w = config.initial_width;
  double left = current - w * rng.uniform();
  double right = left + w;
  auto j = static_cast<int>(std::floor(config.max_stepout * rng.uniform()));
  int k = config.max_stepout - 1 - j;
  while (j > 0 && left > 0.0 && level < f(left)) {
    ++evaluations;
    left -= w;
    --j;
  }
  while (k > 0 && level < f(right)) {
    ++evaluations;
    right += w;
    --k;
  }
  if (left < 0.0) left = 0.0;

  for (int s = 0; s < config.max_shrink; ++s) {
    const double candidate = left + (right - left) * rng.uniform();
    ++evaluations;
    if (candidate > 0.0 && level < f(candidate)) return {candidate, false, evaluations};
    if (candidate < current) {
      left = candidate;
    } else {
      right = candidate;
    }
  }
  return {current, true, evaluations};
}

}  // namespace blasso
