#pragma once

#include <functional>

#include "blasso/rng.hpp"

namespace blasso {

struct SliceConfig {
  double initial_width = 1.0;
  int max_stepout = 64;
  int max_shrink = 128;

  void validate() const;
};

struct SliceResult {
  double value;
  /// Shrinkage ran out before a point inside the slice was found; value is
  /// the unchanged current point.
  bool exhausted;
  int evaluations;
};

/// One univariate slice-sampling update (stepping out, then shrinkage) on
/// (0, inf). log_density may return -inf outside its support; points <= 0 are
/// never evaluated as candidates.
SliceResult slice_sample_step(const std::function<double(double)>& log_density, double current,
                              const SliceConfig& config, RngStream& rng);

}  // namespace blasso
