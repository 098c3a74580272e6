#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "blasso/lasso_distribution.hpp"
#include "blasso/regression_data.hpp"
#include "blasso/rng.hpp"
#include "blasso/slice.hpp"

// Gibbs samplers for the Bayesian Lasso
//
//   y ~ N(X beta, sigma^2 I),  beta_j | sigma, lambda ~ Laplace(lambda / sigma),
//   sigma^2 ~ IG(a_tilde, b_tilde),  lambda^2 ~ Gamma(u, v)  (shape/rate).
//
// pc_gibbs augments with a_j ~ IG(1, 1/2) so beta | rest is one multivariate
// normal block; hans_gibbs draws each beta_j from its univariate Lasso full
// conditional and slice-samples sigma^2 and lambda^2.

namespace blasso {

struct PriorHyperparams {
  double a_tilde = 0.01;
  double b_tilde = 0.01;
  double u = 0.01;
  double v = 0.01;

  void validate() const;
};

enum class SamplerKind { PC, Hans };

std::string_view to_string(SamplerKind kind) noexcept;

struct GibbsConfig {
  std::size_t n_samples = 5000;
  std::size_t n_burnin = 1000;
  std::uint64_t seed = 1;
  /// Stream index for multi-chain runs; chain k uses RngStream::for_stream(seed, k).
  std::uint64_t chain = 0;
  double sigma2_init = 1.0;
  double lambda2_init = 1.0;
  /// Starting coefficients for hans_gibbs; empty means zeros. pc_gibbs draws
  /// beta first and ignores it.
  Eigen::VectorXd beta_init;
  /// Print progress every 1000 iterations to std::clog.
  bool verbose = false;
  SliceConfig slice;
  /// Hold lambda^2 fixed at this value and skip its update (and, for pc_gibbs,
  /// the a_j update). Intended for diagnostics and tests.
  std::optional<double> pin_lambda2;

  void validate(Eigen::Index p) const;
};

struct ChainOutput {
  Eigen::MatrixXd beta_draws;  // n_samples x p
  Eigen::VectorXd sigma2_draws;
  Eigen::VectorXd lambda2_draws;
  /// Burn-in plus sampling.
  double wall_time_seconds = 0.0;
  /// Post-burn-in iterations only.
  double sampling_time_seconds = 0.0;
  SamplerKind sampler = SamplerKind::Hans;
  std::size_t slice_exhaustions = 0;
};

/// How hans_gibbs tracks X beta between coordinate draws: the Gram path keeps
/// delta = X^T X beta (length p, used when n > p); the residual path keeps the
/// fitted vector X beta (length n, used when p >= n).
enum class BookkeepingPath { Gram, Residual };

BookkeepingPath default_path(const RegressionData& data) noexcept;

/// Parameters of the full conditional of beta_j:
/// Lasso(||X_j||^2 / sigma2, X_j^T (y - X_{-j} beta_{-j}) / sigma2, lambda / sigma).
/// A zero column gives a = 0; callers then use laplace_limit_sample.
LassoParams coordinate_params(const RegressionData& data, const Eigen::VectorXd& beta, Eigen::Index j,
                              double sigma2, double lambda, BookkeepingPath path);

/// Operation counts for one or more Hans sweeps. Vector operations are the
/// dot products and axpys touching the bookkeeping vectors.
struct SweepCounters {
  std::uint64_t sweeps = 0;
  std::uint64_t coordinate_updates = 0;
  std::uint64_t vector_ops = 0;
  std::uint64_t vector_op_elements = 0;
  std::size_t max_vector_length = 0;
  std::uint64_t factorizations = 0;

  void record(std::size_t length) noexcept {
    ++vector_ops;
    vector_op_elements += length;
    if (length > max_vector_length) max_vector_length = length;
  }
};

/// Coordinate-wise state of the Hans sampler: beta plus the incrementally
/// maintained delta or fitted vector. No p x p factorization is ever formed.
class HansSweep {
 public:
  HansSweep(const RegressionData& data, Eigen::VectorXd beta, BookkeepingPath path,
            SweepCounters* counters = nullptr);
  HansSweep(const RegressionData& data, Eigen::VectorXd beta, SweepCounters* counters = nullptr);

  /// Recompute the tracked vector from beta, then update every coordinate once.
  void sweep(double sigma2, double lambda, RngStream& rng);

  /// Draw beta_j from its full conditional given the other coordinates.
  double update_coordinate(Eigen::Index j, double sigma2, double lambda, RngStream& rng);

  /// ||y - X beta||^2 from the tracked quantities.
  double rss() const;

  const Eigen::VectorXd& beta() const noexcept { return beta_; }
  BookkeepingPath path() const noexcept { return path_; }

 private:
  void resync();

  const RegressionData* data_;
  Eigen::VectorXd beta_;
  BookkeepingPath path_;
  Eigen::VectorXd tracked_;
  SweepCounters* counters_;
};

ChainOutput pc_gibbs(const RegressionData& data, const PriorHyperparams& priors, const GibbsConfig& config);

ChainOutput hans_gibbs(const RegressionData& data, const PriorHyperparams& priors, const GibbsConfig& config,
                       SweepCounters* counters = nullptr);

ChainOutput run_sampler(SamplerKind kind, const RegressionData& data, const PriorHyperparams& priors,
                        const GibbsConfig& config);

}  // namespace blasso
