#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blasso/gibbs.hpp"

// Convergence and efficiency diagnostics over multiple chains of one scalar
// parameter. Chains are passed as M vectors of N draws each.

namespace blasso {

struct DiagnosticValue {
  double value;
  /// Zero-variance (constant) draws; the value is a defined fallback.
  bool degenerate;
};

/// Rank-normalized bulk effective sample size: split chains in half, map the
/// pooled ranks through the normal quantile, then apply the multi-chain
/// autocorrelation estimator with Geyer's initial monotone truncation.
/// Constant draws return M * N flagged degenerate.
DiagnosticValue ess_bulk(std::span<const std::vector<double>> chains);

/// Same estimator on the raw (split, not rank-normalized) draws.
DiagnosticValue ess_basic(std::span<const std::vector<double>> chains);

/// Rank-normalized split R-hat: the larger of the bulk and folded
/// (|x - median|) versions. Constant draws return 1 flagged degenerate.
DiagnosticValue split_r_hat(std::span<const std::vector<double>> chains);

/// Gelman-Rubin split R-hat on the raw draws.
DiagnosticValue split_r_hat_classic(std::span<const std::vector<double>> chains);

/// ESS per second. Throws DomainError for seconds <= 0; a degenerate ESS
/// yields 0 with the flag carried over.
DiagnosticValue efficiency(DiagnosticValue ess, double seconds);
double efficiency(double ess, double seconds);

/// 100 * ESS / N.
double mix_percent(double ess, std::size_t n_total);

struct ParameterDiagnostics {
  std::string name;
  double ess = 0.0;
  double r_hat = 0.0;
  double mix_percent = 0.0;
  double efficiency = 0.0;
  bool degenerate = false;
};

struct DiagnosticsReport {
  /// beta_1..beta_p, then sigma2 and lambda2.
  std::vector<ParameterDiagnostics> parameters;
  /// Median ESS over the p coefficients, with its Mix % and efficiency.
  double beta_ess_summary = 0.0;
  double beta_mix_percent = 0.0;
  double beta_efficiency = 0.0;
  std::size_t n_total = 0;
  std::size_t n_chains = 0;
  double seconds = 0.0;
  double sampling_seconds = 0.0;
  double max_r_hat = 0.0;

  const ParameterDiagnostics& find(const std::string& name) const;
};

/// Diagnostics for a set of chains from one sampler on one dataset. Time is
/// the sum of per-chain wall times (burn-in included).
DiagnosticsReport diagnose(std::span<const ChainOutput> chains, const std::vector<std::string>& beta_names = {});

}  // namespace blasso
