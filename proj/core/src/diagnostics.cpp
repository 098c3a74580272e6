#include "blasso/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blasso/errors.hpp"
#include "blasso/special_functions.hpp"

namespace blasso {
namespace {

using Chains = std::vector<std::vector<double>>;

constexpr std::size_t kMinDraws = 8;

void check_chains(std::span<const std::vector<double>> chains) {
  if (chains.empty()) throw DomainError("diagnostics need at least one chain");
  const std::size_t n = chains.front().size();
  if (n < kMinDraws) throw DomainError("diagnostics need at least 8 draws per chain");
  for (const auto& c : chains) {
    if (c.size() != n) throw DomainError("all chains must have the same number of draws");
    for (double x : c)
      if (!std::isfinite(x)) throw DomainError("chains contain non-finite draws");
  }
}

// First and second halves of every chain; the middle draw of an odd-length
// chain is dropped.
Chains split_chains(std::span<const std::vector<double>> chains) {
  Chains out;
  out.reserve(2 * chains.size());
  for (const auto& c : chains) {
    const std::size_t half = c.size() / 2;
    out.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
    out.emplace_back(c.end() - static_cast<std::ptrdiff_t>(half), c.end());
  }
  return out;
}

bool is_constant(const Chains& chains) {
  double lo = chains.front().front();
  double hi = lo;
  for (const auto& c : chains) {
    const auto [mn, mx] = std::minmax_element(c.begin(), c.end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
  }
  return hi - lo <= 1e-14 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
}

// Pooled ranks (ties averaged) mapped through Phi^{-1}((r - 3/8) / (S + 1/4)).
Chains rank_normalize(const Chains& chains) {
  std::vector<std::pair<double, std::size_t>> pooled;
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (double x : chains[c]) pooled.emplace_back(x, c);
  const std::size_t total = pooled.size();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i].first < pooled[j].first; });
  std::vector<double> rank(total);
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j + 1 < total && pooled[order[j + 1]].first == pooled[order[i]].first) ++j;
    const double average = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = average;
    i = j + 1;
  }
  Chains out = chains;
  std::size_t idx = 0;
  const double denom = static_cast<double>(total) + 0.25;
  for (auto& c : out)
    for (double& x : c) x = special::normal_quantile((rank[idx++] - 0.375) / denom);
  return out;
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double sample_variance(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Multi-chain ESS with Geyer's initial monotone sequence. Autocovariances are
// direct sums, computed only up to the truncation lag.
double ess_from_split(const Chains& chains) {
  const std::size_t m = chains.size();
  const std::size_t n = chains.front().size();
  std::vector<double> means(m);
  for (std::size_t c = 0; c < m; ++c) means[c] = mean_of(chains[c]);

  const auto mean_acov = [&](std::size_t lag) {
    double total = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      const auto& x = chains[c];
      double s = 0.0;
      for (std::size_t t = 0; t + lag < n; ++t) s += (x[t] - means[c]) * (x[t + lag] - means[c]);
      total += s / static_cast<double>(n);
    }
    return total / static_cast<double>(m);
  };

  const double nd = static_cast<double>(n);
  const double mean_var = mean_acov(0) * nd / (nd - 1.0);
  double var_plus = mean_var * (nd - 1.0) / nd;
  if (m > 1) var_plus += sample_variance(means);

  // 1-based to mirror the usual presentation of the estimator.
  std::vector<double> rho(n + 3, 0.0);
  const auto rho_at = [&](std::size_t lag) { return 1.0 - (mean_var - mean_acov(lag)) / var_plus; };
  double rho_even = 1.0;
  double rho_odd = rho_at(1);
  rho[1] = rho_even;
  rho[2] = rho_odd;
  std::size_t t = 0;
  while (t + 5 < n && std::isfinite(rho_even + rho_odd) && rho_even + rho_odd > 0.0) {
    t += 2;
    rho_even = rho_at(t);
    rho_odd = rho_at(t + 1);
    if (rho_even + rho_odd >= 0.0) {
      rho[t + 1] = rho_even;
      rho[t + 2] = rho_odd;
    }
  }
  const std::size_t max_t = t;
  if (rho_even > 0.0) rho[max_t + 1] = rho_even;

  for (std::size_t k = 0; k + 4 <= max_t;) {
    k += 2;
    if (rho[k + 1] + rho[k + 2] > rho[k - 1] + rho[k]) {
      rho[k + 1] = 0.5 * (rho[k - 1] + rho[k]);
      rho[k + 2] = rho[k + 1];
    }
  }

  const double draws = static_cast<double>(m) * nd;
  double tau = -1.0 + rho[max_t + 1];
  for (std::size_t k = 1; k <= max_t; ++k) tau += 2.0 * rho[k];
  tau = std::max(tau, 1.0 / std::log10(draws));
  return draws / tau;
}

double r_hat_from_split(const Chains& chains) {
  const double n = static_cast<double>(chains.front().size());
  std::vector<double> means;
  std::vector<double> vars;
  for (const auto& c : chains) {
    means.push_back(mean_of(c));
    vars.push_back(sample_variance(c));
  }
  const double between = n * sample_variance(means);
  const double within = mean_of(vars);
  return std::sqrt((between / within + n - 1.0) / n);
}

double median_of(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

std::size_t total_draws(std::span<const std::vector<double>> chains) {
  return chains.size() * chains.front().size();
}

}  // namespace

DiagnosticValue ess_bulk(std::span<const std::vector<double>> chains) {
  check_chains(chains);
  const Chains split = split_chains(chains);
  if (is_constant(split)) return {static_cast<double>(total_draws(chains)), true};
  return {ess_from_split(rank_normalize(split)), false};
}

DiagnosticValue ess_basic(std::span<const std::vector<double>> chains) {
  check_chains(chains);
  const Chains split = split_chains(chains);
  if (is_constant(split)) return {static_cast<double>(total_draws(chains)), true};
  return {ess_from_split(split), false};
}

DiagnosticValue split_r_hat(std::span<const std::vector<double>> chains) {
  check_chains(chains);
  const Chains split = split_chains(chains);
  if (is_constant(split)) return {1.0, true};
  const double bulk = r_hat_from_split(rank_normalize(split));

  std::vector<double> pooled;
  for (const auto& c : split) pooled.insert(pooled.end(), c.begin(), c.end());
  const double med = median_of(std::move(pooled));
  Chains folded = split;
  for (auto& c : folded)
    for (double& x : c) x = std::abs(x - med);
  if (is_constant(folded)) return {bulk, false};
  return {std::max(bulk, r_hat_from_split(rank_normalize(folded))), false};
}

DiagnosticValue split_r_hat_classic(std::span<const std::vector<double>> chains) {
  check_chains(chains);
  const Chains split = split_chains(chains);
  if (is_constant(split)) return {1.0, true};
  return {r_hat_from_split(split), false};
}

double efficiency(double ess, double seconds) {
  if (!(seconds > 0.0) || !std::isfinite(seconds)) throw DomainError("efficiency: time must be > 0");
  return ess / seconds;
}

DiagnosticValue efficiency(DiagnosticValue ess, double seconds) {
  const double value = efficiency(ess.value, seconds);
  if (ess.degenerate) return {0.0, true};
  return {value, false};
}

double mix_percent(double ess, std::size_t n_total) {
  if (n_total == 0) throw DomainError("mix_percent: total draw count must be > 0");
  return 100.0 * ess / static_cast<double>(n_total);
}

const ParameterDiagnostics& DiagnosticsReport::find(const std::string& name) const {
  for (const auto& p : parameters)
    if (p.name == name) return p;
  throw ConfigError("no diagnostics for parameter " + name);
}

DiagnosticsReport diagnose(std::span<const ChainOutput> chains, const std::vector<std::string>& beta_names) {
  if (chains.empty()) throw DomainError("diagnose: no chains");
  const Eigen::Index p = chains.front().beta_draws.cols();
  const Eigen::Index n = chains.front().beta_draws.rows();
  for (const auto& c : chains)
    if (c.beta_draws.cols() != p || c.beta_draws.rows() != n) throw DomainError("diagnose: chain shapes differ");

  DiagnosticsReport report;
  report.n_chains = chains.size();
  report.n_total = chains.size() * static_cast<std::size_t>(n);
  for (const auto& c : chains) {
    report.seconds += c.wall_time_seconds;
    report.sampling_seconds += c.sampling_time_seconds;
  }

  const auto add = [&](std::string name, auto&& column_of) {
    std::vector<std::vector<double>> draws;
    for (const auto& c : chains) {
      const Eigen::VectorXd col = column_of(c);
      draws.emplace_back(col.data(), col.data() + col.size());
    }
    const DiagnosticValue ess = ess_bulk(draws);
    const DiagnosticValue rhat = split_r_hat(draws);
    ParameterDiagnostics d;
    d.name = std::move(name);
    d.ess = ess.value;
    d.r_hat = rhat.value;
    d.mix_percent = mix_percent(ess.value, report.n_total);
    d.efficiency = report.seconds > 0.0 ? efficiency(ess, report.seconds).value : 0.0;
    d.degenerate = ess.degenerate;
    report.max_r_hat = std::max(report.max_r_hat, d.r_hat);
    report.parameters.push_back(std::move(d));
  };

  std::vector<double> beta_ess;
  for (Eigen::Index j = 0; j < p; ++j) {
    const std::string name = static_cast<Eigen::Index>(beta_names.size()) == p
                                 ? "beta[" + beta_names[static_cast<std::size_t>(j)] + "]"
                                 : "beta[" + std::to_string(j + 1) + "]";
    add(name, [j](const ChainOutput& c) -> Eigen::VectorXd { return c.beta_draws.col(j); });
    beta_ess.push_back(report.parameters.back().ess);
  }
  add("sigma2", [](const ChainOutput& c) -> Eigen::VectorXd { return c.sigma2_draws; });
  add("lambda2", [](const ChainOutput& c) -> Eigen::VectorXd { return c.lambda2_draws; });

  report.beta_ess_summary = median_of(beta_ess);
  report.beta_mix_percent = mix_percent(report.beta_ess_summary, report.n_total);
  report.beta_efficiency = report.seconds > 0.0 ? report.beta_ess_summary / report.seconds : 0.0;
  return report;
}

}  // namespace blasso
