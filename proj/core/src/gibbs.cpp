#include "blasso/gibbs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "blasso/errors.hpp"
#include "blasso/linalg.hpp"
#include "blasso/samplers.hpp"

namespace blasso {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMinAbsBeta = 1e-10;
constexpr std::size_t kProgressEvery = 1000;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report_progress(const GibbsConfig& config, SamplerKind kind, std::size_t done) {
  if (!config.verbose || done % kProgressEvery != 0) return;
  std::clog << "[" << to_string(kind) << " chain " << config.chain << "] iteration " << done << "/"
            << config.n_burnin + config.n_samples << '\n';
}

ChainOutput allocate_output(const GibbsConfig& config, Eigen::Index p, SamplerKind kind) {
  ChainOutput out;
  const auto n = static_cast<Eigen::Index>(config.n_samples);
  out.beta_draws.resize(n, p);
  out.sigma2_draws.resize(n);
  out.lambda2_draws.resize(n);
  out.sampler = kind;
  return out;
}

void check_state(const Eigen::VectorXd& beta, double sigma2, double lambda2, std::size_t iteration) {
  if (!beta.allFinite() || !std::isfinite(sigma2) || !(sigma2 > 0.0) || !std::isfinite(lambda2) ||
      lambda2 < 0.0) {
    throw NumericalError("sampler state became non-finite or non-positive at iteration " + std::to_string(iteration),
                         static_cast<long>(iteration));
  }
}

double draw_from_conditional(const LassoParams& params, RngStream& rng) {
  if (params.a == 0.0) return laplace_limit_sample(params.b, params.c, rng);
  return LassoDistribution(params).sample(rng);
}

}  // namespace

void PriorHyperparams::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(a_tilde) || !positive(b_tilde) || !positive(u) || !positive(v))
    throw InvalidParameter("prior hyperparameters a1, b1, u1, v1 must all be finite and > 0");
}

void GibbsConfig::validate(Eigen::Index p) const {
  if (n_samples < 1) throw InvalidParameter("nsamples must be >= 1");
  if (!(sigma2_init > 0.0) || !std::isfinite(sigma2_init)) throw InvalidParameter("sigma2_init must be > 0");
  if (!(lambda2_init > 0.0) || !std::isfinite(lambda2_init)) throw InvalidParameter("lambda2_init must be > 0");
  if (beta_init.size() != 0 && beta_init.size() != p)
    throw InvalidParameter("beta_init has " + std::to_string(beta_init.size()) + " entries, expected " +
                           std::to_string(p));
  if (pin_lambda2 && !(*pin_lambda2 >= 0.0)) throw InvalidParameter("pinned lambda2 must be >= 0");
  slice.validate();
}

std::string_view to_string(SamplerKind kind) noexcept { return kind == SamplerKind::PC ? "PC" : "Hans"; }

BookkeepingPath default_path(const RegressionData& data) noexcept {
  return data.n() > data.p() ? BookkeepingPath::Gram : BookkeepingPath::Residual;
}

LassoParams coordinate_params(const RegressionData& data, const Eigen::VectorXd& beta, Eigen::Index j,
                              double sigma2, double lambda, BookkeepingPath path) {
  if (j < 0 || j >= data.p()) throw InvalidParameter("coordinate index out of range");
  if (beta.size() != data.p()) throw InvalidParameter("beta length does not match design width");
  if (!(sigma2 > 0.0) || !(lambda > 0.0)) throw InvalidParameter("sigma2 and lambda must be > 0");
  double partial;
  if (path == BookkeepingPath::Gram) {
    partial = data.Xty[j] - (data.XtX.row(j).dot(beta) - data.XtX(j, j) * beta[j]);
  } else {
    const Eigen::VectorXd residual = data.y - data.X * beta + data.X.col(j) * beta[j];
    partial = data.X.col(j).dot(residual);
  }
  return {data.col_sq_norms[j] / sigma2, partial / sigma2, lambda / std::sqrt(sigma2)};
}

HansSweep::HansSweep(const RegressionData& data, Eigen::VectorXd beta, BookkeepingPath path,
                     SweepCounters* counters)
    : data_(&data), beta_(std::move(beta)), path_(path), counters_(counters) {
  if (beta_.size() != data.p()) throw InvalidParameter("beta length does not match design width");
  resync();
}

HansSweep::HansSweep(const RegressionData& data, Eigen::VectorXd beta, SweepCounters* counters)
    : HansSweep(data, std::move(beta), default_path(data), counters) {}

void HansSweep::resync() {
  const auto& d = *data_;
  if (path_ == BookkeepingPath::Gram) {
    tracked_.noalias() = d.XtX * beta_;
    if (counters_) {
      for (Eigen::Index i = 0; i < d.p(); ++i) counters_->record(static_cast<std::size_t>(d.p()));
    }
  } else {
    tracked_.noalias() = d.X * beta_;
    if (counters_) {
      for (Eigen::Index i = 0; i < d.p(); ++i) counters_->record(static_cast<std::size_t>(d.n()));
    }
  }
}

double HansSweep::update_coordinate(Eigen::Index j, double sigma2, double lambda, RngStream& rng) {
  const auto& d = *data_;
  const double old = beta_[j];
  double partial;
  if (path_ == BookkeepingPath::Gram) {
    // delta_j with coordinate j's own contribution removed.
    partial = d.Xty[j] - (tracked_[j] - d.XtX(j, j) * old);
  } else {
    // X_j^T r_j with r_j = y - (yhat - X_j beta_j).
    partial = d.Xty[j] - d.X.col(j).dot(tracked_) + d.col_sq_norms[j] * old;
    if (counters_) counters_->record(static_cast<std::size_t>(d.n()));
  }
  const LassoParams params{d.col_sq_norms[j] / sigma2, partial / sigma2, lambda / std::sqrt(sigma2)};
  const double fresh = draw_from_conditional(params, rng);
  const double change = fresh - old;
  if (path_ == BookkeepingPath::Gram) {
    tracked_.noalias() += d.XtX.col(j) * change;
    if (counters_) counters_->record(static_cast<std::size_t>(d.p()));
  } else {
    tracked_.noalias() += d.X.col(j) * change;
    if (counters_) counters_->record(static_cast<std::size_t>(d.n()));
  }
  beta_[j] = fresh;
  if (counters_) ++counters_->coordinate_updates;
  return fresh;
}

void HansSweep::sweep(double sigma2, double lambda, RngStream& rng) {
  resync();
  for (Eigen::Index j = 0; j < beta_.size(); ++j) update_coordinate(j, sigma2, lambda, rng);
  if (counters_) ++counters_->sweeps;
}

double HansSweep::rss() const {
  const auto& d = *data_;
  if (path_ == BookkeepingPath::Gram) {
    return std::max(d.y_sq_norm - 2.0 * beta_.dot(d.Xty) + beta_.dot(tracked_), 0.0);
  }
  return (d.y - tracked_).squaredNorm();
}

ChainOutput pc_gibbs(const RegressionData& data, const PriorHyperparams& priors, const GibbsConfig& config) {
  priors.validate();
  config.validate(data.p());
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  RngStream rng = RngStream::for_stream(config.seed, config.chain);
  ChainOutput out = allocate_output(config, p, SamplerKind::PC);

  Eigen::VectorXd aux = Eigen::VectorXd::Ones(p);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double sigma2 = config.sigma2_init;
  double lambda2 = config.pin_lambda2.value_or(config.lambda2_init);
  const double sigma2_shape = priors.a_tilde + 0.5 * static_cast<double>(n + p);
  const double lambda2_shape = priors.u + 0.5 * static_cast<double>(p);

  const std::size_t total = config.n_burnin + config.n_samples;
  const auto start = Clock::now();
  auto sampling_start = start;
  Eigen::MatrixXd precision(p, p);
  for (std::size_t it = 0; it < total; ++it) {
    if (it == config.n_burnin) sampling_start = Clock::now();

    precision = data.XtX;
    precision.diagonal() += lambda2 * aux;
    try {
      const CholeskyFactor factor(precision);
      beta = mvn_sample(factor.solve(data.Xty), factor, sigma2, rng);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " at iteration " + std::to_string(it + 1),
                           static_cast<long>(it + 1));
    }

    const double rate =
        priors.b_tilde + 0.5 * data.y_sq_norm - beta.dot(data.Xty) + 0.5 * beta.dot(precision * beta);
    if (!(rate > 0.0)) check_state(beta, -1.0, lambda2, it + 1);
    sigma2 = inverse_gamma_sample(sigma2_shape, rate, rng);

    if (!config.pin_lambda2) {
      const double quad = beta.cwiseAbs2().dot(aux);
      lambda2 = gamma_sample(lambda2_shape, priors.v + quad / (2.0 * sigma2), rng);
    }
    if (lambda2 > 0.0) {
      const double scale = std::sqrt(sigma2 / lambda2);
      for (Eigen::Index j = 0; j < p; ++j)
        aux[j] = inverse_gaussian_sample(scale / std::max(std::abs(beta[j]), kMinAbsBeta), 1.0, rng);
    }
    check_state(beta, sigma2, lambda2, it + 1);

    if (it >= config.n_burnin) {
      const auto row = static_cast<Eigen::Index>(it - config.n_burnin);
      out.beta_draws.row(row) = beta.transpose();
      out.sigma2_draws[row] = sigma2;
      out.lambda2_draws[row] = lambda2;
    }
    report_progress(config, SamplerKind::PC, it + 1);
  }
  out.wall_time_seconds = seconds_since(start);
  out.sampling_time_seconds = seconds_since(sampling_start);
  return out;
}

ChainOutput hans_gibbs(const RegressionData& data, const PriorHyperparams& priors, const GibbsConfig& config,
                       SweepCounters* counters) {
  priors.validate();
  config.validate(data.p());
  const auto n = static_cast<double>(data.n());
  const auto p = static_cast<double>(data.p());
  RngStream rng = RngStream::for_stream(config.seed, config.chain);
  ChainOutput out = allocate_output(config, data.p(), SamplerKind::Hans);

  const std::uint64_t factorizations_before = CholeskyFactor::factorization_count();
  HansSweep state(data, config.beta_init.size() ? config.beta_init : Eigen::VectorXd::Zero(data.p()), counters);
  double sigma2 = config.sigma2_init;
  double lambda2 = config.pin_lambda2.value_or(config.lambda2_init);
  const double sigma2_power = priors.a_tilde + 0.5 * (n + p) + 1.0;
  const double lambda2_power = priors.u + 0.5 * p - 1.0;

  const std::size_t total = config.n_burnin + config.n_samples;
  const auto start = Clock::now();
  auto sampling_start = start;
  for (std::size_t it = 0; it < total; ++it) {
    if (it == config.n_burnin) sampling_start = Clock::now();
    const double lambda = std::sqrt(lambda2);
    state.sweep(sigma2, lambda, rng);
    const double rss = state.rss();
    const double l1 = state.beta().lpNorm<1>();

    const double sigma2_rate = priors.b_tilde + 0.5 * rss;
    const auto sigma2_target = [&](double s2) {
      return -sigma2_power * std::log(s2) - sigma2_rate / s2 - lambda * l1 / std::sqrt(s2);
    };
    const SliceResult s = slice_sample_step(sigma2_target, sigma2, config.slice, rng);
    sigma2 = s.value;
    out.slice_exhaustions += s.exhausted ? 1 : 0;

    if (!config.pin_lambda2) {
      const double sigma = std::sqrt(sigma2);
      const auto lambda2_target = [&](double l2) {
        return lambda2_power * std::log(l2) - priors.v * l2 - std::sqrt(l2) * l1 / sigma;
      };
      const SliceResult l = slice_sample_step(lambda2_target, lambda2, config.slice, rng);
      lambda2 = l.value;
      out.slice_exhaustions += l.exhausted ? 1 : 0;
    }
    check_state(state.beta(), sigma2, lambda2, it + 1);

    if (it >= config.n_burnin) {
      const auto row = static_cast<Eigen::Index>(it - config.n_burnin);
      out.beta_draws.row(row) = state.beta().transpose();
      out.sigma2_draws[row] = sigma2;
      out.lambda2_draws[row] = lambda2;
    }
    report_progress(config, SamplerKind::Hans, it + 1);
  }
  out.wall_time_seconds = seconds_since(start);
  out.sampling_time_seconds = seconds_since(sampling_start);
  if (counters) counters->factorizations += CholeskyFactor::factorization_count() - factorizations_before;
  return out;
}

ChainOutput run_sampler(SamplerKind kind, const RegressionData& data, const PriorHyperparams& priors,
                        const GibbsConfig& config) {
  return kind == SamplerKind::PC ? pc_gibbs(data, priors, config) : hans_gibbs(data, priors, config);
}

}  // namespace blasso
