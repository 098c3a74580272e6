#include <CLI11.hpp>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "blasso/errors.hpp"
#include "blasso_cli/commands.hpp"

namespace blasso::cli {
namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

// n:p or n:p:rho. Coefficients follow the usual sparse test pattern
// (3, 1.5, 0, 0, 2, 0, ...) with unit noise.
PreparedData synthetic(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3 || !all_digits(parts[0]) || !all_digits(parts[1]))
    throw ConfigError("--synth expects n:p or n:p:rho, got '" + text + "'");
  const std::size_t n = std::stoul(parts[0]);
  const std::size_t p = std::stoul(parts[1]);
  DesignSpec design;
  std::string name = "synth-n" + parts[0] + "-p" + parts[1];
  if (parts.size() == 3) {
    try {
      design.rho = std::stod(parts[2]);
    } catch (const std::logic_error&) {
      throw ConfigError("--synth rho must be a number, got '" + parts[2] + "'");
    }
    design.kind = DesignSpec::Kind::Correlated;
    name += "-rho" + parts[2];
  }
  static constexpr double kPattern[] = {3.0, 1.5, 0.0, 0.0, 2.0};
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < std::min<std::size_t>(p, 5); ++j) beta(static_cast<Eigen::Index>(j)) = kPattern[j];
  Dataset ds = synth_regression(n, p, beta, 1.0, design, seed);
  return {name, standardize(ds)};
}

}  // namespace

void register_data(CLI::App& app, DataOptions& o) {
  app.add_option("--data", o.data, "CSV file(s) with a response column and numeric predictors");
  app.add_option("--synth", o.synth, "Synthetic fixture(s) n:p or n:p:rho (AR(1) correlated design)");
  app.add_option("--response", o.response, "Response column name, or 1-based column number (default y)");
  app.add_option("--delimiter", o.delimiter, "CSV field delimiter");
  app.add_option("--interactions", o.interactions, "Interaction expansion")
      ->check(CLI::IsMember({"none", "pairs", "pairs+squares"}));
}

void register_chain(CLI::App& app, ChainOptions& o) {
  app.add_option("--sampler", o.sampler, "Gibbs sampler")->check(CLI::IsMember({"hans", "pc"}));
  app.add_option("--a1", o.priors.a_tilde, "sigma^2 ~ IG(a1, b1) shape");
  app.add_option("--b1", o.priors.b_tilde, "sigma^2 ~ IG(a1, b1) scale");
  app.add_option("--u1", o.priors.u, "lambda^2 ~ Gamma(u1, v1) shape");
  app.add_option("--v1", o.priors.v, "lambda^2 ~ Gamma(u1, v1) rate");
  app.add_option("--nsamples", o.n_samples, "Post burn-in draws per chain");
  app.add_option("--burnin", o.n_burnin, "Burn-in iterations per chain");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--sigma2-init", o.sigma2_init, "Initial sigma^2 (default: sample variance of y)");
  app.add_option("--lambda2-init", o.lambda2_init, "Initial lambda^2");
  app.add_option("--beta-init", o.beta_init, "Initial coefficients, one value or p values")->delimiter(',');
  app.add_flag("--verbose", o.verbose, "Progress every 1000 iterations");
  app.add_option("--chains", o.chains, "Independent chains, run concurrently")->check(CLI::PositiveNumber);
}

SamplerKind parse_sampler(const std::string& name) {
  if (name == "hans") return SamplerKind::Hans;
  if (name == "pc") return SamplerKind::PC;
  throw ConfigError("unknown sampler '" + name + "'");
}

std::vector<PreparedData> prepare_datasets(const DataOptions& o, std::uint64_t seed, std::ostream& err) {
  if (o.data.empty() && o.synth.empty()) throw ConfigError("no data: give --data and/or --synth");
  const InteractionRule rule = parse_interaction_rule(o.interactions);
  std::vector<PreparedData> out;
  for (const auto& path : o.data) {
    ResponseColumn response = std::string("y");
    if (all_digits(o.response)) {
      const auto index = std::stoul(o.response);
      if (index == 0) throw ConfigError("--response column numbers start at 1");
      response = static_cast<std::size_t>(index - 1);
    } else if (!o.response.empty()) {
      response = o.response;
    }
    Dataset ds = load_csv(path, response, o.delimiter);
    std::vector<std::string> warnings = ds.warnings;
    RegressionData data = standardize(ds, rule, &warnings);
    for (const auto& w : warnings) err << "warning: " << ds.name << ": " << w << '\n';
    out.push_back({ds.name, std::move(data)});
  }
  for (const auto& text : o.synth) out.push_back(synthetic(text, seed));
  return out;
}

std::vector<ChainOutput> run_chains(SamplerKind kind, const RegressionData& data, const ChainOptions& o) {
  GibbsConfig base;
  base.n_samples = o.n_samples;
  base.n_burnin = o.n_burnin;
  base.seed = o.seed;
  base.verbose = o.verbose;
  base.lambda2_init = o.lambda2_init;
  base.sigma2_init = o.sigma2_init ? *o.sigma2_init
                     : data.n() > 1 ? data.y.squaredNorm() / static_cast<double>(data.n() - 1)
                                    : 1.0;
  if (!(base.sigma2_init > 0.0)) base.sigma2_init = 1.0;
  if (o.beta_init.size() == 1) {
    base.beta_init = Eigen::VectorXd::Constant(data.p(), o.beta_init.front());
  } else if (!o.beta_init.empty()) {
    base.beta_init = Eigen::Map<const Eigen::VectorXd>(o.beta_init.data(), static_cast<Eigen::Index>(o.beta_init.size()));
  }
  o.priors.validate();
  base.validate(data.p());

  std::vector<ChainOutput> outputs(o.chains);
  std::vector<std::exception_ptr> failures(o.chains);
  std::vector<std::thread> workers;
  for (std::size_t k = 0; k < o.chains; ++k) {
    workers.emplace_back([&, k] {
      try {
        GibbsConfig config = base;
        config.chain = k;
        outputs[k] = run_sampler(kind, data, o.priors, config);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return outputs;
}

}  // namespace blasso::cli
