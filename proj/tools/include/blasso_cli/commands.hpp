#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blasso/data_io.hpp"
#include "blasso/gibbs.hpp"

namespace CLI {
class App;
}

namespace blasso::cli {

struct DistOptions {
  std::string command;
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  std::vector<double> x;
  std::string grid;
  std::vector<double> p;
  std::size_t n = 1;
  std::uint64_t seed = 1;
  int digits = 7;
  bool log_scale = false;
};

/// Where a fit or benchmark gets its data from: a CSV file or a synthetic
/// fixture described as n:p or n:p:rho.
struct DataOptions {
  std::vector<std::string> data;
  std::vector<std::string> synth;
  std::string response;
  char delimiter = ',';
  std::string interactions = "none";
};

struct ChainOptions {
  std::string sampler = "hans";
  PriorHyperparams priors;
  std::size_t n_samples = 5000;
  std::size_t n_burnin = 1000;
  std::uint64_t seed = 1;
  std::optional<double> sigma2_init;
  double lambda2_init = 1.0;
  std::vector<double> beta_init;
  bool verbose = false;
  std::size_t chains = 1;
};

struct FitOptions {
  DataOptions data;
  ChainOptions chain;
  std::string format = "csv";
  std::string out_dir;
};

struct BenchmarkOptions {
  DataOptions data;
  ChainOptions chain;
  std::vector<std::string> samplers{"hans", "pc"};
  std::string csv_out;
};

void register_dist(CLI::App& app, DistOptions& options);
void register_data(CLI::App& app, DataOptions& options);
void register_chain(CLI::App& app, ChainOptions& options);

int run_dist(const DistOptions& options, std::ostream& out, std::ostream& err);
int run_fit(const FitOptions& options, const std::string& command_line, std::ostream& out, std::ostream& err);
int run_benchmark(const BenchmarkOptions& options, std::ostream& out, std::ostream& err);

/// A named regression problem ready for sampling.
struct PreparedData {
  std::string name;
  RegressionData data;
};

std::vector<PreparedData> prepare_datasets(const DataOptions& options, std::uint64_t seed, std::ostream& err);

/// Runs `chains` independent chains concurrently, one thread each, and
/// rethrows the first failure after all threads join.
std::vector<ChainOutput> run_chains(SamplerKind kind, const RegressionData& data, const ChainOptions& options);

SamplerKind parse_sampler(const std::string& name);

}  // namespace blasso::cli
