#include "blasso_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>

#include "blasso/errors.hpp"
#include "blasso_cli/commands.hpp"

namespace blasso::cli {
namespace {

std::string echo(const std::vector<std::string>& args) {
  std::string line;
  for (const auto& a : args) {
    if (!line.empty()) line += ' ';
    line += a;
  }
  return line;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lasso distribution utilities and Bayesian Lasso Gibbs samplers", "blasso"};
  app.require_subcommand(1);

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "Evaluate or sample the Lasso(a, b, c) distribution");
  register_dist(*dist_cmd, dist);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a Bayesian Lasso regression with one of the Gibbs samplers");
  register_data(*fit_cmd, fit.data);
  register_chain(*fit_cmd, fit.chain);
  fit_cmd->add_option("--format", fit.format, "Draw file format")->check(CLI::IsMember({"csv", "bin"}));
  fit_cmd->add_option("--out", fit.out_dir, "Output directory (default $BLASSO_OUTPUT_DIR, else ./blasso-out)");

  BenchmarkOptions bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Mixing, efficiency and timing table over datasets and samplers");
  register_data(*bench_cmd, bench.data);
  register_chain(*bench_cmd, bench.chain);
  bench_cmd->add_option("--samplers", bench.samplers, "Samplers to compare")
      ->delimiter(',')
      ->check(CLI::IsMember({"hans", "pc"}));
  bench_cmd->add_option("--csv-out", bench.csv_out, "Also write the CSV table to this file");

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (dist_cmd->parsed()) return run_dist(dist, out, err);
    if (fit_cmd->parsed()) return run_fit(fit, echo(args), out, err);
    if (bench_cmd->parsed()) return run_benchmark(bench, out, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace blasso::cli
