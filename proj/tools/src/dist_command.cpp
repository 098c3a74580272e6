#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "blasso/errors.hpp"
#include "blasso/lasso_distribution.hpp"
#include "blasso/samplers.hpp"
#include "blasso_cli/cli.hpp"
#include "blasso_cli/commands.hpp"
#include "blasso_cli/format.hpp"

namespace blasso::cli {
namespace {

struct Grid {
  double lo;
  double hi;
  std::size_t n;
};

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("--grid expects lo:hi:n, got '" + text + "'");
  try {
    Grid g{std::stod(parts[0]), std::stod(parts[1]), static_cast<std::size_t>(std::stoul(parts[2]))};
    if (g.n < 1 || !(g.lo <= g.hi)) throw ConfigError("--grid needs lo <= hi and n >= 1");
    return g;
  } catch (const std::logic_error&) {
    throw ConfigError("--grid expects lo:hi:n, got '" + text + "'");
  }
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> xs(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    xs[i] = g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.n - 1);
  return xs;
}

void write_line(std::ostream& out, const std::vector<double>& values, int digits) {
  out << join(format_vector(values, digits), ",") << '\n';
}

}  // namespace

void register_dist(CLI::App& app, DistOptions& o) {
  app.add_option("command", o.command, "pdf, cdf, quantile, sample, moments or mode")
      ->required()
      ->check(CLI::IsMember({"pdf", "cdf", "quantile", "sample", "moments", "mode"}));
  app.add_option("-a", o.a, "Quadratic coefficient a >= 0")->required();
  app.add_option("-b", o.b, "Linear coefficient b")->required();
  app.add_option("-c", o.c, "Absolute-value coefficient c >= 0")->required();
  app.add_option("-x", o.x, "Evaluation points (pdf, cdf)")->delimiter(',');
  app.add_option("--grid", o.grid, "Evaluation grid lo:hi:n, printed as CSV (pdf, cdf)");
  app.add_option("-p", o.p, "Probabilities (quantile)")->delimiter(',');
  app.add_option("-n", o.n, "Number of draws (sample)");
  app.add_option("--seed", o.seed, "Random seed (sample)");
  app.add_option("--digits", o.digits, "Significant digits in printed output")->check(CLI::Range(1, 17));
  app.add_flag("--log", o.log_scale, "Log density (pdf)");
}

int run_dist(const DistOptions& o, std::ostream& out, std::ostream& err) {
  const LassoParams params{o.a, o.b, o.c};
  validate(params);

  if (o.command == "sample") {
    RngStream rng(o.seed);
    std::vector<double> draws;
    if (o.a == 0.0) {
      for (std::size_t i = 0; i < o.n; ++i) draws.push_back(laplace_limit_sample(o.b, o.c, rng));
    } else {
      draws = lasso_sample(o.n, params, rng);
    }
    for (const auto& s : format_vector(draws, o.digits)) out << s << '\n';
    return kOk;
  }

  const LassoDistribution dist(params);
  if (o.command == "pdf" || o.command == "cdf") {
    const bool pdf = o.command == "pdf";
    const auto eval = [&](double x) {
      if (pdf) return o.log_scale ? dist.log_pdf(x) : dist.pdf(x);
      return dist.cdf(x);
    };
    if (!o.grid.empty()) {
      const auto xs = grid_points(parse_grid(o.grid));
      out << "x," << (pdf ? (o.log_scale ? "log_density" : "density") : "cdf") << '\n';
      for (double x : xs) out << format_value(x, o.digits) << ',' << format_value(eval(x), o.digits) << '\n';
      return kOk;
    }
    if (o.x.empty()) {
      err << "error: " << o.command << " needs -x or --grid\n";
      return kUsage;
    }
    std::vector<double> values;
    for (double x : o.x) values.push_back(eval(x));
    write_line(out, values, o.digits);
    return kOk;
  }

  if (o.command == "quantile") {
    if (o.p.empty()) {
      err << "error: quantile needs -p\n";
      return kUsage;
    }
    std::vector<double> values;
    for (double u : o.p) values.push_back(dist.quantile(u));
    write_line(out, values, o.digits);
    return kOk;
  }

  if (o.command == "moments") {
    out << "r,moment\n";
    for (int r = 1; r <= 4; ++r) out << r << ',' << format_value(dist.moment(r), o.digits) << '\n';
    return kOk;
  }

  out << format_value(dist.mode(), o.digits) << '\n';
  return kOk;
}

}  // namespace blasso::cli
