#include <Eigen/Core>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "blasso/diagnostics.hpp"
#include "blasso/errors.hpp"
#include "blasso_cli/cli.hpp"
#include "blasso_cli/commands.hpp"

namespace blasso::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> draw_columns(const RegressionData& data) {
  std::vector<std::string> cols{"chain", "iteration"};
  for (const auto& name : data.column_names) cols.push_back("beta[" + name + "]");
  cols.push_back("sigma2");
  cols.push_back("lambda2");
  return cols;
}

// RFC-4180 quoting, only where the field needs it.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

void write_draws_csv(const fs::path& path, const std::vector<std::string>& columns,
                     const std::vector<ChainOutput>& chains) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << csv_field(columns[j]);
  out << '\n';
  for (std::size_t k = 0; k < chains.size(); ++k) {
    const auto& c = chains[k];
    for (Eigen::Index i = 0; i < c.beta_draws.rows(); ++i) {
      out << k + 1 << ',' << i + 1;
      for (Eigen::Index j = 0; j < c.beta_draws.cols(); ++j) out << ',' << shortest(c.beta_draws(i, j));
      out << ',' << shortest(c.sigma2_draws(i)) << ',' << shortest(c.lambda2_draws(i)) << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

// Magic "BLSODRW1", u64 rows, u64 columns, then per column a u32 name length
// and the name, then the data column-major as little-endian doubles.
void write_draws_bin(const fs::path& path, const std::vector<std::string>& columns,
                     const std::vector<ChainOutput>& chains) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const auto put = [&](const auto& v) { out.write(reinterpret_cast<const char*>(&v), sizeof(v)); };
  out.write("BLSODRW1", 8);
  std::uint64_t rows = 0;
  for (const auto& c : chains) rows += static_cast<std::uint64_t>(c.beta_draws.rows());
  put(rows);
  put(static_cast<std::uint64_t>(columns.size()));
  for (const auto& name : columns) {
    put(static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  const Eigen::Index p = chains.front().beta_draws.cols();
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (std::size_t k = 0; k < chains.size(); ++k) {
      const auto& c = chains[k];
      for (Eigen::Index i = 0; i < c.beta_draws.rows(); ++i) {
        double v;
        if (col == 0) v = static_cast<double>(k + 1);
        else if (col == 1) v = static_cast<double>(i + 1);
        else if (static_cast<Eigen::Index>(col) < p + 2) v = c.beta_draws(i, static_cast<Eigen::Index>(col) - 2);
        else if (static_cast<Eigen::Index>(col) == p + 2) v = c.sigma2_draws(i);
        else v = c.lambda2_draws(i);
        put(v);
      }
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

ordered_json report_json(const DiagnosticsReport& r) {
  ordered_json params = ordered_json::array();
  for (const auto& p : r.parameters) {
    params.push_back({{"name", p.name},
                      {"ess_bulk", p.ess},
                      {"r_hat", p.r_hat},
                      {"mix_percent", p.mix_percent},
                      {"efficiency", p.efficiency},
                      {"degenerate", p.degenerate}});
  }
  return {{"n_chains", r.n_chains},
          {"n_total", r.n_total},
          {"time_seconds", r.seconds},
          {"sampling_time_seconds", r.sampling_seconds},
          {"max_r_hat", r.max_r_hat},
          {"beta_summary", {{"median_ess", r.beta_ess_summary},
                            {"mix_percent", r.beta_mix_percent},
                            {"efficiency", r.beta_efficiency}}},
          {"parameters", params}};
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

int run_fit(const FitOptions& o, const std::string& command_line, std::ostream& out, std::ostream& err) {
  const std::string started = utc_now();
  auto datasets = prepare_datasets(o.data, o.chain.seed, err);
  if (datasets.size() != 1) throw ConfigError("fit takes exactly one dataset");
  const PreparedData& prepared = datasets.front();
  const SamplerKind kind = parse_sampler(o.chain.sampler);

  fs::path dir = o.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("BLASSO_OUTPUT_DIR");
    dir = env && *env ? fs::path(env) : fs::path("blasso-out");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const auto& pr = o.chain.priors;
  ordered_json config = {{"dataset", prepared.name},
                         {"n", prepared.data.n()},
                         {"p", prepared.data.p()},
                         {"interactions", o.data.interactions},
                         {"sampler", o.chain.sampler},
                         {"a1", pr.a_tilde},
                         {"b1", pr.b_tilde},
                         {"u1", pr.u},
                         {"v1", pr.v},
                         {"nsamples", o.chain.n_samples},
                         {"burnin", o.chain.n_burnin},
                         {"chains", o.chain.chains},
                         {"seed", o.chain.seed},
                         {"sigma2_init", o.chain.sigma2_init ? ordered_json(*o.chain.sigma2_init) : ordered_json()},
                         {"lambda2_init", o.chain.lambda2_init},
                         {"beta_init", o.chain.beta_init},
                         {"format", o.format}};
  ordered_json manifest = {{"command", command_line},
                           {"seed", o.chain.seed},
                           {"config_hash", hex(fnv1a(config.dump()))},
                           {"config", config},
                           {"versions",
                            {{"blasso", BLASSO_VERSION},
                             {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                           "." + std::to_string(EIGEN_MINOR_VERSION)},
                             {"compiler", __VERSION__}}},
                           {"started", started}};

  std::vector<ChainOutput> chains;
  try {
    chains = run_chains(kind, prepared.data, o.chain);
  } catch (const NumericalError& e) {
    manifest["finished"] = utc_now();
    manifest["status"] = "failed";
    manifest["failed_iteration"] = e.iteration();
    manifest["partial_output"] = false;
    manifest["error"] = e.what();
    write_json(dir / "manifest.json", manifest);
    throw;
  }

  const auto columns = draw_columns(prepared.data);
  const fs::path draws = dir / (o.format == "bin" ? "draws.bin" : "draws.csv");
  if (o.format == "bin") write_draws_bin(draws, columns, chains);
  else write_draws_csv(draws, columns, chains);

  ordered_json diagnostics;
  try {
    diagnostics = report_json(diagnose(chains, prepared.data.column_names));
  } catch (const DomainError& e) {
    err << "warning: diagnostics unavailable: " << e.what() << '\n';
    diagnostics = {{"error", e.what()}};
  }
  write_json(dir / "diagnostics.json", diagnostics);

  manifest["finished"] = utc_now();
  manifest["status"] = "ok";
  manifest["outputs"] = {draws.filename().string(), "diagnostics.json"};
  manifest["draw_columns"] = columns;
  write_json(dir / "manifest.json", manifest);

  out << "wrote " << draws.string() << ", " << (dir / "diagnostics.json").string() << ", "
      << (dir / "manifest.json").string() << '\n';
  if (diagnostics.contains("max_r_hat")) out << "max R-hat " << diagnostics["max_r_hat"].get<double>() << '\n';
  return kOk;
}

}  // namespace blasso::cli
