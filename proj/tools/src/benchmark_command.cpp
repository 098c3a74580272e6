#include <fstream>
#include <cmath>
#include <ostream>
#include <sstream>

#include "blasso/diagnostics.hpp"
#include "blasso/errors.hpp"
#include "blasso_cli/cli.hpp"
#include "blasso_cli/commands.hpp"
#include "blasso_cli/format.hpp"

namespace blasso::cli {
namespace {

const std::vector<std::string> kHeader{"Dataset", "Method",  "β Mix %", "β Eff",  "σ² Mix %",
                                       "σ² Eff",  "λ² Mix %", "λ² Eff", "Time(s)"};

constexpr std::size_t kFewDraws = 100;

std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++w;
  return w;
}

std::string cell(double v, bool ok) {
  if (!ok || !std::isfinite(v)) return "NA";
  return format_value(v, 4);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

int run_benchmark(const BenchmarkOptions& o, std::ostream& out, std::ostream& err) {
  if (o.samplers.empty()) throw ConfigError("benchmark needs at least one sampler");
  const auto datasets = prepare_datasets(o.data, o.chain.seed, err);
  if (o.chain.n_samples < kFewDraws)
    err << "warning: --nsamples " << o.chain.n_samples << " is small; ESS-based columns are unreliable\n";

  std::vector<std::vector<std::string>> rows;
  for (const auto& ds : datasets) {
    for (const auto& name : o.samplers) {
      const SamplerKind kind = parse_sampler(name);
      std::vector<std::string> row{ds.name, std::string(to_string(kind))};
      std::vector<ChainOutput> chains;
      try {
        chains = run_chains(kind, ds.data, o.chain);
      } catch (const std::exception& e) {
        err << "warning: " << ds.name << " / " << name << ": sampler failed: " << e.what() << '\n';
        row.resize(kHeader.size(), "NA");
        rows.push_back(row);
        continue;
      }
      double seconds = 0.0;
      for (const auto& c : chains) seconds += c.wall_time_seconds;
      try {
        const DiagnosticsReport r = diagnose(chains, ds.data.column_names);
        const auto& s2 = r.find("sigma2");
        const auto& l2 = r.find("lambda2");
        const bool timed = r.seconds > 0.0;
        row.push_back(cell(r.beta_mix_percent, true));
        row.push_back(cell(r.beta_efficiency, timed));
        row.push_back(cell(s2.mix_percent, !s2.degenerate));
        row.push_back(cell(s2.efficiency, timed && !s2.degenerate));
        row.push_back(cell(l2.mix_percent, !l2.degenerate));
        row.push_back(cell(l2.efficiency, timed && !l2.degenerate));
        for (const auto& p : r.parameters)
          if (p.degenerate) err << "warning: " << ds.name << " / " << name << ": " << p.name << " draws are constant\n";
        if (r.max_r_hat > 1.01)
          err << "warning: " << ds.name << " / " << name << ": max R-hat " << format_value(r.max_r_hat, 4)
              << " exceeds 1.01\n";
      } catch (const std::exception& e) {
        err << "warning: " << ds.name << " / " << name << ": diagnostics unavailable: " << e.what() << '\n';
        row.resize(8, "NA");
      }
      row.push_back(cell(seconds, true));
      rows.push_back(row);
    }
  }

  std::ostringstream csv;
  for (std::size_t j = 0; j < kHeader.size(); ++j) csv << (j ? "," : "") << kHeader[j];
  csv << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) csv << (j ? "," : "") << csv_escape(row[j]);
    csv << '\n';
  }
  out << csv.str() << '\n';

  std::vector<std::size_t> widths;
  for (const auto& h : kHeader) widths.push_back(display_width(h));
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) widths[j] = std::max(widths[j], display_width(row[j]));
  const auto print_row = [&](const std::vector<std::string>& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string pad(widths[j] - display_width(row[j]), ' ');
      if (j) out << "  ";
      if (j < 2) out << row[j] << pad;
      else out << pad << row[j];
    }
    out << '\n';
  };
  print_row(kHeader);
  for (const auto& row : rows) print_row(row);

  if (!o.csv_out.empty()) {
    std::ofstream f(o.csv_out);
    if (!f) throw IoError("cannot write " + o.csv_out);
    f << csv.str();
    if (!f) throw IoError("failed writing " + o.csv_out);
  }
  return kOk;
}

}  // namespace blasso::cli
