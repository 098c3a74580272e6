#include "blasso/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "blasso/errors.hpp"
#include "blasso/rng.hpp"

namespace blasso {
namespace {


struct Cell {
  std::string text;
  bool quoted = false;
};

std::vector<std::vector<Cell>> parse_records(const std::string& content, char delimiter) {
  std::vector<std::vector<Cell>> records;
  std::vector<Cell> record;
  Cell cell;
  bool in_quotes = false;
  bool any = false;
  std::size_t i = 0;
  if (content.rfind("\xEF\xBB\xBF", 0) == 0) i = 3;

  const auto end_record = [&] {
    record.push_back(std::move(cell));
    cell = Cell{};
    const bool blank = record.size() == 1 && record.front().text.empty() && !record.front().quoted;
    if (!blank) records.push_back(std::move(record));
    record.clear();
    any = false;
  };

  for (; i < content.size(); ++i) {
    const char ch = content[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          cell.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell.text.push_back(ch);
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      in_quotes = true;
      cell.quoted = true;
    } else if (ch == delimiter) {
      record.push_back(std::move(cell));
      cell = Cell{};
    } else if (ch == '\r') {
      if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
      end_record();
    } else if (ch == '\n') {
      end_record();
    } else {
      cell.text.push_back(ch);
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", records.size() + 1, record.size() + 1);
  if (any || !record.empty() || !cell.text.empty()) end_record();
  return records;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool is_missing(const std::string& t) { return t.empty() || t == "NA" || t == "NaN" || t == "nan"; }

std::optional<double> parse_number(const std::string& t) {
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& s, char delimiter) {
  if (s.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

bool is_zero_variance(const Eigen::VectorXd& col, double sd) {
  const double scale = std::max(1.0, col.cwiseAbs().maxCoeff());
  return !(sd > 1e-12 * scale);
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const ResponseColumn& response, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());

  const auto records = parse_records(buffer.str(), delimiter);
  if (records.empty()) throw ParseError("empty table", 1, 1);
  const std::size_t width = records.front().size();

  bool has_header = false;
  for (const auto& cell : records.front()) {
    const std::string t = trim(cell.text);
    if (!is_missing(t) && !parse_number(t)) has_header = true;
  }

  std::vector<std::string> names;
  for (std::size_t j = 0; j < width; ++j)
    names.push_back(has_header ? trim(records.front()[j].text) : "V" + std::to_string(j + 1));

  std::size_t response_index = 0;
  if (const auto* name = std::get_if<std::string>(&response)) {
    const auto it = std::find(names.begin(), names.end(), *name);
    if (it == names.end()) throw ConfigError("response column '" + *name + "' not found");
    response_index = static_cast<std::size_t>(it - names.begin());
  } else {
    response_index = std::get<std::size_t>(response);
    if (response_index >= width)
      throw ConfigError("response column index " + std::to_string(response_index) + " out of range");
  }
  if (width < 2) throw ConfigError("table needs a response and at least one predictor");

  Dataset data;
  data.name = path.stem().string();
  data.response_name = names[response_index];
  for (std::size_t j = 0; j < width; ++j)
    if (j != response_index) data.column_names.push_back(names[j]);

  std::vector<std::vector<double>> rows;
  const std::size_t first_data = has_header ? 1 : 0;
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != width)
      throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(rec.size()), r + 1,
                       std::min(rec.size(), width) + 1);
    std::vector<double> row(width);
    bool missing = false;
    for (std::size_t j = 0; j < width; ++j) {
      const std::string t = trim(rec[j].text);
      if (is_missing(t)) {
        missing = true;
        continue;
      }
      const auto v = parse_number(t);
      if (!v) throw ParseError("non-numeric cell '" + t + "'", r + 1, j + 1);
      row[j] = *v;
    }
    if (missing) {
      ++data.dropped_rows;
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (data.dropped_rows > 0)
    data.warnings.push_back("dropped " + std::to_string(data.dropped_rows) + " row(s) with missing values");

  const auto n = static_cast<Eigen::Index>(rows.size());
  data.y_raw.resize(n);
  data.X_raw.resize(n, static_cast<Eigen::Index>(width - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index k = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == response_index)
        data.y_raw(i) = rows[static_cast<std::size_t>(i)][j];
      else
        data.X_raw(i, k++) = rows[static_cast<std::size_t>(i)][j];
    }
  }
  return data;
}

void write_csv(const std::filesystem::path& path, const Dataset& dataset, char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << quote_if_needed(dataset.response_name, delimiter);
  for (Eigen::Index j = 0; j < dataset.p(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const std::string name = jj < dataset.column_names.size() ? dataset.column_names[jj] : "x" + std::to_string(j + 1);
    out << delimiter << quote_if_needed(name, delimiter);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < dataset.n(); ++i) {
    out << format_number(dataset.y_raw(i));
    for (Eigen::Index j = 0; j < dataset.p(); ++j) out << delimiter << format_number(dataset.X_raw(i, j));
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

const char* to_string(InteractionRule rule) noexcept {
  switch (rule) {
    case InteractionRule::None: return "none";
    case InteractionRule::Pairs: return "pairs";
    case InteractionRule::PairsAndSquares: return "pairs+squares";
  }
  return "none";
}

InteractionRule parse_interaction_rule(const std::string& text) {
  if (text == "none") return InteractionRule::None;
  if (text == "pairs") return InteractionRule::Pairs;
  if (text == "pairs+squares") return InteractionRule::PairsAndSquares;
  throw ConfigError("unknown interaction rule '" + text + "' (none, pairs, pairs+squares)");
}

RegressionData standardize(const Dataset& dataset, InteractionRule rule, std::vector<std::string>* warnings) {
  const Eigen::Index n = dataset.n();
  if (n < 2) throw InvalidParameter("standardize needs at least 2 rows");
  if (dataset.y_raw.size() != n) throw InvalidParameter("response length does not match design rows");
  const double denom = static_cast<double>(n - 1);

  std::vector<Eigen::VectorXd> columns;
  std::vector<std::string> names;
  const auto add_standardized = [&](Eigen::VectorXd col, std::string name) {
    const double mean = col.mean();
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / denom);
    if (is_zero_variance(col, sd) || !std::isfinite(sd)) {
      if (warnings) warnings->push_back("dropped zero-variance column '" + name + "'");
      return false;
    }
    columns.push_back(col / sd);
    names.push_back(std::move(name));
    return true;
  };

  const auto name_of = [&](Eigen::Index j) {
    const auto jj = static_cast<std::size_t>(j);
    return jj < dataset.column_names.size() ? dataset.column_names[jj] : "x" + std::to_string(j + 1);
  };
  for (Eigen::Index j = 0; j < dataset.p(); ++j) add_standardized(dataset.X_raw.col(j), name_of(j));

  if (rule != InteractionRule::None) {
    const std::vector<Eigen::VectorXd> base = columns;
    const std::vector<std::string> base_names = names;
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (rule == InteractionRule::PairsAndSquares)
        add_standardized(base[j].cwiseProduct(base[j]), base_names[j] + "^2");
      for (std::size_t k = j + 1; k < base.size(); ++k)
        add_standardized(base[j].cwiseProduct(base[k]), base_names[j] + ":" + base_names[k]);
    }
  }
  if (columns.empty()) throw InvalidParameter("no predictor columns with nonzero variance");

  Eigen::MatrixXd X(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) X.col(static_cast<Eigen::Index>(j)) = columns[j];
  Eigen::VectorXd y = dataset.y_raw.array() - dataset.y_raw.mean();
  return RegressionData::from_design(std::move(X), std::move(y), std::move(names));
}

Dataset synth_regression(std::size_t n, std::size_t p, const Eigen::VectorXd& beta, double sigma,
                         const DesignSpec& design, std::uint64_t seed) {
  if (n < 1 || p < 1) throw InvalidParameter("synth_regression needs n, p >= 1");
  if (static_cast<std::size_t>(beta.size()) != p) throw InvalidParameter("beta length must equal p");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidParameter("sigma must be finite and >= 0");
  const bool correlated = design.kind == DesignSpec::Kind::Correlated;
  if (correlated && !(std::abs(design.rho) < 1.0)) throw InvalidParameter("rho must lie in (-1, 1)");

  RngStream rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(p);
  Dataset data;
  data.name = correlated ? "synthetic-correlated" : "synthetic-iid";
  data.X_raw.resize(rows, cols);
  const double innovation = correlated ? std::sqrt(1.0 - design.rho * design.rho) : 1.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    double previous = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double z = rng.normal();
      previous = (correlated && j > 0) ? design.rho * previous + innovation * z : z;
      data.X_raw(i, j) = previous;
    }
  }
  data.y_raw = data.X_raw * beta;
  for (Eigen::Index i = 0; i < rows; ++i) data.y_raw(i) += sigma * rng.normal();
  for (std::size_t j = 0; j < p; ++j) data.column_names.push_back("x" + std::to_string(j + 1));
  return data;
}

}  // namespace blasso
