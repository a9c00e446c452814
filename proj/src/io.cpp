#include "facreg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "facreg/error.hpp"
#include "facreg/factorspace.hpp"
#include "facreg/regress.hpp"

namespace facreg {

namespace {

using nlohmann::json;

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.push_back("");
  return cells;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& raw, int row, int col) {
  const std::string s = trim(raw);
  if (s.empty()) throw ParseError("empty cell", row, col);
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError("cannot parse '" + s + "' as a number", row, col);
  if (!std::isfinite(value))
    throw NonFinite("non-finite value '" + s + "' at row " +
                    std::to_string(row) + ", column " + std::to_string(col));
  return value;
}

bool numeric_cell(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::vector<std::string>> read_rows(const std::string& path,
                                                char delim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && rows.empty()) continue;  // tolerate a leading blank
    if (line.empty()) break;                     // stop at a trailing blank
    rows.push_back(split_line(line, delim));
  }
  if (rows.empty()) throw InputError("empty file: " + path);
  return rows;
}

// Shortest decimal form that parses back to the same double (at most 17
// significant digits).
void format_value(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

// --- spec parsing -----------------------------------------------------

Design parse_design(const json& v, const std::string& key) {
  const std::string s = v.is_string() ? v.get<std::string>() : "";
  if (s == "stationary") return Design::stationary;
  if (s == "endogenous") return Design::endogenous;
  if (s == "nonstationary") return Design::nonstationary;
  if (s == "nonlinear") return Design::nonlinear;
  throw BadValue(key + ": expected one of stationary|endogenous|"
                       "nonstationary|nonlinear");
}

Delta parse_delta(const json& v, const std::string& key) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "strong") return Delta::strong;
    if (s == "weak") return Delta::weak;
  } else if (v.is_number()) {
    const double x = v.get<double>();
    if (x == 0.0) return Delta::strong;
    if (x == 0.5) return Delta::weak;
  }
  throw BadValue(key + ": expected strong|weak (or 0|0.5)");
}

Estimator parse_estimator(const json& v, const std::string& key) {
  const std::string s = v.is_string() ? v.get<std::string>() : "";
  if (s == "known_d") return Estimator::known_d;
  if (s == "ols") return Estimator::ols;
  if (s == "iv") return Estimator::iv;
  if (s == "sieve") return Estimator::sieve;
  throw BadValue(key + ": expected one of known_d|ols|iv|sieve");
}

int require_positive_int(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw BadValue(key + ": expected a positive integer");
  return static_cast<int>(v.get<long long>());
}

ExperimentSpec parse_experiment(const json& obj, const std::string& where) {
  if (!obj.is_object())
    throw BadValue(where + ": expected an object");

  static const char* known[] = {"design", "delta", "estimator", "p",
                                "T",      "t_rule", "replicates", "kbar",
                                "ct",     "r",      "seed"};
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const char* k : known)
      if (item.key() == k) found = true;
    if (!found) throw UnknownKey(where + ": unknown key '" + item.key() + "'");
  }

  ExperimentSpec spec;
  if (!obj.contains("design")) throw MissingRequired(where + ": design");
  spec.design = parse_design(obj["design"], where + ".design");
  if (!obj.contains("p")) throw MissingRequired(where + ": p");
  spec.p = require_positive_int(obj["p"], where + ".p");

  if (obj.contains("T") && obj.contains("t_rule"))
    throw BadValue(where + ": give either T or t_rule, not both");
  if (obj.contains("T")) {
    spec.t_rule = TRule::explicit_t;
    spec.t_explicit = require_positive_int(obj["T"], where + ".T");
  } else if (obj.contains("t_rule")) {
    const json& v = obj["t_rule"];
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "half_p") spec.t_rule = TRule::half_p;
    else if (s == "p") spec.t_rule = TRule::p;
    else if (s == "one_half_p") spec.t_rule = TRule::one_half_p;
    else throw BadValue(where + ".t_rule: expected half_p|p|one_half_p");
  } else {
    throw MissingRequired(where + ": T or t_rule");
  }

  if (obj.contains("delta"))
    spec.delta = parse_delta(obj["delta"], where + ".delta");
  if (obj.contains("estimator"))
    spec.estimator = parse_estimator(obj["estimator"], where + ".estimator");
  if (obj.contains("replicates"))
    spec.replicates = require_positive_int(obj["replicates"],
                                           where + ".replicates");
  if (obj.contains("kbar"))
    spec.k_bar = require_positive_int(obj["kbar"], where + ".kbar");
  if (obj.contains("ct")) {
    const json& v = obj["ct"];
    if (v.is_string() && v.get<std::string>() == "heuristic") {
      spec.c_t_heuristic = true;
    } else if (v.is_number() && v.get<double>() >= 0.0) {
      spec.c_t = v.get<double>();
    } else {
      throw BadValue(where + ".ct: expected a nonnegative number or "
                             "\"heuristic\"");
    }
  }
  if (obj.contains("r")) {
    const json& v = obj["r"];
    if (v.is_string() && v.get<std::string>() == "auto") {
      spec.r_fixed.reset();
    } else if (v.is_number_integer() && v.get<long long>() >= 1) {
      spec.r_fixed = static_cast<int>(v.get<long long>());
    } else {
      throw BadValue(where + ".r: expected \"auto\" or a positive integer");
    }
  }
  if (obj.contains("seed")) {
    const json& v = obj["seed"];
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw BadValue(where + ".seed: expected a nonnegative integer");
    spec.master_seed = static_cast<std::uint64_t>(v.get<long long>());
  }
  return spec;
}

}  // namespace

Panel read_panel(const PanelFile& file) {
  auto rows = read_rows(file.path, file.delimiter);

  const size_t width = rows[0].size();
  for (size_t r = 1; r < rows.size(); ++r)
    if (rows[r].size() != width)
      throw RaggedRows(file.path + ": row " + std::to_string(r + 1) +
                       " has " + std::to_string(rows[r].size()) +
                       " cells, expected " + std::to_string(width));

  // An all-numeric first row is data even when a header was expected, so
  // plain matrices read correctly with default settings.
  std::vector<std::string> head;
  size_t data_start = 0;
  bool has_header = false;
  if (file.header) {
    bool all_numeric = true;
    for (const auto& c : rows[0])
      if (!numeric_cell(c)) all_numeric = false;
    if (!all_numeric) {
      if (rows.size() < 2)
        throw InputError(file.path + ": header with no data rows");
      for (const auto& c : rows[0]) head.push_back(trim(c));
      data_start = 1;
      has_header = true;
    }
  }

  // A leading "time"/empty header cell marks a label column.
  bool label_col = false;
  if (!head.empty() && (head[0].empty() || head[0] == "time" ||
                        head[0] == "t"))
    label_col = true;
  if (label_col && width < 2)
    throw InputError(file.path + ": label column with no data columns");

  const size_t col0 = label_col ? 1 : 0;
  const size_t n_rows = rows.size() - data_start;
  const size_t n_cols = width - col0;
  Matrix m(n_rows, n_cols);
  std::vector<std::string> row_labels;
  for (size_t r = 0; r < n_rows; ++r) {
    const auto& cells = rows[r + data_start];
    if (label_col) row_labels.push_back(trim(cells[0]));
    for (size_t c = 0; c < n_cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_cell(cells[c + col0], static_cast<int>(r + data_start + 1),
                     static_cast<int>(c + col0 + 1));
  }

  std::vector<std::string> col_labels;
  if (has_header)
    col_labels.assign(head.begin() + static_cast<long>(col0), head.end());

  if (file.orientation == PanelFile::Orientation::time_rows)
    return Panel(m.transpose(), std::move(col_labels), std::move(row_labels));
  return Panel(std::move(m), std::move(row_labels), std::move(col_labels));
}

void write_panel(const Panel& panel, const PanelFile& file) {
  std::ofstream out(file.path);
  if (!out) throw InputError("cannot write " + file.path);

  const bool time_rows =
      file.orientation == PanelFile::Orientation::time_rows;
  const int n_rows = time_rows ? panel.t_len() : panel.p();
  const int n_cols = time_rows ? panel.p() : panel.t_len();
  const auto& col_labels =
      time_rows ? panel.series_labels : panel.time_labels;
  const auto& row_labels =
      time_rows ? panel.time_labels : panel.series_labels;
  const char* col_prefix = time_rows ? "s" : "t";
  const bool label_col = file.header && !row_labels.empty();

  std::string line;
  if (file.header) {
    line.clear();
    if (label_col) {
      line += time_rows ? "time" : "";
      line += file.delimiter;
    }
    for (int c = 0; c < n_cols; ++c) {
      if (c) line += file.delimiter;
      line += col_labels.empty() ? col_prefix + std::to_string(c + 1)
                                 : col_labels[c];
    }
    out << line << '\n';
  }
  for (int r = 0; r < n_rows; ++r) {
    line.clear();
    if (label_col) {
      line += row_labels[r];
      line += file.delimiter;
    }
    for (int c = 0; c < n_cols; ++c) {
      if (c) line += file.delimiter;
      const double v =
          time_rows ? panel.data(c, r) : panel.data(r, c);
      format_value(line, v);
    }
    out << line << '\n';
  }
  if (!out) throw InputError("write failed: " + file.path);
}

Matrix read_matrix_csv(const std::string& path) {
  auto rows = read_rows(path, ',');
  const size_t width = rows[0].size();
  for (size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != width)
      throw RaggedRows(path + ": row " + std::to_string(r + 1) +
                       " has a different cell count");
  if (!numeric_cell(rows[0][0]))
    throw ParseError(path + ": expected a plain numeric matrix", 1, 1);
  Matrix m(rows.size(), width);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < width; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_cell(rows[r][c], static_cast<int>(r + 1),
                     static_cast<int>(c + 1));
  return m;
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  std::string line;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) line += ',';
      format_value(line, m(r, c));
    }
    out << line << '\n';
  }
}

void write_indexed_csv(const Vector& v, const std::string& path,
                       const std::string& value_name) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "index," << value_name << '\n';
  std::string line;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    line = std::to_string(i + 1);
    line += ',';
    format_value(line, v[i]);
    out << line << '\n';
  }
}

std::vector<ExperimentSpec> read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 1, 1);
  }

  std::vector<ExperimentSpec> specs;
  if (root.is_object() && root.contains("experiments")) {
    for (const auto& item : root.items())
      if (item.key() != "experiments")
        throw UnknownKey("top level: unknown key '" + item.key() + "'");
    const json& list = root["experiments"];
    if (!list.is_array() || list.empty())
      throw BadValue("experiments: expected a nonempty array");
    for (size_t i = 0; i < list.size(); ++i)
      specs.push_back(parse_experiment(
          list[i], "experiments[" + std::to_string(i) + "]"));
  } else {
    specs.push_back(parse_experiment(root, "spec"));
  }
  return specs;
}

void write_results_table(const std::vector<CellResult>& cells,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "design,delta,estimator,p,T,replicates,freq_r_correct,d2_min,"
         "d2_q1,d2_median,d2_q3,d2_max,coef_err_median,errors_count,"
         "wall_time_s\n";
  std::string line;
  for (const auto& cell : cells) {
    const ExperimentSpec& s = cell.spec;
    line.clear();
    line += to_string(s.design);
    line += ',';
    line += to_string(s.delta);
    line += ',';
    line += to_string(s.estimator);
    line += ',';
    line += std::to_string(s.p);
    line += ',';
    line += std::to_string(s.resolved_t());
    line += ',';
    line += std::to_string(s.replicates);
    line += ',';
    format_value(line, cell.freq_r_correct);
    for (const double v :
         {cell.d2.min, cell.d2.q1, cell.d2.median, cell.d2.q3, cell.d2.max}) {
      line += ',';
      format_value(line, v);
    }
    line += ',';
    if (cell.coef_error) format_value(line, cell.coef_error->median);
    line += ',';
    line += std::to_string(cell.errors.size());
    line += ',';
    format_value(line, cell.wall_time_s);
    out << line << '\n';
  }
}

void write_boxplot_summaries(const std::vector<CellResult>& cells,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "design,delta,estimator,p,T,metric,min,q1,median,q3,max\n";
  std::string line;
  auto emit = [&](const CellResult& cell, const char* metric,
                  const FiveNum& f) {
    const ExperimentSpec& s = cell.spec;
    line.clear();
    line += to_string(s.design);
    line += ',';
    line += to_string(s.delta);
    line += ',';
    line += to_string(s.estimator);
    line += ',';
    line += std::to_string(s.p);
    line += ',';
    line += std::to_string(s.resolved_t());
    line += ',';
    line += metric;
    for (const double v : {f.min, f.q1, f.median, f.q3, f.max}) {
      line += ',';
      format_value(line, v);
    }
    out << line << '\n';
  };
  for (const auto& cell : cells) {
    emit(cell, "d2", cell.d2);
    if (cell.coef_error) emit(cell, "coef_error", *cell.coef_error);
  }
}

}  // namespace facreg
