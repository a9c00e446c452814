// Factor-model estimation over CSV panels: regression stage (ols, iv,
// sieve, or none), eigenvalue-ratio factor-count selection, loading and
// factor recovery, and optional per-sector decomposition of the latent
// part. Writes plot-ready CSVs into the output directory.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "facreg/error.hpp"
#include "facreg/factorspace.hpp"
#include "facreg/io.hpp"
#include "facreg/metrics.hpp"
#include "facreg/panel.hpp"
#include "facreg/regress.hpp"

namespace {

using namespace facreg;

// Rethrows library errors with the pipeline stage prepended so failures
// name where they happened.
template <class F>
auto stage(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(name + ": " + e.what());
  }
}

std::string sanitize(const std::string& name) {
  std::string out = name.empty() ? std::string("unnamed") : name;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' &&
        c != '_' && c != '.')
      c = '_';
  return out;
}

void write_rhat(const std::filesystem::path& path, int r_hat) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << r_hat << '\n';
}

Panel labeled_factors(const Matrix& factors,
                      const std::vector<std::string>& time_labels) {
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < factors.rows(); ++i)
    names.push_back("f" + std::to_string(i + 1));
  return Panel(factors, std::move(names), time_labels);
}

// Two-column (series_label, group_label) mapping; group order follows
// first appearance, unmapped series form a trailing "other" group.
std::vector<std::pair<std::string, std::vector<int>>> read_sector_groups(
    const std::string& path, const std::vector<std::string>& series) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::map<std::string, int> series_index;
  for (size_t i = 0; i < series.size(); ++i)
    series_index[series[i]] = static_cast<int>(i);

  std::vector<std::pair<std::string, std::vector<int>>> groups;
  std::map<std::string, size_t> group_index;
  std::vector<bool> mapped(series.size(), false);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected series_label,group_label", row, 1);
    const std::string label = line.substr(0, comma);
    const std::string group = line.substr(comma + 1);
    if (row == 1 && !series_index.count(label)) continue;  // header line
    auto it = series_index.find(label);
    if (it == series_index.end())
      throw BadValue(path + ": unknown series label '" + label + "'");
    if (mapped[static_cast<size_t>(it->second)])
      throw BadValue(path + ": series '" + label + "' mapped twice");
    mapped[static_cast<size_t>(it->second)] = true;
    auto g = group_index.find(group);
    if (g == group_index.end()) {
      group_index[group] = groups.size();
      groups.push_back({group, {it->second}});
    } else {
      groups[g->second].second.push_back(it->second);
    }
  }
  std::vector<int> other;
  for (size_t i = 0; i < series.size(); ++i)
    if (!mapped[i]) other.push_back(static_cast<int>(i));
  if (!other.empty()) groups.push_back({"other", std::move(other)});
  for (auto& g : groups) std::sort(g.second.begin(), g.second.end());
  return groups;
}

int run(int argc, char** argv) {
  CLI::App app{"Factor-model estimation over CSV panels"};
  std::string y_path, z_path, w_path, sectors_path;
  std::string method_name = "auto";
  std::string r_arg = "auto";
  std::string out_dir = ".";
  int k_bar_arg = 0;
  int m_arg = 0;
  double c_t = 0.0;

  app.add_option("--y", y_path, "observed panel CSV (required)")->required();
  app.add_option("--z", z_path, "regressor panel CSV");
  app.add_option("--w", w_path, "instrument panel CSV (iv only)");
  app.add_option("--method", method_name,
                 "ols|iv|sieve|none (default: ols when --z given, else none)")
      ->check(CLI::IsMember({"auto", "ols", "iv", "sieve", "none"}));
  app.add_option("--kbar", k_bar_arg, "autocovariance lag cap (default 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--r", r_arg, "factor count: auto or a positive integer");
  app.add_option("--ct", c_t, "ratio-selection penalty (default 0)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--m", m_arg, "sieve basis size (default floor(2 T^0.2))")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (default .)");
  app.add_option("--sectors", sectors_path,
                 "series_label,group_label mapping CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Method method = Method::none;
  if (method_name == "auto") {
    method = z_path.empty() ? Method::none : Method::ols;
  } else if (method_name == "ols") {
    method = Method::ols;
  } else if (method_name == "iv") {
    method = Method::iv;
  } else if (method_name == "sieve") {
    method = Method::sieve;
  }
  if (method != Method::none && z_path.empty())
    throw MissingRequired("--z is required for method " +
                          std::string(to_string(method)));
  if (method == Method::iv && w_path.empty())
    throw MissingRequired("--w is required for method iv");

  FitOptions opt;
  opt.method = method;
  if (k_bar_arg > 0) opt.k_bar = k_bar_arg;
  opt.c_t = c_t;
  if (m_arg > 0) opt.sieve_basis = SieveBasis{SieveBasis::Kind::polynomial,
                                              m_arg, 1};
  if (r_arg != "auto") {
    int r = 0;
    try {
      size_t pos = 0;
      r = std::stoi(r_arg, &pos);
      if (pos != r_arg.size()) throw std::invalid_argument(r_arg);
    } catch (const std::exception&) {
      throw BadValue("--r: expected auto or a positive integer, got '" +
                     r_arg + "'");
    }
    if (r < 1) throw BadValue("--r: expected a positive integer");
    opt.r_fixed = r;
  }

  const Panel y = stage("reading --y", [&] {
    return read_panel(PanelFile{y_path});
  });
  std::optional<Panel> z, w;
  if (!z_path.empty())
    z = stage("reading --z", [&] { return read_panel(PanelFile{z_path}); });
  if (!w_path.empty())
    w = stage("reading --w", [&] { return read_panel(PanelFile{w_path}); });

  const FactorFit fit = stage("fitting", [&] {
    return fit_factor_model(y, z ? &*z : nullptr, w ? &*w : nullptr, opt);
  });

  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string());

  stage("writing outputs", [&] {
    if (method != Method::none)
      write_matrix_csv(fit.d_hat, (dir / "dhat.csv").string());
    write_indexed_csv(fit.eigenvalues, (dir / "eigenvalues.csv").string(),
                      "eigenvalue");
    const RatioSelection sel = select_r_ratio(
        fit.eigenvalues, default_r_max(y.p(), y.t_len(), fit.k_bar), c_t);
    write_indexed_csv(sel.ratios, (dir / "ratios.csv").string(), "ratio");
    write_rhat(dir / "rhat.txt",
               fit.r_adjusted ? *fit.r_adjusted : fit.r_ratio);
    write_matrix_csv(fit.loadings, (dir / "loadings.csv").string());
    write_panel(labeled_factors(fit.factors, y.time_labels),
                PanelFile{(dir / "factors.csv").string()});
    Panel common(fit.loadings * fit.factors, y.series_labels, y.time_labels);
    write_panel(common, PanelFile{(dir / "common.csv").string()});
    return 0;
  });

  if (!sectors_path.empty()) {
    std::vector<std::string> series = y.series_labels;
    if (series.empty())
      for (int i = 0; i < y.p(); ++i)
        series.push_back("s" + std::to_string(i + 1));
    const auto groups = stage("reading --sectors", [&] {
      return read_sector_groups(sectors_path, series);
    });

    // Per-group rerun on the residual sub-panel: the latent part of each
    // sector gets its own factor count, loadings, and factors.
    Panel eta = y;
    if (method != Method::none) {
      const Panel* zin = &*z;
      if (method == Method::sieve) {
        const SieveBasis basis = opt.sieve_basis
                                     ? *opt.sieve_basis
                                     : SieveBasis{SieveBasis::Kind::polynomial,
                                                  default_sieve_m(y.t_len()),
                                                  1};
        eta = residuals(y, sieve_design(*z, basis), fit.d_hat);
      } else {
        eta = residuals(y, *zin, fit.d_hat);
      }
    }
    for (const auto& [name, members] : groups) {
      stage("sector '" + name + "'", [&] {
        Matrix sub(members.size(), eta.t_len());
        std::vector<std::string> labels;
        for (size_t i = 0; i < members.size(); ++i) {
          sub.row(static_cast<Eigen::Index>(i)) = eta.data.row(members[i]);
          labels.push_back(series[static_cast<size_t>(members[i])]);
        }
        Panel group_eta(std::move(sub), std::move(labels), eta.time_labels);
        const MStat mstat = build_m(group_eta, fit.k_bar);
        const RatioSelection sel = select_r_ratio(
            mstat.eigen.values,
            default_r_max(group_eta.p(), group_eta.t_len(), fit.k_bar), c_t);
        const Matrix a_hat = estimate_loadings(mstat, sel.r_hat);
        const Matrix factors = recover_factors(group_eta, a_hat).first;
        const std::string tag = sanitize(name);
        write_matrix_csv(a_hat, (dir / ("loadings_" + tag + ".csv")).string());
        write_panel(labeled_factors(factors, eta.time_labels),
                    PanelFile{(dir / ("factors_" + tag + ".csv")).string()});
        write_rhat(dir / ("rhat_" + tag + ".txt"), sel.r_hat);
        return 0;
      });
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const facreg::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const facreg::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
