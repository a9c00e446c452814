#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "facreg/matrix.hpp"

namespace facreg {

// Multivariate time series: rows are series (dimension p), columns are time
// points (length T). File I/O transposes explicitly when needed.
struct Panel {
  Matrix data;
  std::vector<std::string> series_labels;  // empty or size p
  std::vector<std::string> time_labels;    // empty or size T

  Panel() = default;
  explicit Panel(Matrix d) : data(std::move(d)) { validate(); }
  Panel(Matrix d, std::vector<std::string> series,
        std::vector<std::string> time)
      : data(std::move(d)),
        series_labels(std::move(series)),
        time_labels(std::move(time)) {
    validate();
  }

  int p() const { return static_cast<int>(data.rows()); }
  int t_len() const { return static_cast<int>(data.cols()); }

  // Enforces p >= 1, T >= 2, finite entries, and label-dimension agreement.
  void validate() const;
};

// Subtracts each row's mean; returns the centered panel and the means.
std::pair<Panel, Vector> center_rows(const Panel& panel);

enum class Design { stationary, endogenous, nonstationary, nonlinear };
enum class Method { ols, iv, sieve, known_d, none };

const char* to_string(Design d);
const char* to_string(Method m);

// Nonlinear regression function parameters: logistic slopes for the first
// block of series, sine frequencies for the second.
struct GParams {
  Vector alpha1;
  Vector alpha2;
};

// Ground truth carried alongside generated datasets.
struct DgpTruth {
  Matrix d_true;   // p x m; zero columns when the design has no linear part
  Matrix a_true;   // p x r, raw loadings (possibly sparsified)
  Matrix a_basis;  // orthonormalized column basis of a_true
  Matrix x_true;   // r x T
  int r_true = 0;
  double delta = 0.0;
  Design design = Design::stationary;
  std::optional<GParams> g_params;
};

// Output of a factor-model fit. Eigenvalues are stored in full so factor
// count selection can be re-run without refitting.
struct FactorFit {
  Matrix d_hat;       // p x m regression coefficients (p x 0 when method none)
  Vector eigenvalues; // length p, descending, clamped nonnegative
  Matrix loadings;    // p x r_used, half-orthogonal
  Matrix factors;     // r_used x T
  int r_ratio = 0;                  // plain ratio selection, always computed
  std::optional<int> r_adjusted;    // penalized selection when c_t > 0
  int k_bar = 0;
  Method method = Method::ols;

  int r_used() const { return static_cast<int>(loadings.cols()); }
};

}  // namespace facreg
