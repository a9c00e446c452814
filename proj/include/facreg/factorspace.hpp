#pragma once

#include <optional>
#include <utility>

#include "facreg/panel.hpp"
#include "facreg/regress.hpp"

namespace facreg {

// The lag-autocovariance quadratic statistic whose leading eigenvectors
// span the estimated loading space.
struct MStat {
  Matrix m_matrix;  // p x p, symmetric PSD
  int k_bar = 1;
  SymEigen eigen;   // eigenvalues clamped: negatives and values below
                    // 1e-12 * max are set to 0
};

// Result of eigenvalue-ratio factor-count selection.
struct RatioSelection {
  int r_hat = 1;
  Vector ratios;  // (lambda_{j+1} + c_t)/(lambda_j + c_t), j = 1..r_max
  int r_max = 1;
  double c_t = 0.0;  // 0 for the plain ratio
};

// Sample lag-k autocovariance of the residual panel:
//   (1/(T-k)) sum_{t=1}^{T-k} (eta_{t+k} - mean)(eta_t - mean)^T,
// with a single global mean over all T columns.
Matrix lag_autocov(const Panel& eta, int k);

// m_matrix = sum_{k=1..k_bar} lag_autocov(k) lag_autocov(k)^T.
MStat build_m(const Panel& eta, int k_bar);

// Minimizes (lambda_{j+1} + c_t)/(lambda_j + c_t) over 1 <= j <= r_max;
// ties break to the smallest j; a zero denominator yields ratio 1 (a flat
// zero tail never beats a genuine drop). r_max is clamped to the spectrum
// length minus one.
RatioSelection select_r_ratio(const Vector& eigenvalues, int r_max,
                              double c_t = 0.0);

// First r eigenvector columns of the statistic.
Matrix estimate_loadings(const MStat& mstat, int r);

// factors = a_hat^T eta, common = a_hat * factors.
std::pair<Matrix, Matrix> recover_factors(const Panel& eta,
                                          const Matrix& a_hat);

// Penalty preset p * T^{-1/2} * log T scaled down by the median residual
// variance (centered, denominator T): large enough to flatten noise-floor
// eigenvalue ratios, small against the signal eigenvalues. Zero when the
// residual panel is constant.
double ct_heuristic(const Panel& eta);

// Options for the end-to-end pipeline. Defaults follow the simulation
// protocol: k_bar 1 for linear fits and floor(2 T^{1/5}) for sieve fits;
// r_max defaults to floor(min(p, T - k_bar)/2) so the ratio scan stays
// inside the numerically meaningful part of the spectrum when T <= p.
struct FitOptions {
  Method method = Method::ols;
  std::optional<int> k_bar;
  std::optional<int> r_fixed;     // empty means auto selection
  double c_t = 0.0;
  bool c_t_heuristic = false;     // derive the penalty from the residuals
  std::optional<int> r_max;
  std::optional<Matrix> known_d;  // required for Method::known_d
  IvConfig iv;                    // used by Method::iv
  std::optional<SieveBasis> sieve_basis;  // default m rule when empty
};

// Regression -> residuals -> M statistic -> selection -> loadings ->
// factors. z carries the regressors (the sieve input for Method::sieve);
// pass nullptr for a pure factor model (Method::none). w carries
// instruments for Method::iv.
FactorFit fit_factor_model(const Panel& y, const Panel* z, const Panel* w,
                           const FitOptions& opt);

// Default r_max rule used by fit_factor_model.
int default_r_max(int p, int t_len, int k_bar);

}  // namespace facreg
