#include "facreg/factorspace.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "facreg/error.hpp"

namespace facreg {

Matrix lag_autocov(const Panel& eta, int k) {
  const int t_len = eta.t_len();
  if (k < 1 || k > t_len - 2)
    throw LagTooLarge("lag_autocov: lag must lie in [1, T-2]");

  const Vector mean = eta.data.rowwise().mean();
  const Matrix centered = eta.data.colwise() - mean;
  const Matrix lead = centered.rightCols(t_len - k);
  const Matrix lag = centered.leftCols(t_len - k);
  return (lead * lag.transpose()) / static_cast<double>(t_len - k);
}

MStat build_m(const Panel& eta, int k_bar) {
  const int t_len = eta.t_len();
  if (k_bar < 1 || k_bar > t_len - 2)
    throw LagTooLarge("build_m: k_bar must lie in [1, T-2]");

  const int p = eta.p();
  Matrix m = Matrix::Zero(p, p);
  for (int k = 1; k <= k_bar; ++k) {
    const Matrix sk = lag_autocov(eta, k);
    m.noalias() += sk * sk.transpose();
  }
  m = 0.5 * (m + m.transpose());

  MStat out;
  out.k_bar = k_bar;
  out.eigen = sym_eig(m);
  out.m_matrix = std::move(m);
  // PSD by construction: roundoff negatives and the numerical-rank tail are
  // clamped so they cannot masquerade as spectral drops.
  const double top = out.eigen.values.size() > 0 ? out.eigen.values[0] : 0.0;
  const double cutoff = 1e-12 * std::max(top, 0.0);
  for (Eigen::Index j = 0; j < out.eigen.values.size(); ++j)
    if (out.eigen.values[j] < cutoff) out.eigen.values[j] = 0.0;
  return out;
}

RatioSelection select_r_ratio(const Vector& eigenvalues, int r_max,
                              double c_t) {
  if (eigenvalues.size() < 2)
    throw EmptySpectrum("select_r_ratio: need at least two eigenvalues");
  if (c_t < 0.0) throw BadValue("select_r_ratio: negative penalty");
  if (r_max < 1) throw BadValue("select_r_ratio: r_max must be >= 1");
  r_max = std::min<int>(r_max, static_cast<int>(eigenvalues.size()) - 1);

  RatioSelection sel;
  sel.r_max = r_max;
  sel.c_t = c_t;
  sel.ratios = Vector(r_max);
  int best = 0;
  for (int j = 0; j < r_max; ++j) {
    const double den = eigenvalues[j] + c_t;
    const double num = eigenvalues[j + 1] + c_t;
    sel.ratios[j] = den == 0.0 ? 1.0 : num / den;
    if (sel.ratios[j] < sel.ratios[best]) best = j;
  }
  sel.r_hat = best + 1;
  return sel;
}

Matrix estimate_loadings(const MStat& mstat, int r) {
  const int p = static_cast<int>(mstat.m_matrix.rows());
  if (r < 1 || r > p)
    throw RankTooLarge("estimate_loadings: r must lie in [1, p]");
  return mstat.eigen.vectors.leftCols(r);
}

std::pair<Matrix, Matrix> recover_factors(const Panel& eta,
                                          const Matrix& a_hat) {
  if (a_hat.rows() != eta.p())
    throw ShapeMismatch("recover_factors: loading row count mismatch");
  if (!is_half_orthogonal(a_hat, 1e-6))
    throw NotHalfOrthogonal("recover_factors: loadings not half-orthogonal");
  Matrix factors = a_hat.transpose() * eta.data;
  Matrix common = a_hat * factors;
  return {std::move(factors), std::move(common)};
}

double ct_heuristic(const Panel& eta) {
  const int p = eta.p();
  const int t_len = eta.t_len();
  const Vector mean = eta.data.rowwise().mean();
  std::vector<double> variances(p);
  for (int i = 0; i < p; ++i) {
    const double dev =
        (eta.data.row(i).array() - mean[i]).square().sum();
    variances[i] = dev / static_cast<double>(t_len);
  }
  std::sort(variances.begin(), variances.end());
  const double med = p % 2 == 1
                         ? variances[p / 2]
                         : 0.5 * (variances[p / 2 - 1] + variances[p / 2]);
  if (med <= 0.0) return 0.0;  // constant panel: nothing to penalize
  return p * std::log(static_cast<double>(t_len)) /
         (std::sqrt(static_cast<double>(t_len)) * med);
}

int default_r_max(int p, int t_len, int k_bar) {
  return std::max(1, std::min(p, t_len - k_bar) / 2);
}

FactorFit fit_factor_model(const Panel& y, const Panel* z, const Panel* w,
                           const FitOptions& opt) {
  const int p = y.p();
  const int t_len = y.t_len();

  int k_bar = opt.k_bar.value_or(
      opt.method == Method::sieve ? default_sieve_m(t_len) : 1);
  if (k_bar < 1) throw BadValue("fit_factor_model: k_bar must be >= 1");

  Matrix d_hat;
  Panel eta;
  switch (opt.method) {
    case Method::ols: {
      if (z == nullptr) throw MissingRequired("fit_factor_model: ols needs z");
      d_hat = ols_fit(y, *z, 0.0);
      eta = residuals(y, *z, d_hat);
      break;
    }
    case Method::iv: {
      if (z == nullptr || w == nullptr)
        throw MissingRequired("fit_factor_model: iv needs z and w");
      d_hat = iv_fit(y, *z, *w, opt.iv);
      eta = residuals(y, *z, d_hat);
      break;
    }
    case Method::sieve: {
      if (z == nullptr)
        throw MissingRequired("fit_factor_model: sieve needs the input series");
      SieveBasis basis = opt.sieve_basis.value_or(
          SieveBasis{SieveBasis::Kind::polynomial, default_sieve_m(t_len), 1});
      auto [coef, design] = sieve_fit(y, *z, basis, 0.0);
      d_hat = std::move(coef);
      eta = residuals(y, design, d_hat);
      break;
    }
    case Method::known_d: {
      if (z == nullptr || !opt.known_d.has_value())
        throw MissingRequired("fit_factor_model: known_d needs z and the matrix");
      d_hat = *opt.known_d;
      eta = residuals(y, *z, d_hat);
      break;
    }
    case Method::none: {
      d_hat = Matrix(p, 0);
      eta = y;
      break;
    }
  }

  MStat mstat = build_m(eta, k_bar);
  const int r_max = opt.r_max.value_or(default_r_max(p, t_len, k_bar));

  FactorFit fit;
  fit.method = opt.method;
  fit.k_bar = k_bar;
  fit.d_hat = std::move(d_hat);
  fit.eigenvalues = mstat.eigen.values;
  fit.r_ratio = select_r_ratio(mstat.eigen.values, r_max, 0.0).r_hat;
  const double c_t = opt.c_t_heuristic ? ct_heuristic(eta) : opt.c_t;
  if (c_t > 0.0)
    fit.r_adjusted = select_r_ratio(mstat.eigen.values, r_max, c_t).r_hat;

  const int r_used = opt.r_fixed.value_or(
      fit.r_adjusted.has_value() ? *fit.r_adjusted : fit.r_ratio);
  fit.loadings = estimate_loadings(mstat, r_used);
  auto [factors, common] = recover_factors(eta, fit.loadings);
  fit.factors = std::move(factors);
  (void)common;  // callers rebuild it as loadings * factors when needed
  return fit;
}

}  // namespace facreg
