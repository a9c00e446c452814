#pragma once

#include <utility>

#include "facreg/panel.hpp"

namespace facreg {

// Basis for sieve (series) regression. Only the univariate polynomial
// family l_j(u) = u^{j-1}, j = 1..m, is implemented; the enum leaves room
// for other families without an API change.
struct SieveBasis {
  enum class Kind { polynomial };
  Kind kind = Kind::polynomial;
  int m = 1;
  int input_dim = 1;
};

// Default sieve order m = floor(2 * T^{1/5}).
int default_sieve_m(int t_len);

// Instrument-variable configuration. An empty r_matrix means identity,
// which requires q == m.
struct IvConfig {
  Matrix r_matrix;
  double ridge = 0.0;
};

// Least squares coefficients: row i of the result solves the normal
// equations ((1/T) sum z_t z_t^T) d_i = (1/T) sum y_{i,t} z_t.
Matrix ols_fit(const Panel& y, const Panel& z, double ridge = 0.0);

// Instrument-variable coefficients:
//   D = ((1/T) sum y_t w_t^T R^T) ((1/T) sum z_t w_t^T R^T)^{-1}.
// The m x m cross-moment matrix is generally non-symmetric and is inverted
// with a general solve. Throws SingularCrossMoment when its smallest
// singular value falls below 1e-10 times the largest.
Matrix iv_fit(const Panel& y, const Panel& z, const Panel& w,
              const IvConfig& cfg = {});

// Rows l_j(u_t) of the sieve design panel.
Panel sieve_design(const Panel& u, const SieveBasis& basis);

// Sieve regression: expands u through the basis and runs ols_fit. Returns
// the coefficients and the design panel so residual formation can reuse it.
std::pair<Matrix, Panel> sieve_fit(const Panel& y, const Panel& u,
                                   const SieveBasis& basis,
                                   double ridge = 0.0);

// ghat(u) = d_hat (l_1(u), ..., l_m(u))^T at a single input point.
Vector eval_g(const Matrix& d_hat, const SieveBasis& basis,
              const Vector& u_point);

// eta_t = y_t - d_hat z_t, columnwise.
Panel residuals(const Panel& y, const Panel& z, const Matrix& d_hat);

}  // namespace facreg
