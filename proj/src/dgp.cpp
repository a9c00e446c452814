#include "facreg/dgp.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "facreg/error.hpp"
#include "facreg/rng.hpp"

namespace facreg {

namespace {

void check_config(const DgpConfig& cfg) {
  if (cfg.p < 4) throw BadValue("dgp: p must be >= 4");
  if (cfg.t_len < 10) throw BadValue("dgp: T must be >= 10");
  if (cfg.burn_in < 0) throw BadValue("dgp: negative burn-in");
}

Matrix draw_uniform_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-2.0, 2.0);
  return m;
}

// Weak case: zero p - floor(sqrt(p)) randomly selected entries per column,
// drawn without replacement, independently across columns.
void sparsify_weak(Matrix& a, Rng& rng) {
  const int p = static_cast<int>(a.rows());
  const int keep = static_cast<int>(std::floor(std::sqrt(p)));
  const int zeroed = p - keep;
  std::vector<int> idx(p);
  for (int j = 0; j < a.cols(); ++j) {
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle_prefix(idx, zeroed);
    for (int i = 0; i < zeroed; ++i) a(idx[i], j) = 0.0;
  }
}

// VAR(1) z chain with coefficient [[5/8,1/8],[1/8,5/8]], standard normal
// innovations, zero start, burn-in discarded.
Matrix chain_z(Rng& rng, int t_len, int burn) {
  Matrix z(2, burn + t_len + 1);
  z.col(0).setZero();
  for (int t = 1; t <= burn + t_len; ++t) {
    const double e1 = rng.normal();
    const double e2 = rng.normal();
    z(0, t) = 0.625 * z(0, t - 1) + 0.125 * z(1, t - 1) + e1;
    z(1, t) = 0.125 * z(0, t - 1) + 0.625 * z(1, t - 1) + e2;
  }
  return z.rightCols(t_len);
}

// Diagonal VAR(1) x chain with coefficients (0.6, -0.5, 0.3), standard
// normal innovations, zero start, burn-in discarded.
Matrix chain_x_stationary(Rng& rng, int t_len, int burn) {
  const double phi[3] = {0.6, -0.5, 0.3};
  Matrix x(3, burn + t_len + 1);
  x.col(0).setZero();
  for (int t = 1; t <= burn + t_len; ++t)
    for (int i = 0; i < 3; ++i)
      x(i, t) = phi[i] * x(i, t - 1) + rng.normal();
  return x.rightCols(t_len);
}

// AR(1) u chain with coefficient 0.5, zero start, burn-in discarded.
Vector chain_u(Rng& rng, int t_len, int burn) {
  Vector u(burn + t_len + 1);
  u[0] = 0.0;
  for (int t = 1; t <= burn + t_len; ++t)
    u[t] = 0.5 * u[t - 1] + rng.normal();
  return u.tail(t_len);
}

Matrix draw_noise(Rng& rng, int p, int t_len) {
  Matrix eps(p, t_len);
  for (int t = 0; t < t_len; ++t)
    for (int i = 0; i < p; ++i) eps(i, t) = rng.normal();
  return eps;
}

DgpTruth make_truth(Matrix d, Matrix a, Matrix x, const DgpConfig& cfg) {
  DgpTruth truth;
  truth.a_basis = orthonormal_basis(a);
  truth.d_true = std::move(d);
  truth.a_true = std::move(a);
  truth.x_true = std::move(x);
  truth.r_true = 3;
  truth.delta = delta_value(cfg.delta);
  truth.design = cfg.design;
  return truth;
}

}  // namespace

double delta_value(Delta d) { return d == Delta::weak ? 0.5 : 0.0; }

Vector eval_g_true(const GParams& params, double u) {
  const int n1 = static_cast<int>(params.alpha1.size());
  const int n2 = static_cast<int>(params.alpha2.size());
  Vector g(n1 + n2);
  for (int i = 0; i < n1; ++i) {
    const double e = std::exp(params.alpha1[i] * u);
    g[i] = e / (1.0 + e);
  }
  for (int i = 0; i < n2; ++i)
    g[n1 + i] = std::sin(params.alpha2[i] * u);
  return g;
}

Dataset gen_stationary(const DgpConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);

  Matrix d = draw_uniform_matrix(rng, cfg.p, 2);
  Matrix a = draw_uniform_matrix(rng, cfg.p, 3);
  if (cfg.delta == Delta::weak) sparsify_weak(a, rng);

  Matrix z = chain_z(rng, cfg.t_len, cfg.burn_in);
  Matrix x = chain_x_stationary(rng, cfg.t_len, cfg.burn_in);
  Matrix eps = draw_noise(rng, cfg.p, cfg.t_len);

  Dataset ds;
  ds.y = Panel(d * z + a * x + eps);
  ds.z = Panel(std::move(z));
  ds.truth = make_truth(std::move(d), std::move(a), std::move(x), cfg);
  return ds;
}

Dataset gen_endogenous(const DgpConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);

  Matrix d = draw_uniform_matrix(rng, cfg.p, 2);
  Matrix a = draw_uniform_matrix(rng, cfg.p, 3);
  if (cfg.delta == Delta::weak) sparsify_weak(a, rng);

  Matrix x = chain_x_stationary(rng, cfg.t_len, cfg.burn_in);
  Vector u = chain_u(rng, cfg.t_len, cfg.burn_in);
  Matrix eps = draw_noise(rng, cfg.p, cfg.t_len);

  // Regressors share the latent factors, so least squares is inconsistent
  // for D; (u, u^2) instruments restore identification.
  Matrix z(2, cfg.t_len);
  Matrix w(2, cfg.t_len);
  for (int t = 0; t < cfg.t_len; ++t) {
    const double ut = u[t];
    const double ut2 = ut * ut;
    z(0, t) = 0.3 * x(0, t) + 0.5 * ut + 0.5 * ut2;
    z(1, t) = 0.3 * x(1, t) - 0.5 * ut + 0.5 * ut2;
    w(0, t) = ut;
    w(1, t) = ut2;
  }

  Dataset ds;
  ds.y = Panel(d * z + a * x + eps);
  ds.z = Panel(std::move(z));
  ds.w = Panel(std::move(w));
  ds.truth = make_truth(std::move(d), std::move(a), std::move(x), cfg);
  return ds;
}

Dataset gen_nonstationary(const DgpConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);

  Matrix d = draw_uniform_matrix(rng, cfg.p, 2);
  Matrix a = draw_uniform_matrix(rng, cfg.p, 3);
  if (cfg.delta == Delta::weak) sparsify_weak(a, rng);

  Matrix z = chain_z(rng, cfg.t_len, cfg.burn_in);

  // Trend arguments are tied to sample indices, so the x block runs from
  // t = 1 with zero start and no burn-in: an AR(1) around the trend 2t/T, a
  // pure trend 3t/T, and a random walk with innovation scale sqrt(10/T).
  const double t_len = static_cast<double>(cfg.t_len);
  const double walk_sd = std::sqrt(10.0 / t_len);
  Matrix x(3, cfg.t_len);
  double prev1 = 0.0;
  double prev3 = 0.0;
  double prev_trend = 0.0;
  for (int t = 1; t <= cfg.t_len; ++t) {
    const double e1 = rng.normal();
    const double e3 = rng.normal();
    const double trend = 2.0 * t / t_len;
    const double x1 = trend + 0.8 * (prev1 - prev_trend) + e1;
    const double x3 = prev3 + walk_sd * e3;
    x(0, t - 1) = x1;
    x(1, t - 1) = 3.0 * t / t_len;
    x(2, t - 1) = x3;
    prev1 = x1;
    prev3 = x3;
    prev_trend = trend;
  }

  Matrix eps = draw_noise(rng, cfg.p, cfg.t_len);

  Dataset ds;
  ds.y = Panel(d * z + a * x + eps);
  ds.z = Panel(std::move(z));
  ds.truth = make_truth(std::move(d), std::move(a), std::move(x), cfg);
  return ds;
}

Dataset gen_nonlinear(const DgpConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);

  const int n1 = cfg.p / 2;
  const int n2 = cfg.p - n1;
  GParams params;
  params.alpha1 = Vector(n1);
  for (int i = 0; i < n1; ++i) params.alpha1[i] = 2.0 * rng.normal();
  params.alpha2 = Vector(n2);
  for (int i = 0; i < n2; ++i) params.alpha2[i] = rng.uniform(-2.0, 2.0);

  Matrix a = draw_uniform_matrix(rng, cfg.p, 3);
  if (cfg.delta == Delta::weak) sparsify_weak(a, rng);

  Matrix x = chain_x_stationary(rng, cfg.t_len, cfg.burn_in);
  Vector u = chain_u(rng, cfg.t_len, cfg.burn_in);
  Matrix eps = draw_noise(rng, cfg.p, cfg.t_len);

  Matrix y = a * x + eps;
  for (int t = 0; t < cfg.t_len; ++t)
    y.col(t) += eval_g_true(params, u[t]);

  Dataset ds;
  ds.y = Panel(std::move(y));
  ds.z = Panel(u.transpose());
  ds.truth = make_truth(Matrix(cfg.p, 0), std::move(a), std::move(x), cfg);
  ds.truth.g_params = std::move(params);
  return ds;
}

Dataset generate(const DgpConfig& cfg) {
  switch (cfg.design) {
    case Design::stationary: return gen_stationary(cfg);
    case Design::endogenous: return gen_endogenous(cfg);
    case Design::nonstationary: return gen_nonstationary(cfg);
    case Design::nonlinear: return gen_nonlinear(cfg);
  }
  throw BadValue("dgp: unknown design");
}

}  // namespace facreg
