#include "facreg/regress.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "facreg/error.hpp"

namespace facreg {

namespace {

constexpr double kBasisLimit = 1e12;

void check_same_t(const Panel& a, const Panel& b, const char* what) {
  if (a.t_len() != b.t_len())
    throw ShapeMismatch(std::string(what) + ": time length mismatch");
}

}  // namespace

int default_sieve_m(int t_len) {
  return static_cast<int>(std::floor(2.0 * std::pow(t_len, 0.2)));
}

Matrix ols_fit(const Panel& y, const Panel& z, double ridge) {
  check_same_t(y, z, "ols_fit");
  if (z.p() >= z.t_len())
    throw ShapeMismatch("ols_fit: more regressors than time points");

  const double t = static_cast<double>(y.t_len());
  const Matrix gram = (z.data * z.data.transpose()) / t;   // m x m
  const Matrix cross = (z.data * y.data.transpose()) / t;  // m x p
  return solve_gram(gram, cross, ridge).transpose();
}

Matrix iv_fit(const Panel& y, const Panel& z, const Panel& w,
              const IvConfig& cfg) {
  check_same_t(y, z, "iv_fit");
  check_same_t(y, w, "iv_fit");
  const int m = z.p();
  const int q = w.p();
  if (q < m) throw ShapeMismatch("iv_fit: fewer instruments than regressors");

  Matrix r = cfg.r_matrix;
  if (r.size() == 0) {
    if (q != m)
      throw MissingRequired(
          "iv_fit: r_matrix required when instruments outnumber regressors");
    r = Matrix::Identity(m, q);
  }
  if (r.rows() != m || r.cols() != q)
    throw ShapeMismatch("iv_fit: r_matrix must be m x q");
  {
    Eigen::JacobiSVD<Matrix> rsvd(r);
    const Vector& sv = rsvd.singularValues();
    if (sv[sv.size() - 1] <= 1e-10 * sv[0])
      throw BadValue("iv_fit: r_matrix is rank deficient");
  }

  const double t = static_cast<double>(y.t_len());
  const Matrix wr = r * w.data;                            // m x T
  Matrix zw = (z.data * wr.transpose()) / t;               // m x m
  zw.diagonal().array() += cfg.ridge;
  const Matrix yw = (y.data * wr.transpose()) / t;         // p x m

  Eigen::JacobiSVD<Matrix> svd(zw.transpose(),
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= 1e-10 * sv[0])
    throw SingularCrossMoment(
        "iv_fit: weak instruments, cross-moment matrix nearly singular");
  // D zw = yw  <=>  zw^T D^T = yw^T
  return svd.solve(yw.transpose()).transpose();
}

Panel sieve_design(const Panel& u, const SieveBasis& basis) {
  if (basis.kind != SieveBasis::Kind::polynomial)
    throw UnsupportedBasis("sieve_design: unknown basis family");
  if (basis.input_dim != 1 || u.p() != 1)
    throw UnsupportedBasis(
        "sieve_design: polynomial basis implemented for univariate input only");
  if (basis.m < 1) throw BadValue("sieve_design: basis size must be >= 1");

  const int t_len = u.t_len();
  Matrix rows(basis.m, t_len);
  for (int t = 0; t < t_len; ++t) {
    double power = 1.0;
    for (int j = 0; j < basis.m; ++j) {
      if (std::abs(power) > kBasisLimit)
        throw BasisOverflow("sieve_design: polynomial value exceeds 1e12");
      rows(j, t) = power;
      power *= u.data(0, t);
    }
  }
  return Panel(std::move(rows));
}

std::pair<Matrix, Panel> sieve_fit(const Panel& y, const Panel& u,
                                   const SieveBasis& basis, double ridge) {
  check_same_t(y, u, "sieve_fit");
  if (basis.m >= y.t_len())
    throw ShapeMismatch("sieve_fit: basis size must be below T");
  Panel design = sieve_design(u, basis);
  Matrix d_hat = ols_fit(y, design, ridge);
  return {std::move(d_hat), std::move(design)};
}

Vector eval_g(const Matrix& d_hat, const SieveBasis& basis,
              const Vector& u_point) {
  if (basis.kind != SieveBasis::Kind::polynomial ||
      basis.input_dim != 1 || u_point.size() != 1)
    throw UnsupportedBasis("eval_g: univariate polynomial basis only");
  if (d_hat.cols() != basis.m)
    throw ShapeMismatch("eval_g: coefficient/basis size mismatch");

  Vector l(basis.m);
  double power = 1.0;
  for (int j = 0; j < basis.m; ++j) {
    if (std::abs(power) > kBasisLimit)
      throw BasisOverflow("eval_g: polynomial value exceeds 1e12");
    l[j] = power;
    power *= u_point[0];
  }
  return d_hat * l;
}

Panel residuals(const Panel& y, const Panel& z, const Matrix& d_hat) {
  check_same_t(y, z, "residuals");
  if (d_hat.rows() != y.p() || d_hat.cols() != z.p())
    throw ShapeMismatch("residuals: coefficient shape mismatch");
  return Panel(y.data - d_hat * z.data);
}

}  // namespace facreg
