#include "facreg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "facreg/error.hpp"

namespace facreg {

namespace {

void check_basis(const Matrix& h, const char* name) {
  if (h.cols() < 1 || h.rows() < h.cols())
    throw ShapeMismatch(std::string("space_distance: ") + name +
                        " is not a tall basis matrix");
  if (!is_half_orthogonal(h, 1e-6))
    throw NotHalfOrthogonal(std::string("space_distance: ") + name +
                            " is not half-orthogonal");
}

double distance_value(const Matrix& h1, const Matrix& h2, int norm_r) {
  // 1 - tr(H1 H1^T H2 H2^T)/norm_r computed as a projector residual:
  // with S the narrower basis and B the other, tr(S^T S) - ||B^T S||_F^2
  // equals ||S - B B^T S||_F^2, so the radicand is a sum of nonnegative
  // terms and equal spans come out at roundoff scale instead of sqrt(eps).
  const bool first_narrow = h1.cols() <= h2.cols();
  const Matrix& s = first_narrow ? h1 : h2;
  const Matrix& b = first_narrow ? h2 : h1;
  const double residual2 = (s - b * (b.transpose() * s)).squaredNorm();
  const double gap = static_cast<double>(norm_r) -
                     static_cast<double>(s.cols());
  return std::sqrt((gap + residual2) / static_cast<double>(norm_r));
}

}  // namespace

SubspaceDistance space_distance(const Matrix& h1, const Matrix& h2) {
  check_basis(h1, "first basis");
  check_basis(h2, "second basis");
  if (h1.rows() != h2.rows() || h1.cols() != h2.cols())
    throw ShapeMismatch("space_distance: bases must share dimensions");

  SubspaceDistance d;
  d.r1 = static_cast<int>(h1.cols());
  d.r2 = static_cast<int>(h2.cols());
  d.modified = false;
  d.value = distance_value(h1, h2, d.r1);
  return d;
}

SubspaceDistance space_distance_mixed(const Matrix& h1, const Matrix& h2) {
  check_basis(h1, "first basis");
  check_basis(h2, "second basis");
  if (h1.rows() != h2.rows())
    throw ShapeMismatch("space_distance: bases must share the ambient dimension");

  SubspaceDistance d;
  d.r1 = static_cast<int>(h1.cols());
  d.r2 = static_cast<int>(h2.cols());
  d.modified = true;
  d.value = distance_value(h1, h2, std::max(d.r1, d.r2));
  return d;
}

double coef_error(const Matrix& d_hat, const Matrix& d_true) {
  if (d_hat.rows() != d_true.rows() || d_hat.cols() != d_true.cols())
    throw ShapeMismatch("coef_error: shape mismatch");
  return (d_hat - d_true).norm() /
         std::sqrt(static_cast<double>(d_hat.rows()));
}

Vector common_component_error(const Matrix& fit, const Matrix& truth) {
  if (fit.rows() != truth.rows() || fit.cols() != truth.cols())
    throw ShapeMismatch("common_component_error: shape mismatch");
  const double scale = std::sqrt(static_cast<double>(fit.rows()));
  return ((fit - truth).colwise().norm() / scale).transpose();
}

}  // namespace facreg
