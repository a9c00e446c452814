#pragma once

#include "facreg/matrix.hpp"

namespace facreg {

struct SubspaceDistance {
  double value = 0.0;  // in [0, 1]
  int r1 = 0;
  int r2 = 0;
  bool modified = false;  // true when the mixed-dimension form was used
};

// D = sqrt(1 - tr(H1 H1^T H2 H2^T)/r) for half-orthogonal bases of equal
// column count. 0 means equal spans, 1 means orthogonal spans.
SubspaceDistance space_distance(const Matrix& h1, const Matrix& h2);

// Mixed-dimension variant normalized by max(r1, r2); coincides with
// space_distance when r1 == r2.
SubspaceDistance space_distance_mixed(const Matrix& h1, const Matrix& h2);

// p^{-1/2} ||d_hat - d_true||_F.
double coef_error(const Matrix& d_hat, const Matrix& d_true);

// Column-wise p^{-1/2} ||fit_t - truth_t||_2.
Vector common_component_error(const Matrix& fit, const Matrix& truth);

}  // namespace facreg
