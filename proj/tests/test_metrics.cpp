#include <doctest.h>

#include <cmath>

#include "facreg/error.hpp"
#include "facreg/matrix.hpp"
#include "facreg/metrics.hpp"
#include "facreg/rng.hpp"

using namespace facreg;

namespace {

Matrix random_half_orthogonal(Rng& rng, int p, int r) {
  Matrix m(p, r);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = rng.normal();
  return orthonormal_basis(m);
}

Matrix random_rotation(Rng& rng, int r) {
  return random_half_orthogonal(rng, r, r);
}

}  // namespace

TEST_CASE("space_distance hand values") {
  const Matrix e1 = Matrix::Identity(2, 2).col(0);
  const Matrix e2 = Matrix::Identity(2, 2).col(1);
  CHECK(space_distance(e1, e1).value == doctest::Approx(0.0));
  CHECK(space_distance(e1, e2).value == doctest::Approx(1.0));

  Matrix diag(2, 1);
  diag << 0.70710678118654752, 0.70710678118654752;
  const SubspaceDistance d = space_distance(e1, diag);
  CHECK(d.value == doctest::Approx(0.70710678118654752));
  CHECK(d.r1 == 1);
  CHECK(d.r2 == 1);
  CHECK_FALSE(d.modified);
}

TEST_CASE("space_distance validation") {
  Rng rng(71);
  const Matrix h1 = random_half_orthogonal(rng, 5, 2);
  const Matrix h2 = random_half_orthogonal(rng, 5, 3);
  CHECK_THROWS_AS(space_distance(h1, h2), ShapeMismatch);
  CHECK_THROWS_AS(space_distance(h1, Matrix::Ones(5, 2)), NotHalfOrthogonal);
  CHECK_THROWS_AS(space_distance(h1, random_half_orthogonal(rng, 4, 2)),
                  ShapeMismatch);
  CHECK_THROWS_AS(space_distance(Matrix(5, 0), Matrix(5, 0)), ShapeMismatch);
}

TEST_CASE("space_distance randomized invariants") {
  Rng rng(72);
  for (int rep = 0; rep < 200; ++rep) {
    const int p = 3 + static_cast<int>(rng.below(8));
    const int r = 1 + static_cast<int>(rng.below(
                          static_cast<std::uint64_t>(p - 1)));
    const Matrix h1 = random_half_orthogonal(rng, p, r);
    const Matrix h2 = random_half_orthogonal(rng, p, r);

    const double d12 = space_distance(h1, h2).value;
    CHECK(d12 >= 0.0);
    CHECK(d12 <= 1.0 + 1e-10);
    // symmetry
    CHECK(space_distance(h2, h1).value == doctest::Approx(d12).epsilon(1e-12));
    // rotation invariance
    const Matrix q1 = random_rotation(rng, r);
    const Matrix q2 = random_rotation(rng, r);
    CHECK(space_distance(h1 * q1, h2 * q2).value ==
          doctest::Approx(d12).epsilon(1e-9));
    // equal spans measure zero
    CHECK(space_distance(h1, h1 * q1).value <= 1e-10);
  }
}

TEST_CASE("space_distance_mixed hand values and equivalence") {
  Matrix e1 = Matrix::Zero(3, 1);
  e1(0, 0) = 1.0;
  Matrix e12 = Matrix::Identity(3, 2);
  const SubspaceDistance d = space_distance_mixed(e1, e12);
  CHECK(d.value == doctest::Approx(std::sqrt(0.5)));
  CHECK(d.modified);
  CHECK(d.r1 == 1);
  CHECK(d.r2 == 2);

  // permuted columns span the same space
  Matrix e21(3, 2);
  e21.col(0) = e12.col(1);
  e21.col(1) = e12.col(0);
  CHECK(space_distance_mixed(e12, e21).value <= 1e-10);

  Rng rng(73);
  const Matrix h1 = random_half_orthogonal(rng, 6, 2);
  const Matrix h2 = random_half_orthogonal(rng, 6, 2);
  CHECK(space_distance_mixed(h1, h2).value ==
        doctest::Approx(space_distance(h1, h2).value).epsilon(1e-12));
}

TEST_CASE("coef_error hand values") {
  const Matrix zero4 = Matrix::Zero(4, 1);
  CHECK(coef_error(zero4, zero4) == doctest::Approx(0.0));
  CHECK(coef_error(Matrix::Ones(4, 1), Matrix::Zero(4, 1)) ==
        doctest::Approx(1.0));
  CHECK(coef_error(Matrix::Identity(2, 2), Matrix::Zero(2, 2)) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(coef_error(Matrix::Zero(2, 2), Matrix::Zero(3, 2)),
                  ShapeMismatch);
}

TEST_CASE("common_component_error hand values") {
  Matrix fit(1, 2);
  fit << 3, 4;
  const Vector v = common_component_error(fit, Matrix::Zero(1, 2));
  CHECK(v[0] == doctest::Approx(3.0));
  CHECK(v[1] == doctest::Approx(4.0));

  Matrix fit4 = Matrix::Zero(4, 3);
  fit4.col(1) = Vector::Ones(4);
  const Vector w = common_component_error(fit4, Matrix::Zero(4, 3));
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[1] == doctest::Approx(1.0));
  CHECK(w[2] == doctest::Approx(0.0));

  CHECK(common_component_error(fit, fit).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(common_component_error(fit, Matrix::Zero(2, 2)),
                  ShapeMismatch);
}
