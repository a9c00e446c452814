#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "facreg/dgp.hpp"
#include "facreg/error.hpp"
#include "facreg/metrics.hpp"

using namespace facreg;

TEST_CASE("gen_stationary shapes and truth") {
  const DgpConfig cfg{Design::stationary, 8, 20, Delta::strong, 1};
  const Dataset data = generate(cfg);
  CHECK(data.y.p() == 8);
  CHECK(data.y.t_len() == 20);
  CHECK(data.z.p() == 2);
  CHECK(data.z.t_len() == 20);
  CHECK(!data.w.has_value());
  CHECK(data.truth.r_true == 3);
  CHECK(data.truth.d_true.rows() == 8);
  CHECK(data.truth.d_true.cols() == 2);
  CHECK(data.truth.a_true.cols() == 3);
  CHECK(data.truth.x_true.rows() == 3);
  CHECK(data.truth.x_true.cols() == 20);
  CHECK(data.truth.design == Design::stationary);
  CHECK(data.truth.delta == 0.0);
  CHECK(!data.truth.g_params.has_value());
}

TEST_CASE("determinism and seed independence") {
  for (Design design : {Design::stationary, Design::endogenous,
                        Design::nonstationary, Design::nonlinear}) {
    const DgpConfig cfg{design, 10, 30, Delta::strong, 77};
    const Dataset a = generate(cfg);
    const Dataset b = generate(cfg);
    CHECK((a.y.data - b.y.data).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.z.data - b.z.data).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.truth.a_true - b.truth.a_true).cwiseAbs().maxCoeff() == 0.0);

    DgpConfig other = cfg;
    other.seed = 78;
    const Dataset c = generate(other);
    CHECK((a.y.data - c.y.data).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("truth basis is orthonormal and spans a_true") {
  const DgpConfig cfg{Design::stationary, 25, 40, Delta::weak, 5};
  const Dataset data = generate(cfg);
  CHECK(is_half_orthogonal(data.truth.a_basis, 1e-10));
  // distance between the raw loadings' span and the stored basis
  const Matrix q = orthonormal_basis(data.truth.a_true);
  CHECK(space_distance(q, data.truth.a_basis).value < 1e-10);
}

TEST_CASE("weak case zeroes all but floor(sqrt(p)) entries per column") {
  for (int p : {9, 20, 100}) {
    const DgpConfig cfg{Design::stationary, p, 30, Delta::weak, 11};
    const Dataset data = generate(cfg);
    const int keep = static_cast<int>(std::floor(std::sqrt(p)));
    for (int j = 0; j < 3; ++j) {
      int nonzeros = 0;
      for (int i = 0; i < p; ++i)
        if (data.truth.a_true(i, j) != 0.0) ++nonzeros;
      CHECK(nonzeros == keep);
    }
  }
  // strong case is dense (U(-2,2) never exactly 0)
  const DgpConfig strong{Design::stationary, 20, 30, Delta::strong, 11};
  const Dataset dense = generate(strong);
  CHECK((dense.truth.a_true.array() != 0.0).all());
}

TEST_CASE("coefficients and loadings stay inside U(-2,2)") {
  const DgpConfig cfg{Design::stationary, 30, 25, Delta::strong, 13};
  const Dataset data = generate(cfg);
  CHECK(data.truth.d_true.cwiseAbs().maxCoeff() < 2.0);
  CHECK(data.truth.a_true.cwiseAbs().maxCoeff() < 2.0);
}

TEST_CASE("endogenous design wiring") {
  const DgpConfig cfg{Design::endogenous, 12, 200, Delta::strong, 19};
  const Dataset data = generate(cfg);
  REQUIRE(data.w.has_value());
  CHECK(data.w->p() == 2);

  // w row 2 is the elementwise square of row 1
  const Matrix& w = data.w->data;
  CHECK((w.row(1) - w.row(0).cwiseProduct(w.row(0)))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // z rows follow the documented construction from x and u
  const Matrix& x = data.truth.x_true;
  Matrix z_expect(2, 200);
  z_expect.row(0) = 0.3 * x.row(0) + 0.5 * w.row(0) + 0.5 * w.row(1);
  z_expect.row(1) = 0.3 * x.row(1) - 0.5 * w.row(0) + 0.5 * w.row(1);
  CHECK((data.z.data - z_expect).cwiseAbs().maxCoeff() < 1e-12);

  // z is genuinely endogenous: sample correlation with x is nonzero
  for (int i = 0; i < 2; ++i) {
    const auto zc = data.z.data.row(i).array() - data.z.data.row(i).mean();
    const auto xc = x.row(i).array() - x.row(i).mean();
    const double corr =
        (zc * xc).sum() / std::sqrt((zc * zc).sum() * (xc * xc).sum());
    CHECK(std::abs(corr) > 0.05);
  }
}

TEST_CASE("nonstationary design components") {
  const int t_len = 500;
  const DgpConfig cfg{Design::nonstationary, 10, t_len, Delta::strong, 23};
  const Dataset data = generate(cfg);
  const Matrix& x = data.truth.x_true;

  // x2 is the exact deterministic trend 3t/T
  for (int t = 0; t < t_len; ++t)
    CHECK(x(1, t) == doctest::Approx(3.0 * (t + 1) / t_len).epsilon(1e-14));

  // x3 is a random walk whose increments have variance about 10/T
  double sum2 = 0.0;
  for (int t = 1; t < t_len; ++t) {
    const double inc = x(2, t) - x(2, t - 1);
    sum2 += inc * inc;
  }
  const double var = sum2 / (t_len - 1);
  CHECK(var > 0.7 * 10.0 / t_len);
  CHECK(var < 1.3 * 10.0 / t_len);

  // x1 follows the trend AR recursion: residuals behave like N(0,1)
  double rsum = 0.0, rsum2 = 0.0;
  for (int t = 1; t < t_len; ++t) {
    const double trend_t = 2.0 * (t + 1) / t_len;
    const double trend_prev = 2.0 * t / t_len;
    const double e = (x(0, t) - trend_t) - 0.8 * (x(0, t - 1) - trend_prev);
    rsum += e;
    rsum2 += e * e;
  }
  const double rmean = rsum / (t_len - 1);
  const double rvar = rsum2 / (t_len - 1) - rmean * rmean;
  CHECK(std::abs(rmean) < 0.15);
  CHECK(rvar == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("nonlinear design g ranges and reconstruction") {
  const DgpConfig cfg{Design::nonlinear, 14, 60, Delta::strong, 29};
  const Dataset data = generate(cfg);
  REQUIRE(data.truth.g_params.has_value());
  CHECK(data.z.p() == 1);  // the scalar driver series
  CHECK(data.truth.d_true.cols() == 0);

  // evaluate g over the driver and check the documented ranges
  const GParams& params = *data.truth.g_params;
  CHECK(params.alpha1.size() == 7);
  CHECK(params.alpha2.size() == 7);
  for (int t = 0; t < 60; ++t) {
    const Vector g = eval_g_true(params, data.z.data(0, t));
    for (int i = 0; i < 7; ++i) {
      CHECK(g[i] > 0.0);
      CHECK(g[i] < 1.0);
    }
    for (int i = 7; i < 14; ++i) {
      CHECK(g[i] >= -1.0);
      CHECK(g[i] <= 1.0);
    }
  }

  // y decomposes as g(u) + A x + noise with unit-ish noise variance
  double sum2 = 0.0;
  int count = 0;
  for (int t = 0; t < 60; ++t) {
    const Vector eps = data.y.data.col(t) -
                       eval_g_true(params, data.z.data(0, t)) -
                       data.truth.a_true * data.truth.x_true.col(t);
    sum2 += eps.squaredNorm();
    count += 14;
  }
  CHECK(sum2 / count == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(generate(DgpConfig{Design::stationary, 3, 30,
                                     Delta::strong, 1}),
                  BadValue);
  CHECK_THROWS_AS(generate(DgpConfig{Design::stationary, 10, 9,
                                     Delta::strong, 1}),
                  BadValue);
}

TEST_CASE("delta_value mapping") {
  CHECK(delta_value(Delta::strong) == 0.0);
  CHECK(delta_value(Delta::weak) == 0.5);
}
