#include <doctest.h>

#include <cmath>
#include <vector>

#include "facreg/error.hpp"
#include "facreg/montecarlo.hpp"

using namespace facreg;

namespace {

bool same_five(const FiveNum& a, const FiveNum& b) {
  return a.min == b.min && a.q1 == b.q1 && a.median == b.median &&
         a.q3 == b.q3 && a.max == b.max;
}

bool same_cell(const CellResult& a, const CellResult& b) {
  if (a.freq_r_correct != b.freq_r_correct) return false;
  if (!same_five(a.d2, b.d2)) return false;
  if (a.coef_error.has_value() != b.coef_error.has_value()) return false;
  if (a.coef_error && !same_five(*a.coef_error, *b.coef_error)) return false;
  if (a.errors.size() != b.errors.size()) return false;
  for (size_t i = 0; i < a.errors.size(); ++i)
    if (a.errors[i].index != b.errors[i].index ||
        a.errors[i].message != b.errors[i].message)
      return false;
  return true;
}

ExperimentSpec basic_spec() {
  ExperimentSpec spec;
  spec.design = Design::stationary;
  spec.delta = Delta::strong;
  spec.estimator = Estimator::ols;
  spec.p = 20;
  spec.t_rule = TRule::explicit_t;
  spec.t_explicit = 40;
  spec.replicates = 8;
  spec.master_seed = 97;
  return spec;
}

}  // namespace

TEST_CASE("summarize_boxplot hand examples") {
  const FiveNum odd = summarize_boxplot({5, 3, 1, 4, 2});
  CHECK(odd.min == 1.0);
  CHECK(odd.q1 == 2.0);
  CHECK(odd.median == 3.0);
  CHECK(odd.q3 == 4.0);
  CHECK(odd.max == 5.0);

  // even length interpolates between order statistics
  const FiveNum even = summarize_boxplot({1, 2, 3, 4});
  CHECK(even.min == 1.0);
  CHECK(even.q1 == doctest::Approx(1.75));
  CHECK(even.median == doctest::Approx(2.5));
  CHECK(even.q3 == doctest::Approx(3.25));
  CHECK(even.max == 4.0);

  const FiveNum single = summarize_boxplot({42.0});
  CHECK(single.min == 42.0);
  CHECK(single.q1 == 42.0);
  CHECK(single.median == 42.0);
  CHECK(single.q3 == 42.0);
  CHECK(single.max == 42.0);

  const FiveNum flat = summarize_boxplot({7, 7, 7});
  CHECK(flat.min == 7.0);
  CHECK(flat.max == 7.0);
  CHECK(flat.median == 7.0);

  CHECK_THROWS_AS(summarize_boxplot({}), EmptySample);
}

TEST_CASE("resolved_t rules") {
  ExperimentSpec spec;
  spec.p = 100;
  spec.t_rule = TRule::half_p;
  CHECK(spec.resolved_t() == 50);
  spec.t_rule = TRule::p;
  CHECK(spec.resolved_t() == 100);
  spec.t_rule = TRule::one_half_p;
  CHECK(spec.resolved_t() == 150);
  spec.t_rule = TRule::explicit_t;
  spec.t_explicit = 77;
  CHECK(spec.resolved_t() == 77);

  spec.p = 5;  // integer division on odd p
  spec.t_rule = TRule::half_p;
  CHECK(spec.resolved_t() == 2);
  spec.t_rule = TRule::one_half_p;
  CHECK(spec.resolved_t() == 7);
}

TEST_CASE("run_cell validation") {
  ExperimentSpec spec = basic_spec();
  spec.replicates = 0;
  CHECK_THROWS_AS(run_cell(spec), BadValue);

  spec = basic_spec();
  spec.t_explicit = 9;
  CHECK_THROWS_AS(run_cell(spec), BadValue);

  // estimator must match the design
  spec = basic_spec();
  spec.estimator = Estimator::iv;
  CHECK_THROWS_WITH_AS(
      run_cell(spec),
      "run_cell: estimator iv does not apply to the stationary design",
      BadValue);
  spec.estimator = Estimator::sieve;
  CHECK_THROWS_AS(run_cell(spec), BadValue);

  spec = basic_spec();
  spec.design = Design::nonlinear;
  spec.estimator = Estimator::ols;
  CHECK_THROWS_AS(run_cell(spec), BadValue);
  spec.estimator = Estimator::iv;
  CHECK_THROWS_AS(run_cell(spec), BadValue);

  spec = basic_spec();
  spec.design = Design::endogenous;
  spec.estimator = Estimator::sieve;
  CHECK_THROWS_AS(run_cell(spec), BadValue);

  spec = basic_spec();
  spec.design = Design::nonstationary;
  spec.estimator = Estimator::iv;
  CHECK_THROWS_AS(run_cell(spec), BadValue);
}

TEST_CASE("run_cell basic shape of output") {
  ExperimentSpec spec = basic_spec();
  const CellResult cell = run_cell(spec);
  CHECK(cell.errors.empty());
  CHECK(cell.freq_r_correct >= 0.0);
  CHECK(cell.freq_r_correct <= 1.0);
  CHECK(cell.d2.min >= 0.0);
  CHECK(cell.d2.min <= cell.d2.q1);
  CHECK(cell.d2.q1 <= cell.d2.median);
  CHECK(cell.d2.median <= cell.d2.q3);
  CHECK(cell.d2.q3 <= cell.d2.max);
  CHECK(cell.d2.max <= 3.0);  // squared distance of 3-dim spaces
  CHECK(cell.wall_time_s >= 0.0);

  // coefficient error is reported for regression estimators only
  REQUIRE(cell.coef_error.has_value());
  CHECK(cell.coef_error->median > 0.0);

  spec.estimator = Estimator::known_d;
  const CellResult known = run_cell(spec);
  CHECK(!known.coef_error.has_value());

  ExperimentSpec nl = basic_spec();
  nl.design = Design::nonlinear;
  nl.estimator = Estimator::sieve;
  const CellResult sieve_cell = run_cell(nl);
  CHECK(!sieve_cell.coef_error.has_value());
}

TEST_CASE("run_cell single replicate") {
  ExperimentSpec spec = basic_spec();
  spec.replicates = 1;
  const CellResult cell = run_cell(spec);
  CHECK((cell.freq_r_correct == 0.0 || cell.freq_r_correct == 1.0));
  CHECK(cell.d2.min == cell.d2.max);
}

TEST_CASE("run_cell is deterministic and worker-invariant") {
  const ExperimentSpec spec = basic_spec();
  const CellResult a = run_cell(spec, 1);
  const CellResult b = run_cell(spec, 1);
  const CellResult c = run_cell(spec, 4);
  CHECK(same_cell(a, b));
  CHECK(same_cell(a, c));

  // different master seed, different draws
  ExperimentSpec other = spec;
  other.master_seed = 98;
  const CellResult d = run_cell(other);
  CHECK(!same_five(a.d2, d.d2));
}

TEST_CASE("easy regime selects the true count reliably") {
  ExperimentSpec spec = basic_spec();
  spec.p = 40;
  spec.t_explicit = 200;
  spec.replicates = 25;
  spec.master_seed = 555;
  const CellResult cell = run_cell(spec, 4);
  CHECK(cell.errors.empty());
  CHECK(cell.freq_r_correct >= 0.8);
  CHECK(cell.d2.median < 0.2);
}

TEST_CASE("failed replicates are recorded and skipped") {
  // High-degree polynomial bases make the sieve Gram numerically singular
  // for some draws: this cell deterministically loses 7 of 10 replicates.
  ExperimentSpec spec;
  spec.design = Design::nonlinear;
  spec.estimator = Estimator::sieve;
  spec.p = 4;
  spec.t_rule = TRule::explicit_t;
  spec.t_explicit = 13000;
  spec.replicates = 10;
  spec.master_seed = 11;

  const CellResult cell = run_cell(spec, 2);
  CHECK(cell.errors.size() == 7);
  for (size_t i = 0; i < cell.errors.size(); ++i) {
    CHECK(!cell.errors[i].message.empty());
    CHECK(cell.errors[i].index >= 0);
    CHECK(cell.errors[i].index < 10);
    if (i > 0) CHECK(cell.errors[i].index > cell.errors[i - 1].index);
  }
  // summaries come from the three survivors
  CHECK(cell.freq_r_correct >= 0.0);
  CHECK(cell.freq_r_correct <= 1.0);
  CHECK(cell.d2.min <= cell.d2.max);

  // error bookkeeping is worker-invariant too
  const CellResult again = run_cell(spec, 5);
  CHECK(same_cell(cell, again));
}

TEST_CASE("run_cell throws when every replicate fails") {
  ExperimentSpec spec;
  spec.design = Design::nonlinear;
  spec.estimator = Estimator::sieve;
  spec.p = 4;
  spec.t_rule = TRule::explicit_t;
  spec.t_explicit = 59049;  // sieve degree high enough to always break
  spec.replicates = 2;
  spec.master_seed = 11;
  CHECK_THROWS_AS(run_cell(spec), NumericError);
}

TEST_CASE("run_table preserves order and validates input") {
  CHECK_THROWS_AS(run_table({}), BadValue);

  ExperimentSpec a = basic_spec();
  ExperimentSpec b = basic_spec();
  b.estimator = Estimator::known_d;
  b.t_explicit = 30;
  const std::vector<CellResult> cells = run_table({a, b}, 2);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].spec.estimator == Estimator::ols);
  CHECK(cells[0].spec.t_explicit == 40);
  CHECK(cells[1].spec.estimator == Estimator::known_d);
  CHECK(cells[1].spec.t_explicit == 30);

  // run_table cells match standalone runs
  CHECK(same_cell(cells[0], run_cell(a)));
  CHECK(same_cell(cells[1], run_cell(b)));
}

TEST_CASE("penalized selection flows through run_cell") {
  ExperimentSpec spec = basic_spec();
  spec.p = 30;
  spec.t_explicit = 60;
  spec.replicates = 12;
  spec.c_t_heuristic = true;
  const CellResult cell = run_cell(spec);
  CHECK(cell.errors.empty());
  CHECK(cell.freq_r_correct >= 0.0);
  CHECK(cell.freq_r_correct <= 1.0);

  // the penalty changes which count is scored, not the fitted spaces
  ExperimentSpec plain = spec;
  plain.c_t_heuristic = false;
  const CellResult base = run_cell(plain);
  CHECK(same_five(cell.d2, base.d2));
}

TEST_CASE("estimator and strength labels") {
  CHECK(std::string(to_string(Estimator::known_d)) == "known_d");
  CHECK(std::string(to_string(Estimator::ols)) == "ols");
  CHECK(std::string(to_string(Estimator::iv)) == "iv");
  CHECK(std::string(to_string(Estimator::sieve)) == "sieve");
  CHECK(std::string(to_string(Delta::strong)) == "strong");
  CHECK(std::string(to_string(Delta::weak)) == "weak");
}
