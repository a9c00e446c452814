#pragma once

#include <cstdint>
#include <optional>

#include "facreg/panel.hpp"

namespace facreg {

enum class Delta { strong, weak };  // factor strength 0 or 0.5

// Simulation design parameters. Every generator is a pure function of this
// struct; the same config yields bit-identical datasets.
struct DgpConfig {
  Design design = Design::stationary;
  int p = 100;
  int t_len = 100;
  Delta delta = Delta::strong;
  std::uint64_t seed = 0;
  int burn_in = 100;  // applied to stationary recursions only
};

// Generated dataset with ground truth. z holds the observed regressors
// (the scalar driver series for the nonlinear design); w is present for the
// endogenous design only.
struct Dataset {
  Panel y;
  Panel z;
  std::optional<Panel> w;
  DgpTruth truth;
};

// Variate draw order, fixed for reproducibility (row-major within each
// matrix, one step at a time within each chain):
//   1. regression coefficients (D, or the nonlinear alpha parameters)
//   2. loading matrix A, then the weak-case per-column sparsification
//      (a partial Fisher-Yates draw of the rows to zero, column by column)
//   3. chain innovations, chains in the order listed per design, each chain
//      drawn fully (burn-in included) before the next
//   4. observation noise, column-major by time
Dataset gen_stationary(const DgpConfig& cfg);
Dataset gen_endogenous(const DgpConfig& cfg);
Dataset gen_nonstationary(const DgpConfig& cfg);
Dataset gen_nonlinear(const DgpConfig& cfg);

// Dispatches on cfg.design.
Dataset generate(const DgpConfig& cfg);

// Evaluates the nonlinear regression function at one input value:
// logistic curves for the first block of series, sines for the rest.
Vector eval_g_true(const GParams& params, double u);

double delta_value(Delta d);

}  // namespace facreg
