#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facreg/dgp.hpp"

namespace facreg {

enum class Estimator { known_d, ols, iv, sieve };

const char* to_string(Estimator e);
const char* to_string(Delta d);

// Sample-size rule from the simulation grid: T = p/2, p, or 3p/2.
enum class TRule { half_p, p, one_half_p, explicit_t };

// One table cell: a design/strength/estimator/(p,T) combination run over
// seeded replicates.
struct ExperimentSpec {
  Design design = Design::stationary;
  Delta delta = Delta::strong;
  Estimator estimator = Estimator::ols;
  int p = 100;
  TRule t_rule = TRule::explicit_t;
  int t_explicit = 0;
  int replicates = 200;
  std::optional<int> k_bar;    // default: 1, or the sieve rule for sieve fits
  double c_t = 0.0;            // penalized selection when > 0
  bool c_t_heuristic = false;  // per-replicate penalty preset overrides c_t
  std::optional<int> r_fixed;  // loadings rank override (selection still runs)
  std::uint64_t master_seed = 0;

  int resolved_t() const;
};

struct FiveNum {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

// Five-number summary with linear-interpolation quantiles: index h = (n-1)q,
// interpolated between adjacent order statistics.
FiveNum summarize_boxplot(std::vector<double> values);

struct ReplicateError {
  int index;
  std::string message;
};

struct CellResult {
  ExperimentSpec spec;
  double freq_r_correct = 0.0;
  FiveNum d2;                         // squared loading-space distances
  std::optional<FiveNum> coef_error;  // absent for known_d and sieve fits
  std::vector<ReplicateError> errors;
  double wall_time_s = 0.0;
};

// Runs every replicate of one cell: generate -> fit -> score. Replicate
// seeds are index-derived and results are aggregated in index order, so the
// output is bit-identical for any worker count. The loading-space distance
// is scored at the true factor count; the frequency column scores the plain
// ratio selection against it. Replicates that throw are recorded and
// excluded from the summaries.
CellResult run_cell(const ExperimentSpec& spec, int workers = 1);

// Independent cells in input order.
std::vector<CellResult> run_table(const std::vector<ExperimentSpec>& specs,
                                  int workers = 1);

}  // namespace facreg
