#include "facreg/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "facreg/error.hpp"
#include "facreg/factorspace.hpp"
#include "facreg/metrics.hpp"
#include "facreg/rng.hpp"

namespace facreg {

namespace {

void check_combination(Design design, Estimator est) {
  bool ok = false;
  switch (design) {
    case Design::stationary:
    case Design::nonstationary:
      ok = est == Estimator::known_d || est == Estimator::ols;
      break;
    case Design::endogenous:
      ok = est == Estimator::known_d || est == Estimator::ols ||
           est == Estimator::iv;
      break;
    case Design::nonlinear:
      ok = est == Estimator::known_d || est == Estimator::sieve;
      break;
  }
  if (!ok)
    throw BadValue(std::string("run_cell: estimator ") + to_string(est) +
                   " does not apply to the " + to_string(design) + " design");
}

double interp_quantile(const std::vector<double>& sorted, double q) {
  const size_t n = sorted.size();
  const double h = (static_cast<double>(n) - 1.0) * q;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = static_cast<size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct ReplicateScore {
  bool ok = false;
  bool hit = false;
  double d2 = 0.0;
  double coef = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

ReplicateScore run_replicate(const ExperimentSpec& spec, int index) {
  ReplicateScore score;
  try {
    DgpConfig cfg;
    cfg.design = spec.design;
    cfg.p = spec.p;
    cfg.t_len = spec.resolved_t();
    cfg.delta = spec.delta;
    cfg.seed = mix_seed(spec.master_seed, static_cast<std::uint64_t>(index));
    Dataset ds = generate(cfg);

    FitOptions opt;
    opt.k_bar = spec.k_bar;
    opt.r_fixed = ds.truth.r_true;  // distance scored at the true count
    const Panel* z = &ds.z;
    const Panel* w = ds.w ? &*ds.w : nullptr;

    Panel g_residual_input;  // keeps the known-g panel alive through the fit
    switch (spec.estimator) {
      case Estimator::ols:
        opt.method = Method::ols;
        break;
      case Estimator::iv:
        opt.method = Method::iv;
        break;
      case Estimator::sieve:
        opt.method = Method::sieve;
        break;
      case Estimator::known_d:
        if (ds.truth.g_params) {
          // Known nonlinear regression: strip g(u_t) and fit the remainder
          // as a pure factor model with the sieve lag rule.
          Matrix stripped = ds.y.data;
          for (int t = 0; t < ds.y.t_len(); ++t)
            stripped.col(t) -= eval_g_true(*ds.truth.g_params, ds.z.data(0, t));
          g_residual_input = Panel(std::move(stripped));
          opt.method = Method::none;
          if (!opt.k_bar) opt.k_bar = default_sieve_m(cfg.t_len);
        } else {
          opt.method = Method::known_d;
          opt.known_d = ds.truth.d_true;
        }
        break;
    }

    opt.c_t = spec.c_t;
    opt.c_t_heuristic = spec.c_t_heuristic;

    const Panel& y_input =
        g_residual_input.data.size() > 0 ? g_residual_input : ds.y;
    FactorFit fit = fit_factor_model(y_input, z, w, opt);

    const int r_selected = spec.c_t > 0.0 || spec.c_t_heuristic
                               ? fit.r_adjusted.value_or(fit.r_ratio)
                               : fit.r_ratio;
    score.hit = r_selected == ds.truth.r_true;

    const SubspaceDistance dist =
        space_distance(fit.loadings, ds.truth.a_basis);
    score.d2 = dist.value * dist.value;

    if ((spec.estimator == Estimator::ols ||
         spec.estimator == Estimator::iv) &&
        ds.truth.d_true.size() > 0)
      score.coef = coef_error(fit.d_hat, ds.truth.d_true);

    score.ok = true;
  } catch (const Error& e) {
    score.error = e.what();
  }
  return score;
}

}  // namespace

const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::known_d: return "known_d";
    case Estimator::ols: return "ols";
    case Estimator::iv: return "iv";
    case Estimator::sieve: return "sieve";
  }
  return "?";
}

const char* to_string(Delta d) {
  return d == Delta::weak ? "weak" : "strong";
}

int ExperimentSpec::resolved_t() const {
  switch (t_rule) {
    case TRule::half_p: return p / 2;
    case TRule::p: return p;
    case TRule::one_half_p: return p + p / 2;
    case TRule::explicit_t: return t_explicit;
  }
  return t_explicit;
}

FiveNum summarize_boxplot(std::vector<double> values) {
  if (values.empty())
    throw EmptySample("summarize_boxplot: empty sample");
  std::sort(values.begin(), values.end());
  FiveNum s;
  s.min = values.front();
  s.q1 = interp_quantile(values, 0.25);
  s.median = interp_quantile(values, 0.5);
  s.q3 = interp_quantile(values, 0.75);
  s.max = values.back();
  return s;
}

CellResult run_cell(const ExperimentSpec& spec, int workers) {
  if (spec.replicates < 1)
    throw BadValue("run_cell: replicates must be >= 1");
  if (spec.resolved_t() < 10) throw BadValue("run_cell: resolved T below 10");
  check_combination(spec.design, spec.estimator);
  workers = std::clamp(workers, 1, 64);

  const auto start = std::chrono::steady_clock::now();

  std::vector<ReplicateScore> scores(spec.replicates);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= spec.replicates) break;
      scores[i] = run_replicate(spec, i);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate in replicate-index order: identical output for any worker
  // count.
  CellResult cell;
  cell.spec = spec;
  int hits = 0;
  int succeeded = 0;
  std::vector<double> d2s;
  std::vector<double> coefs;
  d2s.reserve(spec.replicates);
  for (int i = 0; i < spec.replicates; ++i) {
    const ReplicateScore& s = scores[i];
    if (!s.ok) {
      cell.errors.push_back({i, s.error});
      continue;
    }
    ++succeeded;
    hits += s.hit ? 1 : 0;
    d2s.push_back(s.d2);
    if (!std::isnan(s.coef)) coefs.push_back(s.coef);
  }
  if (succeeded == 0)
    throw NumericError("run_cell: every replicate failed: " +
                       (cell.errors.empty() ? std::string("?")
                                            : cell.errors.front().message));
  cell.freq_r_correct =
      static_cast<double>(hits) / static_cast<double>(succeeded);
  cell.d2 = summarize_boxplot(d2s);
  if (!coefs.empty()) cell.coef_error = summarize_boxplot(coefs);

  const auto stop = std::chrono::steady_clock::now();
  cell.wall_time_s =
      std::chrono::duration<double>(stop - start).count();
  return cell;
}

std::vector<CellResult> run_table(const std::vector<ExperimentSpec>& specs,
                                  int workers) {
  if (specs.empty()) throw BadValue("run_table: empty spec list");
  std::vector<CellResult> cells;
  cells.reserve(specs.size());
  for (const auto& spec : specs) cells.push_back(run_cell(spec, workers));
  return cells;
}

}  // namespace facreg
