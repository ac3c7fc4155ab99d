#ifndef PLEARN_ORACLE_HPP
#define PLEARN_ORACLE_HPP

// Reference implementations and seeded instance generators used to validate
// the learners. The references below deliberately avoid the code paths they
// check: they recompute distances, neighbourhoods, slacks and Naive Bayes
// products from raw cases.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "plearn/core.hpp"
#include "plearn/exact.hpp"
#include "plearn/linear.hpp"
#include "plearn/local.hpp"

namespace plearn::oracle {

/// Trial counts and resolutions for the randomized checks, in one place so
/// a full acceptance run stays well under a minute.
struct CheckBudget {
  std::size_t statement_trials = 1000;
  std::size_t identity_trials = 1000;
  std::size_t tiny_trials = 50;
  double tiny_grid_step = 0.05;
  double tiny_grid_bound = 3.0;
  std::size_t smoothing_trials = 200;
  std::size_t smoothing_scan_points = 10000;
  std::size_t nb_trials = 500;
  std::size_t tree_datasets = 200;
  std::size_t tree_probes = 1000;
  std::size_t svr_trials = 500;
  std::size_t gradient_points = 100;
};

// ---------------------------------------------------------------------------
// Random numbers with a fixed, library-independent mapping from seed to data

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Synthetic data

enum class BaseShape { linear, piecewise_constant };
enum class LabelScheme { real, binary01, binary_pm1 };

/// Stand-in for the unknown dependence between features and feedback.
struct SyntheticDependence {
  BaseShape shape = BaseShape::linear;
  /// Linear coefficients; drawn from U[-1, 1] when empty.
  std::vector<double> coefficients;
  double intercept = 0.0;
  /// Feedback perturbation drawn from U[-noise, noise].
  double noise = 0.0;
  /// Share of cases whose feedback is replaced by an outlier, in [0, 1).
  double outlier_fraction = 0.0;
};

struct RandomInstance {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  std::size_t m = 10;
  FeatureKind kind = FeatureKind::numeric;
  /// Distinct values per feature; 0 means continuous (numeric only).
  std::size_t levels = 0;
  double lo = -2.0;
  double hi = 2.0;
  LabelScheme labels = LabelScheme::real;
  SyntheticDependence dependence;
  std::size_t queries = 0;
};

struct GeneratedInstance {
  TrainingSet training;
  std::vector<FeatureVector> queries;
};

inline std::string nominal_symbol(std::size_t feature, std::size_t level) {
  return "f" + std::to_string(feature + 1) + "_" + std::to_string(level);
}

/// Reproducible draw honouring distinct feature vectors; a colliding vector
/// is resampled up to 1000 times before giving up with ExhaustedRetries.
inline GeneratedInstance generate_instance(const RandomInstance& spec) {
  if (spec.n == 0 || spec.n > 3) throw Error(ErrorCode::invalid_parameter, "instance dimension must be in [1, 3]");
  if (spec.m == 0 || spec.m > 20) throw Error(ErrorCode::invalid_parameter, "instance size must be in [1, 20]");
  if (!(spec.dependence.outlier_fraction >= 0.0 && spec.dependence.outlier_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_parameter, "outlier fraction must lie in [0, 1)");
  }
  if (spec.kind != FeatureKind::numeric && spec.levels == 0) {
    throw Error(ErrorCode::invalid_parameter, "ordinal and nominal instances need levels > 0");
  }

  Rng rng(spec.seed);
  std::vector<double> coef = spec.dependence.coefficients;
  if (coef.empty()) {
    for (std::size_t i = 0; i < spec.n; ++i) coef.push_back(rng.uniform(-1.0, 1.0));
  }
  if (coef.size() != spec.n) throw Error(ErrorCode::invalid_parameter, "one coefficient per feature required");

  // Each feature draws a level index (or a continuous value); coordinates feed the base function.
  auto draw = [&](std::vector<double>& coords) {
    std::vector<FeatureValue> values;
    coords.clear();
    for (std::size_t i = 0; i < spec.n; ++i) {
      if (spec.kind == FeatureKind::numeric) {
        const double v = spec.levels == 0 ? rng.uniform(spec.lo, spec.hi) : static_cast<double>(rng.below(spec.levels));
        values.emplace_back(Numeric{v});
        coords.push_back(v);
      } else {
        const std::size_t level = rng.below(spec.levels);
        if (spec.kind == FeatureKind::ordinal) values.emplace_back(Ordinal{level});
        else values.emplace_back(Nominal{nominal_symbol(i, level)});
        coords.push_back(static_cast<double>(level));
      }
    }
    return FeatureVector(std::move(values));
  };

  const double midpoint = spec.kind == FeatureKind::numeric && spec.levels == 0
                              ? 0.5 * (spec.lo + spec.hi)
                              : 0.5 * static_cast<double>(spec.levels - 1);
  auto base = [&](const std::vector<double>& coords) {
    if (spec.dependence.shape == BaseShape::piecewise_constant) return coords[0] > midpoint ? 1.0 : -1.0;
    double s = spec.dependence.intercept;
    for (std::size_t i = 0; i < spec.n; ++i) s += coef[i] * (coords[i] - midpoint);
    return s;
  };

  std::vector<Case> cases;
  std::vector<FeatureVector> seen;
  std::vector<double> coords;
  for (std::size_t r = 0; r < spec.m; ++r) {
    FeatureVector x;
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == 1000) {
        throw Error(ErrorCode::exhausted_retries, "could not draw " + std::to_string(spec.m) +
                                                      " distinct feature vectors");
      }
      x = draw(coords);
      if (std::find(seen.begin(), seen.end(), x) == seen.end()) break;
    }
    seen.push_back(x);
    double z = base(coords);
    if (spec.dependence.noise > 0.0) z += rng.uniform(-spec.dependence.noise, spec.dependence.noise);
    const bool outlier = rng.chance(spec.dependence.outlier_fraction);
    double y = 0.0;
    switch (spec.labels) {
      case LabelScheme::real: y = outlier ? z + (rng.chance(0.5) ? 5.0 : -5.0) : z; break;
      case LabelScheme::binary01: y = (z > 0.0) != outlier ? 1.0 : 0.0; break;
      case LabelScheme::binary_pm1: y = (z > 0.0) != outlier ? 1.0 : -1.0; break;
    }
    cases.push_back({std::move(x), y});
  }

  std::optional<FeatureSchema> schema;
  if (spec.kind != FeatureKind::numeric) {
    FeatureSchema s;
    for (std::size_t i = 0; i < spec.n; ++i) {
      ColumnSpec col{"x" + std::to_string(i + 1), spec.kind, {}};
      for (std::size_t l = 0; l < spec.levels; ++l) {
        col.values.push_back(spec.kind == FeatureKind::nominal ? nominal_symbol(i, l) : "L" + std::to_string(l));
      }
      s.columns.push_back(std::move(col));
    }
    schema = std::move(s);
  }

  GeneratedInstance out{validate_training_set(std::move(cases), std::move(schema)), {}};
  for (std::size_t q = 0; q < spec.queries; ++q) out.queries.push_back(draw(coords));
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force references

namespace detail {

inline double coordinate_of(const FeatureValue& v) {
  if (const auto* num = std::get_if<Numeric>(&v)) return num->value;
  return static_cast<double>(std::get<Ordinal>(v).rank);
}

inline double raw_distance(const FeatureVector& p, const FeatureVector& q, Metric metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    const double d = coordinate_of(p[i]) - coordinate_of(q[i]);
    acc += metric == Metric::euclidean ? d * d : (d < 0 ? -d : d);
  }
  return metric == Metric::euclidean ? std::sqrt(acc) : acc;
}

}  // namespace detail

/// Majority label over the k nearest cases plus any tied with the k-th;
/// an even split goes to 0.
inline double brute_knn_majority(const FeatureVector& x0, const TrainingSet& t, std::size_t k,
                                 Metric metric = Metric::euclidean) {
  if (k == 0) throw Error(ErrorCode::invalid_parameter, "k must be positive");
  if (k > t.size()) throw Error(ErrorCode::k_exceeds_sample_size, "k exceeds the sample size");
  std::vector<std::pair<double, double>> by_distance;
  for (const auto& c : t) by_distance.emplace_back(detail::raw_distance(x0, c.x, metric), c.y);
  std::sort(by_distance.begin(), by_distance.end());
  const double kth = by_distance[k - 1].first;
  std::size_t ones = 0, zeros = 0;
  for (const auto& [d, y] : by_distance) {
    if (d > kth) break;
    (y == 1.0 ? ones : zeros) += 1;
  }
  return ones > zeros ? 1.0 : 0.0;
}

/// Lattice box over (b_1, ..., b_n, a); the intercept is the last axis.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct GridResult {
  LinearHypothesis hypothesis;
  double value = std::numeric_limits<double>::infinity();
  /// Lattice coordinates of the minimiser.
  std::vector<std::size_t> index;
};

/// Exhaustive minimum over lo + k * step in every axis. Scan order is
/// lexicographic with the first axis outermost; the first minimiser wins.
inline GridResult grid_search_linear(const std::function<double(const LinearHypothesis&)>& objective,
                                     const Box& box, double step) {
  const std::size_t dims = box.lo.size();
  if (dims == 0 || box.hi.size() != dims) throw Error(ErrorCode::invalid_parameter, "malformed box");
  if (dims > 3) throw Error(ErrorCode::invalid_parameter, "grid search supports at most two weights");
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_parameter, "grid step must be positive");

  std::vector<std::size_t> counts(dims);
  double total = 1.0;
  for (std::size_t d = 0; d < dims; ++d) {
    if (box.hi[d] < box.lo[d]) throw Error(ErrorCode::invalid_parameter, "box bounds reversed");
    counts[d] = static_cast<std::size_t>(std::floor((box.hi[d] - box.lo[d]) / step + 1e-9)) + 1;
    total *= static_cast<double>(counts[d]);
  }
  if (total > 1e7) {
    throw Error(ErrorCode::box_too_large, "lattice of " + format_real(total) + " points exceeds 1e7");
  }

  GridResult best;
  std::vector<std::size_t> idx(dims, 0);
  LinearHypothesis f{std::vector<double>(dims - 1, 0.0), 0.0};
  for (;;) {
    for (std::size_t d = 0; d + 1 < dims; ++d) f.b[d] = box.lo[d] + static_cast<double>(idx[d]) * step;
    f.a = box.lo[dims - 1] + static_cast<double>(idx[dims - 1]) * step;
    const double v = objective(f);
    if (v < best.value) {
      best.value = v;
      best.hypothesis = f;
      best.index = idx;
    }
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (++idx[d] < counts[d]) break;
      idx[d] = 0;
      if (d == 0) return best;
    }
  }
}

inline Box square_box(std::size_t n, double bound) {
  return Box{std::vector<double>(n + 1, -bound), std::vector<double>(n + 1, bound)};
}

/// zeta_i = max(0, 1 - y_i f(x_i)) + u_i, u_i ~ noise_scale * U[0, 1).
/// The max term is rounded up so the result is feasible over the exact reals.
inline SlackVector random_feasible_slack(const LinearHypothesis& f, const TrainingSet& t, std::uint64_t seed,
                                         double noise_scale = 1.0) {
  Rng rng(seed);
  SlackVector out;
  for (const auto& c : t) {
    const auto x = c.x.reals();
    double dot = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * f.b[j];
    const double s = c.y * (dot + f.a);
    const double floor_value = s >= 1.0 ? 0.0 : exact::difference_up(1.0, s);
    out.zeta.push_back(floor_value + noise_scale * rng.unit());
  }
  return out;
}

/// Product over features i of the share of training cases with
/// [x]_i = [x0]_i whose label differs from h_label (0.5 when none match).
inline double brute_nb_total(const FeatureVector& x0, const TrainingSet& t, double h_label) {
  double product = 1.0;
  for (std::size_t i = 0; i < x0.dimension(); ++i) {
    const auto& want = std::get<Nominal>(x0[i]).symbol;
    std::size_t matching = 0, disagreeing = 0;
    for (const auto& c : t) {
      if (std::get<Nominal>(c.x[i]).symbol != want) continue;
      ++matching;
      disagreeing += c.y != h_label ? 1 : 0;
    }
    product *= matching == 0 ? 0.5 : static_cast<double>(disagreeing) / static_cast<double>(matching);
  }
  return product;
}

/// Central differences of `objective` in every coordinate of (b, a).
inline LinearHypothesis central_difference(const std::function<double(const LinearHypothesis&)>& objective,
                                           const LinearHypothesis& at, double h) {
  LinearHypothesis g{std::vector<double>(at.b.size(), 0.0), 0.0};
  LinearHypothesis probe = at;
  for (std::size_t j = 0; j < at.b.size(); ++j) {
    probe.b[j] = at.b[j] + h;
    const double up = objective(probe);
    probe.b[j] = at.b[j] - h;
    const double down = objective(probe);
    probe.b[j] = at.b[j];
    g.b[j] = (up - down) / (2.0 * h);
  }
  probe.a = at.a + h;
  const double up = objective(probe);
  probe.a = at.a - h;
  const double down = objective(probe);
  g.a = (up - down) / (2.0 * h);
  return g;
}

// ---------------------------------------------------------------------------
// Randomized SVM equivalence checks

struct SvmTrial {
  LinearHypothesis f;
  TrainingSet training;
  double w = 0.01;
};

/// Everything in a trial derives from its seed, so a reported failing seed
/// reproduces the instance exactly.
inline SvmTrial random_svm_trial(std::uint64_t seed, std::size_t max_n = 3, std::size_t max_m = 20,
                                 double coefficient_bound = 2.0) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  RandomInstance spec;
  spec.seed = seed;
  spec.n = 1 + rng.below(max_n);
  spec.m = 1 + rng.below(max_m);
  spec.labels = LabelScheme::binary_pm1;
  spec.dependence.outlier_fraction = 0.2;
  auto inst = generate_instance(spec);

  LinearHypothesis f{std::vector<double>(spec.n), rng.uniform(-coefficient_bound, coefficient_bound)};
  for (auto& bj : f.b) bj = rng.uniform(-coefficient_bound, coefficient_bound);
  // Occasionally blow the hypothesis up to produce large margin violations.
  if (rng.chance(0.1)) {
    const double scale = std::pow(10.0, rng.uniform(1.0, 3.0));
    for (auto& bj : f.b) bj *= scale;
    f.a *= scale;
  }
  const double w = std::pow(10.0, rng.uniform(-3.0, 1.0));
  return {std::move(f), std::move(inst.training), w};
}

/// Tiny instance for grid comparisons: n <= 2, m <= 6.
inline SvmTrial tiny_svm_trial(std::uint64_t seed) { return random_svm_trial(seed, 2, 6, 3.0); }

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::size_t trials = 0;
  std::optional<std::uint64_t> failing_seed;
  std::string detail;
};

using SlackRule = std::function<SlackVector(const LinearHypothesis&, const NumericData&)>;

inline SlackRule closed_form_slack() {
  return [](const LinearHypothesis& f, const NumericData& d) { return svm_slack(f, d); };
}

inline std::uint64_t trial_seed(std::uint64_t base, std::size_t i) { return base + i; }

namespace detail {

template <class Body>
CheckOutcome run_trials(std::string name, std::uint64_t base_seed, std::size_t trials, Body&& body) {
  CheckOutcome out{std::move(name), true, 0, std::nullopt, {}};
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = trial_seed(base_seed, i);
    ++out.trials;
    std::string why;
    bool ok = false;
    try {
      ok = body(seed, why);
    } catch (const Error& e) {
      why = e.what();
    }
    if (!ok) {
      out.passed = false;
      out.failing_seed = seed;
      out.detail = why;
      return out;
    }
  }
  return out;
}

}  // namespace detail

/// The closed-form slack satisfies the margin constraints in every component.
inline CheckOutcome check_statement1(std::uint64_t seed, std::size_t trials, const SlackRule& rule = closed_form_slack()) {
  return detail::run_trials("closed-form slack is feasible", seed, trials, [&](std::uint64_t s, std::string& why) {
    const auto trial = random_svm_trial(s);
    const auto d = numeric_data(trial.training, trial.f.b.size());
    if (slack_feasible(trial.f, d, rule(trial.f, d))) return true;
    why = "slack violates a margin constraint";
    return false;
  });
}

/// The closed-form slack never exceeds a random feasible slack.
inline CheckOutcome check_statement2(std::uint64_t seed, std::size_t trials, const SlackRule& rule = closed_form_slack()) {
  return detail::run_trials("closed-form slack is minimal", seed, trials, [&](std::uint64_t s, std::string& why) {
    const auto trial = random_svm_trial(s);
    const auto d = numeric_data(trial.training, trial.f.b.size());
    const SlackVector feasible = random_feasible_slack(trial.f, trial.training, s);
    if (!slack_feasible(trial.f, d, feasible)) {
      why = "generated slack is infeasible";
      return false;
    }
    const SlackVector star = rule(trial.f, d);
    for (std::size_t i = 0; i < star.zeta.size(); ++i) {
      if (!(star.zeta[i] <= feasible.zeta[i])) {
        why = "component " + std::to_string(i + 1) + " exceeds a feasible slack";
        return false;
      }
    }
    return true;
  });
}

/// L(f, T, zeta*) == L*(f, T) bit for bit.
inline CheckOutcome check_lemma_identity(std::uint64_t seed, std::size_t trials,
                                         const SlackRule& rule = closed_form_slack()) {
  return detail::run_trials("constrained and unconstrained criteria agree", seed, trials,
                            [&](std::uint64_t s, std::string& why) {
                              const auto trial = random_svm_trial(s);
                              const auto d = numeric_data(trial.training, trial.f.b.size());
                              const SvmParams p{trial.w};
                              const double constrained = svm_criterion(trial.f, d, rule(trial.f, d), p);
                              const double unconstrained = svm_objective(trial.f, d, p);
                              if (constrained == unconstrained) return true;
                              why = format_real(constrained) + " != " + format_real(unconstrained);
                              return false;
                            });
}

/// mu(alpha_i) from the half-space counterparts equals zeta*_i exactly.
inline CheckOutcome check_slack_identity(std::uint64_t seed, std::size_t trials) {
  return detail::run_trials("case inconsistency equals slack", seed, trials, [&](std::uint64_t s, std::string& why) {
    const auto trial = random_svm_trial(s);
    const SlackVector star = svm_slack(trial.f, trial.training);
    for (std::size_t i = 0; i < trial.training.size(); ++i) {
      const double mu = svm_case_inconsistency(trial.training[i], trial.f);
      if (mu != star.zeta[i]) {
        why = "case " + std::to_string(i + 1) + ": " + format_real(mu) + " != " + format_real(star.zeta[i]);
        return false;
      }
    }
    return true;
  });
}

/// On tiny instances both criteria have the same grid minimiser.
inline CheckOutcome check_argmin_agreement(std::uint64_t seed, std::size_t trials, double step, double bound,
                                           const SlackRule& rule = closed_form_slack()) {
  return detail::run_trials("grid minimisers agree", seed, trials, [&](std::uint64_t s, std::string& why) {
    const auto trial = tiny_svm_trial(s);
    const auto d = numeric_data(trial.training, trial.f.b.size());
    const SvmParams p{trial.w};
    const Box box = square_box(trial.f.b.size(), bound);
    const auto unconstrained = grid_search_linear([&](const LinearHypothesis& f) { return svm_objective(f, d, p); },
                                                  box, step);
    const auto constrained = grid_search_linear(
        [&](const LinearHypothesis& f) { return svm_criterion(f, d, rule(f, d), p); }, box, step);
    if (unconstrained.index == constrained.index) return true;
    why = "minimisers differ: " + describe(Hypothesis{unconstrained.hypothesis}) + " vs " +
          describe(Hypothesis{constrained.hypothesis});
    return false;
  });
}

/// The SVM solver's objective is within `slack` of the tiny-instance grid minimum.
inline CheckOutcome check_solver_quality(std::uint64_t seed, std::size_t trials, double step, double bound,
                                         double slack, const SolverConfig& cfg = {}) {
  return detail::run_trials("solver reaches the grid minimum", seed, trials, [&](std::uint64_t s, std::string& why) {
    const auto trial = tiny_svm_trial(s);
    const auto d = numeric_data(trial.training, trial.f.b.size());
    const SvmParams p{trial.w};
    const auto grid = grid_search_linear([&](const LinearHypothesis& f) { return svm_objective(f, d, p); },
                                         square_box(trial.f.b.size(), bound), step);
    const auto solved = svm_solve(trial.training, p, cfg);
    if (solved.report.total <= grid.value + slack) return true;
    why = "solver " + format_real(solved.report.total) + " vs grid " + format_real(grid.value);
    return false;
  });
}

/// The checks behind `verify`: feasibility, minimality, the pointwise
/// criterion identity and tiny-instance argmin agreement.
inline std::vector<CheckOutcome> run_equivalence_checks(std::uint64_t seed, std::size_t trials,
                                                        const CheckBudget& budget = {},
                                                        const SlackRule& rule = closed_form_slack()) {
  const std::size_t tiny = std::min(trials, budget.tiny_trials);
  return {check_statement1(seed, trials, rule), check_statement2(seed, trials, rule),
          check_lemma_identity(seed, trials, rule),
          check_argmin_agreement(seed, tiny, budget.tiny_grid_step, budget.tiny_grid_bound, rule)};
}

}  // namespace plearn::oracle

#endif  // PLEARN_ORACLE_HPP
