#ifndef PLEARN_LINEAR_HPP
#define PLEARN_LINEAR_HPP

// Linear SVM through its unconstrained hinge reformulation, epsilon-insensitive
// support vector regression, and the subgradient solver shared by both.
//
// Slack values are rounded toward +inf (see exact.hpp) so that the closed-form
// slack is feasible and minimal over the exact reals, not just approximately.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "plearn/core.hpp"
#include "plearn/exact.hpp"

namespace plearn {

struct SvmParams {
  double w = 0.01;
  void validate() const {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::invalid_parameter, "w must be positive");
  }
};

struct SvrParams {
  double epsilon = 0.0;
  double lambda = 0.0;
  void validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw Error(ErrorCode::invalid_parameter, "epsilon must be non-negative");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorCode::invalid_parameter, "lambda must be non-negative");
    }
  }
};

struct SolverConfig {
  double eta0 = 0.1;
  double decay = 0.01;
  double tol = 1e-8;
  std::size_t max_iters = 50000;

  void validate() const {
    if (!(eta0 > 0.0)) throw Error(ErrorCode::invalid_parameter, "eta0 must be positive");
    if (!(decay >= 0.0)) throw Error(ErrorCode::invalid_parameter, "decay must be non-negative");
    if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_parameter, "tol must be non-negative");
    if (max_iters == 0) throw Error(ErrorCode::invalid_parameter, "max_iters must be positive");
  }
};

struct SlackVector {
  std::vector<double> zeta;
  bool operator==(const SlackVector&) const = default;
};

/// z(f, y) = {x : y f(x) >= 1}.
struct HalfSpace {
  LinearHypothesis f;
  double y = 1.0;

  bool contains(std::span<const double> x) const { return y * f(x) >= 1.0; }
};

// ---------------------------------------------------------------------------
// Shared building blocks

/// Real-valued copy of a training set, prepared once for repeated evaluation.
struct NumericData {
  std::vector<std::vector<double>> x;
  std::vector<double> y;

  std::size_t size() const noexcept { return y.size(); }
};

inline NumericData numeric_data(const TrainingSet& t, std::size_t n) {
  if (t.dimension() != n) {
    throw Error(ErrorCode::dimension_mismatch, "data of dimension " + std::to_string(t.dimension()) +
                                                   " for a hypothesis of dimension " + std::to_string(n));
  }
  NumericData d;
  d.x.reserve(t.size());
  d.y.reserve(t.size());
  for (const auto& c : t) {
    d.x.push_back(c.x.reals());
    d.y.push_back(c.y);
  }
  return d;
}

namespace detail {

/// max(0, 1 - s), rounded up.
inline double hinge_slack(double signed_margin) noexcept {
  return signed_margin >= 1.0 ? 0.0 : exact::difference_up(1.0, signed_margin);
}

inline double svm_objective_dense(const LinearHypothesis& f, const NumericData& d, double w);
inline double svr_objective_dense(const LinearHypothesis& f, const NumericData& d, const SvrParams& p);

}  // namespace detail

/// a(f) = ||[f]_1||^2; the intercept is not regularised.
inline double regularizer(const LinearHypothesis& f) noexcept {
  double s = 0.0;
  for (double bj : f.b) s += bj * bj;
  return s;
}

/// rho(x, z(f, y)) = |y f(x) - 1|, rounded up.
inline double margin_distance(const FeatureVector& x, const HalfSpace& hs) {
  const double s = hs.y * hs.f(x.reals());
  return s >= 1.0 ? exact::difference_up(s, 1.0) : exact::difference_up(1.0, s);
}

// ---------------------------------------------------------------------------
// Linear SVM

/// zeta*_i = 0 if y_i f(x_i) >= 1, else 1 - y_i f(x_i).
inline SlackVector svm_slack(const LinearHypothesis& f, const NumericData& d) {
  SlackVector out;
  out.zeta.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.zeta.push_back(detail::hinge_slack(d.y[i] * f(d.x[i])));
  return out;
}

inline SlackVector svm_slack(const LinearHypothesis& f, const TrainingSet& t) {
  return svm_slack(f, numeric_data(t, f.b.size()));
}

/// mu(alpha_i): zero when x_i lies in z(f, y_i), which makes alpha_i one of
/// its own counterparts; the distance to the bounding hyperplane otherwise.
inline double svm_case_inconsistency(const Case& alpha, const LinearHypothesis& f) {
  const HalfSpace hs{f, alpha.y};
  const auto x = alpha.x.reals();
  if (x.size() != f.b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "case of dimension " + std::to_string(x.size()) +
                                                   " for a hypothesis of dimension " + std::to_string(f.b.size()));
  }
  if (hs.contains(x)) return 0.0;
  return margin_distance(alpha.x, hs);
}

/// Margin constraints over the exact reals: y_i f(x_i) >= 1 - zeta_i and zeta_i >= 0.
inline bool slack_feasible(const LinearHypothesis& f, const NumericData& d, const SlackVector& zeta) {
  if (zeta.zeta.size() != d.size()) {
    throw Error(ErrorCode::dimension_mismatch, std::to_string(zeta.zeta.size()) + " slacks for " +
                                                   std::to_string(d.size()) + " cases");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double z = zeta.zeta[i];
    if (!(z >= 0.0)) return false;
    if (!exact::sum_at_least(d.y[i] * f(d.x[i]), z, 1.0)) return false;
  }
  return true;
}

inline bool slack_feasible(const LinearHypothesis& f, const TrainingSet& t, const SlackVector& zeta) {
  return slack_feasible(f, numeric_data(t, f.b.size()), zeta);
}

/// Constrained criterion L(f, T, zeta) = w ||b||^2 + (1/m) sum zeta_i for a feasible zeta.
inline double svm_criterion(const LinearHypothesis& f, const NumericData& d, const SlackVector& zeta,
                            const SvmParams& p) {
  p.validate();
  if (!slack_feasible(f, d, zeta)) throw Error(ErrorCode::infeasible_slack, "slack violates the margin constraints");
  double s = 0.0;
  for (double z : zeta.zeta) s += z;
  const double penalty = p.w * regularizer(f);
  return penalty + s / static_cast<double>(zeta.zeta.size());
}

inline double svm_criterion(const LinearHypothesis& f, const TrainingSet& t, const SlackVector& zeta,
                            const SvmParams& p) {
  require_feedback(t, FeedbackDomain::binary_pm1);
  return svm_criterion(f, numeric_data(t, f.b.size()), zeta, p);
}

/// Unconstrained criterion L*(f, T) = w ||b||^2 + (1/m) sum zeta*_i.
inline double svm_objective(const LinearHypothesis& f, const NumericData& d, const SvmParams& p) {
  p.validate();
  return detail::svm_objective_dense(f, d, p.w);
}

inline double svm_objective(const LinearHypothesis& f, const TrainingSet& t, const SvmParams& p) {
  require_feedback(t, FeedbackDomain::binary_pm1);
  return svm_objective(f, numeric_data(t, f.b.size()), p);
}

inline InconsistencyReport svm_report(const LinearHypothesis& f, const TrainingSet& t, const SvmParams& p) {
  p.validate();
  require_feedback(t, FeedbackDomain::binary_pm1);
  std::vector<ReportEntry> entries;
  entries.reserve(t.size());
  for (const auto& c : t) {
    entries.push_back({c, Provenance::from_training, Provenance::from_hypothesis, svm_case_inconsistency(c, f),
                       std::nullopt});
  }
  return make_report(describe(Hypothesis{f}), Aggregation::mean_plus_penalty, p.w * regularizer(f),
                     std::move(entries));
}

/// The closed-form slack satisfies the margin constraints.
inline bool svm_verify_statement1(const LinearHypothesis& f, const TrainingSet& t) {
  require_feedback(t, FeedbackDomain::binary_pm1);
  return slack_feasible(f, t, svm_slack(f, t));
}

/// The closed-form slack is componentwise no larger than a feasible one.
inline bool svm_verify_statement2(const LinearHypothesis& f, const TrainingSet& t, const SlackVector& zeta) {
  require_feedback(t, FeedbackDomain::binary_pm1);
  if (!slack_feasible(f, t, zeta)) throw Error(ErrorCode::infeasible_slack, "supplied slack is not feasible");
  const SlackVector star = svm_slack(f, t);
  for (std::size_t i = 0; i < star.zeta.size(); ++i) {
    if (!(star.zeta[i] <= zeta.zeta[i])) return false;
  }
  return true;
}

/// L(f, T, zeta*) and L*(f, T) agree bit for bit.
inline bool svm_verify_lemma1(const LinearHypothesis& f, const TrainingSet& t, const SvmParams& p) {
  return svm_criterion(f, t, svm_slack(f, t), p) == svm_objective(f, t, p);
}

/// Subgradient of L*: 2 w b - (1/m) sum over active cases of y_i (x_i, 1).
/// A case exactly on the margin counts as inactive.
inline LinearHypothesis svm_subgradient(const LinearHypothesis& f, const TrainingSet& t, const SvmParams& p);

// ---------------------------------------------------------------------------
// SV regression

/// 0 inside the tube |r| < epsilon, |r| - epsilon outside.
inline double v_epsilon(double r, double epsilon) noexcept {
  const double mag = std::abs(r);
  return mag < epsilon ? 0.0 : mag - epsilon;
}

/// mu(beta_i) = V_eps(|y_i - f(x_i)|); the counterpart is <x_i, f(x_i)>.
inline double svr_case_inconsistency(const Case& beta, const LinearHypothesis& f, const SvrParams& p) {
  return v_epsilon(std::abs(beta.y - evaluate(Hypothesis{f}, beta.x)), p.epsilon);
}

/// L_svr = sum V_eps(y_i - f(x_i)) + lambda ||b||^2 (not divided by m).
inline double svr_objective(const LinearHypothesis& f, const NumericData& d, const SvrParams& p) {
  p.validate();
  return detail::svr_objective_dense(f, d, p);
}

inline double svr_objective(const LinearHypothesis& f, const TrainingSet& t, const SvrParams& p) {
  return svr_objective(f, numeric_data(t, f.b.size()), p);
}

inline InconsistencyReport svr_report(const LinearHypothesis& f, const TrainingSet& t, const SvrParams& p) {
  p.validate();
  std::vector<ReportEntry> entries;
  entries.reserve(t.size());
  for (const auto& c : t) {
    entries.push_back({c, Provenance::from_training, Provenance::from_hypothesis, svr_case_inconsistency(c, f, p), 1});
  }
  return make_report(describe(Hypothesis{f}), Aggregation::sum_plus_penalty, p.lambda * regularizer(f),
                     std::move(entries));
}

/// Subgradient of L_svr; zero at the tube boundary.
inline LinearHypothesis svr_subgradient(const LinearHypothesis& f, const TrainingSet& t, const SvrParams& p);

// ---------------------------------------------------------------------------
// Dense kernels and the solver

namespace detail {

inline double svm_objective_dense(const LinearHypothesis& f, const NumericData& d, double w) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.y.size(); ++i) s += hinge_slack(d.y[i] * f(d.x[i]));
  const double penalty = w * regularizer(f);
  return penalty + s / static_cast<double>(d.y.size());
}

inline double svr_objective_dense(const LinearHypothesis& f, const NumericData& d, const SvrParams& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.y.size(); ++i) s += v_epsilon(d.y[i] - f(d.x[i]), p.epsilon);
  return s + p.lambda * regularizer(f);
}

inline void svm_subgradient_dense(const LinearHypothesis& f, const NumericData& d, double w, LinearHypothesis& g) {
  const std::size_t n = f.b.size();
  g.b.assign(n, 0.0);
  g.a = 0.0;
  const double inv_m = 1.0 / static_cast<double>(d.y.size());
  for (std::size_t i = 0; i < d.y.size(); ++i) {
    if (d.y[i] * f(d.x[i]) >= 1.0) continue;
    for (std::size_t j = 0; j < n; ++j) g.b[j] -= d.y[i] * d.x[i][j];
    g.a -= d.y[i];
  }
  for (std::size_t j = 0; j < n; ++j) g.b[j] = g.b[j] * inv_m + 2.0 * w * f.b[j];
  g.a *= inv_m;
}

inline void svr_subgradient_dense(const LinearHypothesis& f, const NumericData& d, const SvrParams& p,
                                  LinearHypothesis& g) {
  const std::size_t n = f.b.size();
  g.b.assign(n, 0.0);
  g.a = 0.0;
  for (std::size_t i = 0; i < d.y.size(); ++i) {
    const double r = d.y[i] - f(d.x[i]);
    if (std::abs(r) <= p.epsilon) continue;
    // d/df of |r| - eps is -sign(r).
    const double dr = r > 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) g.b[j] += dr * d.x[i][j];
    g.a += dr;
  }
  for (std::size_t j = 0; j < n; ++j) g.b[j] += 2.0 * p.lambda * f.b[j];
}

struct Descent {
  LinearHypothesis best;
  std::vector<double> best_trace;
  std::size_t epochs = 0;
  bool converged = false;
};

/// Full-batch subgradient descent from f = 0. Each epoch (one pass over the
/// cases in training order) moves a distance eta0 / (1 + t decay) along the
/// normalised subgradient. Stops once the objective moves by less than tol
/// over an epoch, or at a zero subgradient; returns the best iterate.
template <class Objective, class Subgradient>
Descent subgradient_descent(std::size_t n, const SolverConfig& cfg, Objective&& objective, Subgradient&& subgradient) {
  cfg.validate();
  Descent out;
  LinearHypothesis f{std::vector<double>(n, 0.0), 0.0};
  LinearHypothesis g;
  double current = objective(f);
  double best_value = current;
  out.best = f;
  out.best_trace.reserve(cfg.max_iters);
  for (std::size_t t = 0; t < cfg.max_iters; ++t) {
    subgradient(f, g);
    double norm = g.a * g.a;
    for (double gj : g.b) norm += gj * gj;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      out.converged = true;
      break;
    }
    const double eta = cfg.eta0 / (1.0 + static_cast<double>(t) * cfg.decay) / norm;
    for (std::size_t j = 0; j < n; ++j) f.b[j] -= eta * g.b[j];
    f.a -= eta * g.a;
    const double next = objective(f);
    if (!std::isfinite(next)) {
      throw Error(ErrorCode::solver_diverged, "objective became " + format_real(next) + " at epoch " +
                                                  std::to_string(t + 1) + "; lower eta0");
    }
    if (next < best_value) {
      best_value = next;
      out.best = f;
    }
    out.best_trace.push_back(best_value);
    out.epochs = t + 1;
    if (std::abs(current - next) < cfg.tol) {
      out.converged = true;
      break;
    }
    current = next;
  }
  return out;
}

}  // namespace detail

inline LinearHypothesis svm_subgradient(const LinearHypothesis& f, const TrainingSet& t, const SvmParams& p) {
  p.validate();
  require_feedback(t, FeedbackDomain::binary_pm1);
  LinearHypothesis g;
  detail::svm_subgradient_dense(f, numeric_data(t, f.b.size()), p.w, g);
  return g;
}

inline LinearHypothesis svr_subgradient(const LinearHypothesis& f, const TrainingSet& t, const SvrParams& p) {
  p.validate();
  LinearHypothesis g;
  detail::svr_subgradient_dense(f, numeric_data(t, f.b.size()), p, g);
  return g;
}

struct SolverResult {
  LinearHypothesis hypothesis;
  InconsistencyReport report;
  /// Best objective seen after each epoch.
  std::vector<double> best_trace;
  std::size_t epochs = 0;
  bool converged = false;
};

inline SolverResult svm_solve(const TrainingSet& t, const SvmParams& p, const SolverConfig& cfg = {}) {
  p.validate();
  require_feedback(t, FeedbackDomain::binary_pm1);
  const auto d = numeric_data(t, t.dimension());
  auto run = detail::subgradient_descent(
      t.dimension(), cfg, [&](const LinearHypothesis& f) { return detail::svm_objective_dense(f, d, p.w); },
      [&](const LinearHypothesis& f, LinearHypothesis& g) { detail::svm_subgradient_dense(f, d, p.w, g); });
  SolverResult out{run.best, svm_report(run.best, t, p), std::move(run.best_trace), run.epochs, run.converged};
  return out;
}

inline SolverResult svr_solve(const TrainingSet& t, const SvrParams& p, const SolverConfig& cfg = {}) {
  p.validate();
  const auto d = numeric_data(t, t.dimension());
  auto run = detail::subgradient_descent(
      t.dimension(), cfg, [&](const LinearHypothesis& f) { return detail::svr_objective_dense(f, d, p); },
      [&](const LinearHypothesis& f, LinearHypothesis& g) { detail::svr_subgradient_dense(f, d, p, g); });
  SolverResult out{run.best, svr_report(run.best, t, p), std::move(run.best_trace), run.epochs, run.converged};
  return out;
}

// ---------------------------------------------------------------------------
// Learner contracts

inline SolverConfig solver_config_from(const ProblemStatement& p) {
  SolverConfig cfg;
  cfg.eta0 = p.number_or("eta0", cfg.eta0);
  cfg.decay = p.number_or("decay", cfg.decay);
  cfg.tol = p.number_or("tol", cfg.tol);
  if (p.has("max_iters")) cfg.max_iters = positive_count(p.number("max_iters"), "max_iters");
  return cfg;
}

struct SvmLearner {
  Family family() const { return Family::svm; }
  Selection minimize(const ProblemStatement& p, const TrainingSet& t) const {
    auto r = svm_solve(t, SvmParams{p.number("w")}, solver_config_from(p));
    return {std::move(r.hypothesis), std::move(r.report)};
  }
};

struct SvrLearner {
  Family family() const { return Family::svr; }
  Selection minimize(const ProblemStatement& p, const TrainingSet& t) const {
    auto r = svr_solve(t, SvrParams{p.number("epsilon"), p.number("lambda")}, solver_config_from(p));
    return {std::move(r.hypothesis), std::move(r.report)};
  }
};

/// Least absolute deviation: L_svr with epsilon = 0 and lambda = 0 is exactly
/// the ERM total inconsistency.
struct ErmLearner {
  Family family() const { return Family::erm; }
  Selection minimize(const ProblemStatement& p, const TrainingSet& t) const {
    auto r = svr_solve(t, SvrParams{0.0, 0.0}, solver_config_from(p));
    return {Hypothesis{r.hypothesis}, erm_report(Hypothesis{r.hypothesis}, t)};
  }
};

}  // namespace plearn

#endif  // PLEARN_LINEAR_HPP
