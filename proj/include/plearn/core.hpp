#ifndef PLEARN_CORE_HPP
#define PLEARN_CORE_HPP

// Domain vocabulary shared by every learner: feature values, cases, training
// sets, hypotheses, counterpart sets and inconsistency reports, plus the
// learner contract and the argmin procedure that drives it.

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "plearn/error.hpp"

namespace plearn {

// ---------------------------------------------------------------------------
// Feature values

struct Numeric {
  double value = 0.0;
  auto operator<=>(const Numeric&) const = default;
};

/// Rank within a declared, finite, ordered value set.
struct Ordinal {
  std::size_t rank = 0;
  auto operator<=>(const Ordinal&) const = default;
};

/// Symbol drawn from a declared, finite, unordered value set.
struct Nominal {
  std::string symbol;
  auto operator<=>(const Nominal&) const = default;
};

using FeatureValue = std::variant<Numeric, Ordinal, Nominal>;

enum class FeatureKind { numeric, ordinal, nominal };

inline FeatureKind kind_of(const FeatureValue& v) noexcept {
  return static_cast<FeatureKind>(v.index());
}

constexpr std::string_view to_string(FeatureKind k) noexcept {
  switch (k) {
    case FeatureKind::numeric: return "numeric";
    case FeatureKind::ordinal: return "ordinal";
    case FeatureKind::nominal: return "nominal";
  }
  return "?";
}

class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<FeatureValue> values) : values_(std::move(values)) {}

  static FeatureVector numeric(std::initializer_list<double> xs) {
    return numeric(std::span<const double>(xs.begin(), xs.size()));
  }
  static FeatureVector numeric(std::span<const double> xs) {
    std::vector<FeatureValue> values;
    values.reserve(xs.size());
    for (double x : xs) values.emplace_back(Numeric{x});
    return FeatureVector(std::move(values));
  }
  static FeatureVector ordinal(std::initializer_list<std::size_t> ranks) {
    std::vector<FeatureValue> values;
    for (auto r : ranks) values.emplace_back(Ordinal{r});
    return FeatureVector(std::move(values));
  }
  static FeatureVector nominal(std::initializer_list<std::string_view> symbols) {
    std::vector<FeatureValue> values;
    for (auto s : symbols) values.emplace_back(Nominal{std::string(s)});
    return FeatureVector(std::move(values));
  }

  std::size_t dimension() const noexcept { return values_.size(); }
  const std::vector<FeatureValue>& values() const noexcept { return values_; }

  /// Zero-based access.
  const FeatureValue& operator[](std::size_t i) const { return values_[i]; }

  /// One-based access, matching the [x]_i component notation.
  const FeatureValue& component(std::size_t i) const {
    if (i == 0 || i > values_.size()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "component " + std::to_string(i) + " of a " + std::to_string(values_.size()) +
                      "-dimensional vector");
    }
    return values_[i - 1];
  }

  /// Metric coordinate of position i: the numeric value or the ordinal rank.
  double coordinate(std::size_t i) const {
    const auto& v = values_.at(i);
    if (const auto* num = std::get_if<Numeric>(&v)) return num->value;
    if (const auto* ord = std::get_if<Ordinal>(&v)) return static_cast<double>(ord->rank);
    throw Error(ErrorCode::schema_mismatch,
                "nominal feature at position " + std::to_string(i + 1) + " has no coordinate");
  }

  /// Real vector for linear hypotheses; every component must be numeric.
  std::vector<double> reals() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const auto* num = std::get_if<Numeric>(&values_[i]);
      if (num == nullptr) {
        throw Error(ErrorCode::schema_mismatch,
                    "feature " + std::to_string(i + 1) + " is " +
                        std::string(to_string(kind_of(values_[i]))) + ", expected numeric");
      }
      out.push_back(num->value);
    }
    return out;
  }

  bool operator==(const FeatureVector&) const = default;
  bool operator<(const FeatureVector& other) const { return values_ < other.values_; }

 private:
  std::vector<FeatureValue> values_;
};

inline std::string describe(const FeatureVector& x);

// ---------------------------------------------------------------------------
// Cases and training sets

struct Case {
  FeatureVector x;
  double y = 0.0;

  bool operator==(const Case&) const = default;
};

struct ColumnSpec {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  /// Ordered labels for ordinal columns, symbol set C^i for nominal ones.
  std::vector<std::string> values;

  bool operator==(const ColumnSpec&) const = default;
};

struct FeatureSchema {
  std::vector<ColumnSpec> columns;

  std::size_t dimension() const noexcept { return columns.size(); }
  bool operator==(const FeatureSchema&) const = default;

  /// Throws SchemaMismatch unless x conforms: kind per position, ordinal rank
  /// in range, nominal symbol in its declared set.
  void check(const FeatureVector& x) const {
    if (x.dimension() != columns.size()) {
      throw Error(ErrorCode::schema_mismatch, "vector of dimension " + std::to_string(x.dimension()) +
                                                  " against schema of dimension " +
                                                  std::to_string(columns.size()));
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto& col = columns[i];
      if (kind_of(x[i]) != col.kind) {
        throw Error(ErrorCode::schema_mismatch, "feature " + std::to_string(i + 1) + " is " +
                                                    std::string(to_string(kind_of(x[i]))) +
                                                    ", schema declares " +
                                                    std::string(to_string(col.kind)));
      }
      if (col.values.empty()) continue;
      if (const auto* ord = std::get_if<Ordinal>(&x[i]); ord && ord->rank >= col.values.size()) {
        throw Error(ErrorCode::schema_mismatch, "ordinal rank " + std::to_string(ord->rank) +
                                                    " outside declared set of size " +
                                                    std::to_string(col.values.size()));
      }
      if (const auto* nom = std::get_if<Nominal>(&x[i])) {
        if (std::find(col.values.begin(), col.values.end(), nom->symbol) == col.values.end()) {
          throw Error(ErrorCode::schema_mismatch,
                      "symbol '" + nom->symbol + "' not declared for feature " + std::to_string(i + 1));
        }
      }
    }
  }

  /// Throws NonDisjointValueSets if two nominal columns share a symbol.
  void check_disjoint_nominals() const {
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i].kind != FeatureKind::nominal) continue;
      for (const auto& s : columns[i].values) {
        auto [it, inserted] = owner.emplace(s, i);
        if (!inserted && it->second != i) {
          throw Error(ErrorCode::non_disjoint_value_sets,
                      "symbol '" + s + "' declared for features " + std::to_string(it->second + 1) +
                          " and " + std::to_string(i + 1));
        }
      }
    }
  }
};

/// Finite, non-empty collection of observations with pairwise distinct
/// feature vectors. Only constructible through validate_training_set.
class TrainingSet {
 public:
  std::size_t size() const noexcept { return cases_.size(); }
  std::size_t dimension() const noexcept { return cases_.front().x.dimension(); }
  const Case& operator[](std::size_t i) const { return cases_[i]; }
  const std::vector<Case>& cases() const noexcept { return cases_; }
  auto begin() const noexcept { return cases_.begin(); }
  auto end() const noexcept { return cases_.end(); }
  const std::optional<FeatureSchema>& schema() const noexcept { return schema_; }
  FeatureKind kind(std::size_t i) const { return kind_of(cases_.front().x[i]); }

  bool operator==(const TrainingSet&) const = default;

 private:
  friend TrainingSet validate_training_set(std::vector<Case>, std::optional<FeatureSchema>);
  std::vector<Case> cases_;
  std::optional<FeatureSchema> schema_;
};

inline TrainingSet validate_training_set(std::vector<Case> cases,
                                         std::optional<FeatureSchema> schema = std::nullopt) {
  if (cases.empty()) throw Error(ErrorCode::empty_set, "training set has no cases");
  const auto& first = cases.front().x;
  std::map<FeatureVector, std::size_t> seen;
  for (std::size_t r = 0; r < cases.size(); ++r) {
    const auto& x = cases[r].x;
    if (x.dimension() != first.dimension()) {
      throw Error(ErrorCode::schema_mismatch, "case " + std::to_string(r + 1) + " has dimension " +
                                                  std::to_string(x.dimension()) + ", expected " +
                                                  std::to_string(first.dimension()));
    }
    for (std::size_t i = 0; i < x.dimension(); ++i) {
      if (kind_of(x[i]) != kind_of(first[i])) {
        throw Error(ErrorCode::schema_mismatch, "case " + std::to_string(r + 1) + " feature " +
                                                    std::to_string(i + 1) + " changes kind");
      }
      if (const auto* num = std::get_if<Numeric>(&x[i]); num && !std::isfinite(num->value)) {
        throw Error(ErrorCode::schema_mismatch, "case " + std::to_string(r + 1) + " feature " +
                                                    std::to_string(i + 1) + " is not finite");
      }
    }
    if (!std::isfinite(cases[r].y)) {
      throw Error(ErrorCode::schema_mismatch, "case " + std::to_string(r + 1) + " feedback is not finite");
    }
    if (schema) schema->check(x);
    auto [it, inserted] = seen.emplace(x, r);
    if (!inserted) {
      throw Error(ErrorCode::duplicate_feature_vector,
                  "cases " + std::to_string(it->second + 1) + " and " + std::to_string(r + 1) +
                      " share feature vector " + describe(x));
    }
  }
  TrainingSet t;
  t.cases_ = std::move(cases);
  t.schema_ = std::move(schema);
  return t;
}

// ---------------------------------------------------------------------------
// Feedback encodings

enum class FeedbackDomain { real, binary01, binary_pm1 };

inline void require_feedback(const TrainingSet& t, FeedbackDomain domain) {
  if (domain == FeedbackDomain::real) return;
  const double lo = domain == FeedbackDomain::binary01 ? 0.0 : -1.0;
  for (std::size_t r = 0; r < t.size(); ++r) {
    const double y = t[r].y;
    if (y != lo && y != 1.0) {
      throw Error(ErrorCode::schema_mismatch,
                  "case " + std::to_string(r + 1) + " label " + std::to_string(y) + " is not in {" +
                      (domain == FeedbackDomain::binary01 ? "0, 1" : "-1, 1") + "}");
    }
  }
}

/// Re-encodes binary labels between {0,1} and {-1,1}. Never applied implicitly.
inline TrainingSet reencode(const TrainingSet& t, FeedbackDomain from, FeedbackDomain to) {
  require_feedback(t, from);
  if (from == to || from == FeedbackDomain::real || to == FeedbackDomain::real) {
    if (from != to) throw Error(ErrorCode::invalid_parameter, "only binary encodings can be converted");
    return t;
  }
  std::vector<Case> out = t.cases();
  for (auto& c : out) {
    if (to == FeedbackDomain::binary_pm1) c.y = c.y == 1.0 ? 1.0 : -1.0;
    else c.y = c.y == 1.0 ? 1.0 : 0.0;
  }
  return validate_training_set(std::move(out), t.schema());
}

// ---------------------------------------------------------------------------
// Hypotheses

/// Defined only at x0.
struct PointwiseHypothesis {
  FeatureVector x0;
  double value = 0.0;
  bool operator==(const PointwiseHypothesis&) const = default;
};

/// f(x) = x^T b + a, with [f]_1 = b and [f]_2 = a.
struct LinearHypothesis {
  std::vector<double> b;
  double a = 0.0;

  double operator()(std::span<const double> x) const {
    if (x.size() != b.size()) {
      throw Error(ErrorCode::dimension_mismatch, "point of dimension " + std::to_string(x.size()) +
                                                     " for hypothesis of dimension " +
                                                     std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) s += x[j] * b[j];
    return s + a;
  }

  bool operator==(const LinearHypothesis&) const = default;
};

using Hypothesis = std::variant<PointwiseHypothesis, LinearHypothesis>;

inline double evaluate(const Hypothesis& f, const FeatureVector& x) {
  if (const auto* p = std::get_if<PointwiseHypothesis>(&f)) {
    if (!(x == p->x0)) {
      throw Error(ErrorCode::undefined_at, "pointwise hypothesis defined at " + describe(p->x0) +
                                               " queried at " + describe(x));
    }
    return p->value;
  }
  const auto& lin = std::get<LinearHypothesis>(f);
  if (x.dimension() != lin.b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "point of dimension " + std::to_string(x.dimension()) +
                                                   " for hypothesis of dimension " +
                                                   std::to_string(lin.b.size()));
  }
  return lin(x.reals());
}

inline std::string describe(const Hypothesis& f);

/// Finite slice of the hypothetical cases <x, f(x)> at the requested points.
inline std::vector<Case> hypothetical_cases(const Hypothesis& f, std::span<const FeatureVector> points) {
  std::vector<Case> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(Case{x, evaluate(f, x)});
  return out;
}

/// T united with the hypothetical cases at `points`; exact duplicates dropped,
/// training cases first.
inline std::vector<Case> merged_cases(const Hypothesis& f, const TrainingSet& t,
                                      std::span<const FeatureVector> points) {
  std::vector<Case> out = t.cases();
  for (auto& c : hypothetical_cases(f, points)) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counterparts and inconsistency reports

enum class Provenance { from_training, from_hypothesis };

constexpr Provenance opposite(Provenance p) noexcept {
  return p == Provenance::from_training ? Provenance::from_hypothesis : Provenance::from_training;
}

struct CounterpartSet {
  std::vector<Case> members;
  Provenance provenance = Provenance::from_training;
};

enum class Aggregation {
  sum,                // sum of mu
  product,            // product of mu
  mean_plus_penalty,  // penalty + (sum of mu) / m
  sum_plus_penalty,   // (sum of mu) + penalty
};

constexpr std::string_view to_string(Aggregation a) noexcept {
  switch (a) {
    case Aggregation::sum: return "sum";
    case Aggregation::product: return "product";
    case Aggregation::mean_plus_penalty: return "mean_plus_penalty";
    case Aggregation::sum_plus_penalty: return "sum_plus_penalty";
  }
  return "?";
}

struct ReportEntry {
  Case baseline;
  Provenance baseline_source = Provenance::from_training;
  Provenance counterpart_source = Provenance::from_hypothesis;
  double mu = 0.0;
  /// Number of counterparts; empty when the counterpart set is a half-space.
  std::optional<std::size_t> counterparts;
};

/// Folds mu values in entry order.
inline double aggregate(std::span<const ReportEntry> entries, Aggregation how, double penalty = 0.0) {
  if (how == Aggregation::product) {
    double p = 1.0;
    for (const auto& e : entries) p *= e.mu;
    return p;
  }
  double s = 0.0;
  for (const auto& e : entries) s += e.mu;
  switch (how) {
    case Aggregation::mean_plus_penalty: return penalty + s / static_cast<double>(entries.size());
    case Aggregation::sum_plus_penalty: return s + penalty;
    default: return s;
  }
}

struct InconsistencyReport {
  std::string hypothesis;
  Aggregation aggregation = Aggregation::sum;
  /// Hypothesis-only term (regularizer) for the penalised aggregations.
  double penalty = 0.0;
  std::vector<ReportEntry> entries;
  double total = 0.0;
};

inline InconsistencyReport make_report(std::string hypothesis, Aggregation how, double penalty,
                                       std::vector<ReportEntry> entries) {
  InconsistencyReport r;
  r.hypothesis = std::move(hypothesis);
  r.aggregation = how;
  r.penalty = penalty;
  r.entries = std::move(entries);
  r.total = aggregate(r.entries, how, penalty);
  return r;
}

// ---------------------------------------------------------------------------
// Problem statement

enum class Family { erm, smoothing, knn, dtree, nb, svm, svr };

constexpr std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::erm: return "erm";
    case Family::smoothing: return "smoothing";
    case Family::knn: return "knn";
    case Family::dtree: return "dtree";
    case Family::nb: return "nb";
    case Family::svm: return "svm";
    case Family::svr: return "svr";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (auto f : {Family::erm, Family::smoothing, Family::knn, Family::dtree, Family::nb, Family::svm,
                 Family::svr}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::invalid_parameter, "unknown learner family '" + std::string(name) + "'");
}

inline std::size_t positive_count(double v, std::string_view name) {
  if (!(v >= 1.0 && v <= 1e15) || v != std::floor(v)) {
    throw Error(ErrorCode::invalid_parameter, std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

using ParamValue = std::variant<double, FeatureVector, std::string>;
using ParamMap = std::map<std::string, ParamValue, std::less<>>;

struct ParamRule {
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
};

inline ParamRule param_rule(Family f) {
  static const std::vector<std::string_view> solver = {"eta0", "decay", "tol", "max_iters"};
  auto with_solver = [&](std::vector<std::string_view> opt) {
    opt.insert(opt.end(), solver.begin(), solver.end());
    return opt;
  };
  switch (f) {
    case Family::erm: return {{}, with_solver({})};
    case Family::smoothing: return {{"x0"}, {"k", "radius", "metric"}};
    case Family::knn: return {{"x0", "k"}, {"metric"}};
    case Family::dtree: return {{"x0"}, {"max_depth", "min_leaf", "purity"}};
    case Family::nb: return {{"x0"}, {}};
    case Family::svm: return {{"w"}, with_solver({})};
    case Family::svr: return {{"epsilon", "lambda"}, with_solver({})};
  }
  return {};
}

inline FeedbackDomain feedback_domain(Family f) noexcept {
  switch (f) {
    case Family::knn:
    case Family::dtree:
    case Family::nb: return FeedbackDomain::binary01;
    case Family::svm: return FeedbackDomain::binary_pm1;
    default: return FeedbackDomain::real;
  }
}

/// The tuple {X, Y, F, v}.
class ProblemStatement {
 public:
  ProblemStatement(Family family, std::optional<FeatureSchema> x_schema, FeedbackDomain y_schema, ParamMap v)
      : family_(family), x_schema_(std::move(x_schema)), y_schema_(y_schema), v_(std::move(v)) {
    const auto rule = param_rule(family_);
    for (auto name : rule.required) {
      if (!v_.contains(name)) {
        throw Error(ErrorCode::invalid_parameter,
                    std::string(to_string(family_)) + " requires parameter '" + std::string(name) + "'");
      }
    }
    for (const auto& [name, _] : v_) {
      const bool known = std::find(rule.required.begin(), rule.required.end(), name) != rule.required.end() ||
                         std::find(rule.optional.begin(), rule.optional.end(), name) != rule.optional.end();
      if (!known) {
        throw Error(ErrorCode::invalid_parameter, "parameter '" + name + "' is not accepted by " +
                                                      std::string(to_string(family_)));
      }
    }
  }

  ProblemStatement(Family family, ParamMap v)
      : ProblemStatement(family, std::nullopt, feedback_domain(family), std::move(v)) {}

  Family family() const noexcept { return family_; }
  const std::optional<FeatureSchema>& x_schema() const noexcept { return x_schema_; }
  FeedbackDomain y_schema() const noexcept { return y_schema_; }
  const ParamMap& params() const noexcept { return v_; }
  bool has(std::string_view name) const { return v_.find(name) != v_.end(); }

  double number(std::string_view name) const { return get<double>(name); }
  double number_or(std::string_view name, double fallback) const { return has(name) ? number(name) : fallback; }
  const FeatureVector& point(std::string_view name) const { return get<FeatureVector>(name); }
  const std::string& text(std::string_view name) const { return get<std::string>(name); }

 private:
  template <class T>
  const T& get(std::string_view name) const {
    auto it = v_.find(name);
    if (it == v_.end()) throw Error(ErrorCode::invalid_parameter, "missing parameter '" + std::string(name) + "'");
    const auto* value = std::get_if<T>(&it->second);
    if (value == nullptr) {
      throw Error(ErrorCode::invalid_parameter, "parameter '" + std::string(name) + "' has the wrong type");
    }
    return *value;
  }

  Family family_;
  std::optional<FeatureSchema> x_schema_;
  FeedbackDomain y_schema_;
  ParamMap v_;
};

// ---------------------------------------------------------------------------
// Learner contract and argmin

struct Selection {
  Hypothesis hypothesis;
  InconsistencyReport report;
};

/// Learner over a finite family: enumerate candidates, report each.
template <class L>
concept FiniteParadigm = requires(const L& l, const ProblemStatement& p, const TrainingSet& t, const Hypothesis& h) {
  { l.family() } -> std::convertible_to<Family>;
  { l.candidates(p, t) } -> std::convertible_to<std::vector<Hypothesis>>;
  { l.inconsistency(h, p, t) } -> std::convertible_to<InconsistencyReport>;
};

/// Learner over a continuous family: owns its minimiser.
template <class L>
concept ContinuousParadigm = requires(const L& l, const ProblemStatement& p, const TrainingSet& t) {
  { l.family() } -> std::convertible_to<Family>;
  { l.minimize(p, t) } -> std::convertible_to<Selection>;
};

/// Argmin of the total inconsistency over the learner's family. Finite
/// families are compared exhaustively; the earliest candidate wins ties.
template <class L>
  requires FiniteParadigm<L> || ContinuousParadigm<L>
Selection select_hypothesis(const L& learner, const ProblemStatement& p, const TrainingSet& t) {
  if (learner.family() != p.family()) {
    throw Error(ErrorCode::incompatible_family, "learner " + std::string(to_string(learner.family())) +
                                                    " cannot solve a " + std::string(to_string(p.family())) +
                                                    " problem");
  }
  if constexpr (FiniteParadigm<L>) {
    const std::vector<Hypothesis> family = learner.candidates(p, t);
    if (family.empty()) throw Error(ErrorCode::empty_set, "learner offered no candidate hypotheses");
    std::optional<Selection> best;
    for (const auto& h : family) {
      InconsistencyReport r = learner.inconsistency(h, p, t);
      if (!best || r.total < best->report.total) best = Selection{h, std::move(r)};
    }
    return std::move(*best);
  } else {
    return learner.minimize(p, t);
  }
}

// ---------------------------------------------------------------------------
// ERM

/// Baselines are the observations, each with the single counterpart
/// <x_i, f(x_i)> and mu = |y_i - f(x_i)|; Lambda is the sum in training order.
inline InconsistencyReport erm_report(const Hypothesis& f, const TrainingSet& t) {
  std::vector<ReportEntry> entries;
  entries.reserve(t.size());
  for (const auto& c : t) {
    const double mu = std::abs(c.y - evaluate(f, c.x));
    entries.push_back({c, Provenance::from_training, Provenance::from_hypothesis, mu, 1});
  }
  return make_report(describe(f), Aggregation::sum, 0.0, std::move(entries));
}

inline double erm_total_inconsistency(const Hypothesis& f, const TrainingSet& t) {
  return erm_report(f, t).total;
}

// ---------------------------------------------------------------------------
// Formatting

inline std::string format_real(double v) {
  char buf[64];
  auto n = std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest form that still round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char probe[64];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return std::string(buf, static_cast<std::size_t>(n));
}

inline std::string describe(const FeatureVector& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (i) out += ", ";
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, Numeric>) out += format_real(v.value);
          else if constexpr (std::is_same_v<V, Ordinal>) out += "#" + std::to_string(v.rank);
          else out += v.symbol;
        },
        x[i]);
  }
  return out + ")";
}

inline std::string describe(const Hypothesis& f) {
  if (const auto* p = std::get_if<PointwiseHypothesis>(&f)) {
    return "pointwise h" + describe(p->x0) + " = " + format_real(p->value);
  }
  const auto& lin = std::get<LinearHypothesis>(f);
  std::string out = "linear b=(";
  for (std::size_t j = 0; j < lin.b.size(); ++j) out += (j ? ", " : "") + format_real(lin.b[j]);
  return out + "), a=" + format_real(lin.a);
}

}  // namespace plearn

#endif  // PLEARN_CORE_HPP
