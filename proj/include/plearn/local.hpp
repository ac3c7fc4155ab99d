#ifndef PLEARN_LOCAL_HPP
#define PLEARN_LOCAL_HPP

// Pointwise learners. Each hypothesis is defined at the single query x0; its
// baseline case <x0, h(x0)> is compared against counterparts drawn from the
// training set.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "plearn/core.hpp"

namespace plearn {

// ---------------------------------------------------------------------------
// Neighbourhoods

enum class Metric { euclidean, manhattan };

constexpr std::string_view to_string(Metric m) noexcept {
  return m == Metric::euclidean ? "euclidean" : "manhattan";
}

inline Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "manhattan") return Metric::manhattan;
  throw Error(ErrorCode::invalid_parameter, "unknown metric '" + std::string(name) + "'");
}

struct KNearest {
  std::size_t k = 1;
};

struct FixedRadius {
  double r = 1.0;
};

struct NeighborhoodSpec {
  std::variant<KNearest, FixedRadius> mode = KNearest{1};
  Metric metric = Metric::euclidean;
};

/// Ordinal features compare by rank; nominal features have no metric.
inline double distance(const FeatureVector& x, const FeatureVector& z, Metric metric) {
  if (x.dimension() != z.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "distance between vectors of dimension " +
                                                   std::to_string(x.dimension()) + " and " +
                                                   std::to_string(z.dimension()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    const double d = x.coordinate(i) - z.coordinate(i);
    acc += metric == Metric::euclidean ? d * d : std::abs(d);
  }
  return metric == Metric::euclidean ? std::sqrt(acc) : acc;
}

/// Training cases closest to x0. KNearest keeps every case tied with the
/// k-th distance, so the set may exceed k. Members keep training order.
inline CounterpartSet smoothing_counterparts(const FeatureVector& x0, const TrainingSet& t,
                                             const NeighborhoodSpec& spec) {
  std::vector<double> dist(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) dist[i] = distance(x0, t[i].x, spec.metric);

  double cutoff = 0.0;
  if (const auto* kn = std::get_if<KNearest>(&spec.mode)) {
    if (kn->k == 0) throw Error(ErrorCode::invalid_parameter, "k must be positive");
    if (kn->k > t.size()) {
      throw Error(ErrorCode::k_exceeds_sample_size,
                  "k = " + std::to_string(kn->k) + " exceeds m = " + std::to_string(t.size()));
    }
    std::vector<double> sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(kn->k - 1), sorted.end());
    cutoff = sorted[kn->k - 1];
  } else {
    cutoff = std::get<FixedRadius>(spec.mode).r;
    if (!(cutoff > 0.0)) throw Error(ErrorCode::invalid_parameter, "radius must be positive");
  }

  CounterpartSet out{{}, Provenance::from_training};
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (dist[i] <= cutoff) out.members.push_back(t[i]);
  }
  if (out.members.empty()) {
    throw Error(ErrorCode::empty_neighborhood, "no training case within radius " + format_real(cutoff) +
                                                   " of " + describe(x0));
  }
  return out;
}

inline double mean_feedback(const CounterpartSet& counterparts) {
  if (counterparts.members.empty()) throw Error(ErrorCode::empty_neighborhood, "no counterparts");
  double s = 0.0;
  for (const auto& c : counterparts.members) s += c.y;
  return s / static_cast<double>(counterparts.members.size());
}

/// |h(x0) - mean feedback of the counterparts|
inline double smoothing_case_inconsistency(double h_value, const CounterpartSet& counterparts) {
  return std::abs(h_value - mean_feedback(counterparts));
}

inline InconsistencyReport pointwise_report(const FeatureVector& x0, double h_value,
                                            const CounterpartSet& counterparts) {
  ReportEntry e{Case{x0, h_value}, Provenance::from_hypothesis, counterparts.provenance,
                smoothing_case_inconsistency(h_value, counterparts), counterparts.members.size()};
  return make_report(describe(Hypothesis{PointwiseHypothesis{x0, h_value}}), Aggregation::sum, 0.0, {e});
}

/// The minimiser in closed form: h(x0) is the counterpart mean, Lambda = 0.
inline PointwiseHypothesis smoothing_fit(const FeatureVector& x0, const TrainingSet& t,
                                         const NeighborhoodSpec& spec) {
  return {x0, mean_feedback(smoothing_counterparts(x0, t, spec))};
}

// ---------------------------------------------------------------------------
// Binary pointwise decisions shared by k-NN, the tree and Naive Bayes

struct BinaryDecision {
  double label = 0.0;
  /// Lambda(h0), Lambda(h1).
  std::array<double, 2> totals{};
  InconsistencyReport report;
};

/// Argmin over {h0, h1}; h0 wins ties.
inline std::size_t argmin_label(const std::array<double, 2>& totals) noexcept {
  return totals[1] < totals[0] ? 1 : 0;
}

inline BinaryDecision decide_from_counterparts(const FeatureVector& x0, const CounterpartSet& counterparts) {
  BinaryDecision d;
  InconsistencyReport reports[2] = {pointwise_report(x0, 0.0, counterparts),
                                    pointwise_report(x0, 1.0, counterparts)};
  d.totals = {reports[0].total, reports[1].total};
  const std::size_t pick = argmin_label(d.totals);
  d.label = static_cast<double>(pick);
  d.report = std::move(reports[pick]);
  return d;
}

inline BinaryDecision knn_predict(const FeatureVector& x0, const TrainingSet& t, std::size_t k,
                                  Metric metric = Metric::euclidean) {
  require_feedback(t, FeedbackDomain::binary01);
  return decide_from_counterparts(x0, smoothing_counterparts(x0, t, {KNearest{k}, metric}));
}

// ---------------------------------------------------------------------------
// Decision tree partitions over ordinal features

struct TreeConfig {
  std::size_t max_depth = 8;
  std::size_t min_leaf_size = 1;
  double purity_threshold = 0.0;

  void validate() const {
    if (max_depth == 0) throw Error(ErrorCode::invalid_parameter, "max_depth must be positive");
    if (min_leaf_size == 0) throw Error(ErrorCode::invalid_parameter, "min_leaf_size must be positive");
    if (!(purity_threshold >= 0.0 && purity_threshold <= 0.5)) {
      throw Error(ErrorCode::invalid_parameter, "purity_threshold must lie in [0, 0.5]");
    }
  }
};

enum class StopReason { max_depth, min_size, purity, no_gain };

constexpr std::string_view to_string(StopReason s) noexcept {
  switch (s) {
    case StopReason::max_depth: return "max_depth";
    case StopReason::min_size: return "min_size";
    case StopReason::purity: return "purity";
    case StopReason::no_gain: return "no_gain";
  }
  return "?";
}

inline StopReason parse_stop_reason(std::string_view s) {
  for (auto r : {StopReason::max_depth, StopReason::min_size, StopReason::purity, StopReason::no_gain}) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorCode::model_format, "unknown stop reason '" + std::string(s) + "'");
}

/// Left child takes [x]_feature <= threshold (0-based feature, rank threshold).
struct SplitNode {
  std::size_t feature = 0;
  std::size_t threshold = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  bool operator==(const SplitNode&) const = default;
};

struct LeafNode {
  std::size_t id = 0;
  std::vector<std::size_t> cases;
  StopReason stop = StopReason::no_gain;
  bool operator==(const LeafNode&) const = default;
};

struct TreeNode {
  std::size_t depth = 0;
  std::variant<SplitNode, LeafNode> body;
  bool operator==(const TreeNode&) const = default;
};

/// Per-feature inclusive rank interval describing one leaf's subdomain.
struct LeafBox {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;

  bool contains(const FeatureVector& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const auto r = std::get<Ordinal>(x[i]).rank;
      if (r < lo[i] || r > hi[i]) return false;
    }
    return true;
  }
};

class TreePartition {
 public:
  TreePartition() = default;
  TreePartition(std::vector<TreeNode> nodes, std::size_t dimension)
      : nodes_(std::move(nodes)), dimension_(dimension) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t dimension() const noexcept { return dimension_; }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) {
      return std::holds_alternative<LeafNode>(n.body);
    }));
  }

  /// Index of the node holding the leaf A(x).
  std::size_t route(const FeatureVector& x) const {
    if (x.dimension() != dimension_) {
      throw Error(ErrorCode::dimension_mismatch, "tree over " + std::to_string(dimension_) +
                                                     " features queried with " + std::to_string(x.dimension()));
    }
    std::size_t at = 0;
    while (const auto* split = std::get_if<SplitNode>(&nodes_.at(at).body)) {
      const auto* ord = std::get_if<Ordinal>(&x[split->feature]);
      if (ord == nullptr) {
        throw Error(ErrorCode::schema_mismatch,
                    "tree feature " + std::to_string(split->feature + 1) + " must be ordinal");
      }
      at = ord->rank <= split->threshold ? split->left : split->right;
    }
    return at;
  }

  const LeafNode& leaf_of(const FeatureVector& x) const { return std::get<LeafNode>(nodes_[route(x)].body); }

  /// Subdomain of every leaf, in node order. `rank_limit` bounds open intervals.
  std::vector<std::pair<std::size_t, LeafBox>> leaf_boxes(std::size_t rank_limit) const {
    std::vector<std::pair<std::size_t, LeafBox>> out;
    LeafBox root{std::vector<std::size_t>(dimension_, 0), std::vector<std::size_t>(dimension_, rank_limit)};
    collect_boxes(0, root, out);
    return out;
  }

  bool operator==(const TreePartition&) const = default;

 private:
  void collect_boxes(std::size_t at, LeafBox box, std::vector<std::pair<std::size_t, LeafBox>>& out) const {
    const auto& node = nodes_[at];
    if (std::holds_alternative<LeafNode>(node.body)) {
      out.emplace_back(at, std::move(box));
      return;
    }
    const auto& s = std::get<SplitNode>(node.body);
    LeafBox left = box;
    left.hi[s.feature] = std::min(left.hi[s.feature], s.threshold);
    LeafBox right = std::move(box);
    right.lo[s.feature] = std::max(right.lo[s.feature], s.threshold + 1);
    collect_boxes(s.left, std::move(left), out);
    collect_boxes(s.right, std::move(right), out);
  }

  std::vector<TreeNode> nodes_;
  std::size_t dimension_ = 0;
};

namespace detail {

struct LabelCounts {
  std::int64_t zeros = 0;
  std::int64_t ones = 0;
  std::int64_t total() const noexcept { return zeros + ones; }
};

/// Size-weighted impurity N * p(1 - p) = n0 * n1 / N.
inline double weighted_impurity(const LabelCounts& c) noexcept {
  return c.total() == 0 ? 0.0 : static_cast<double>(c.zeros * c.ones) / static_cast<double>(c.total());
}

/// Exact sign test for parent impurity minus the children's, in integers.
inline bool strictly_reduces(const LabelCounts& parent, const LabelCounts& left, const LabelCounts& right) {
  const std::int64_t n = parent.total(), l = left.total(), r = right.total();
  return parent.zeros * parent.ones * l * r > (left.zeros * left.ones * r + right.zeros * right.ones * l) * n;
}

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& t, const TreeConfig& cfg) : t_(t), cfg_(cfg) {}

  TreePartition build() {
    std::vector<std::size_t> all(t_.size());
    std::iota(all.begin(), all.end(), 0);
    grow(std::move(all), 0);
    return TreePartition(std::move(nodes_), t_.dimension());
  }

 private:
  std::size_t rank(std::size_t c, std::size_t feature) const { return std::get<Ordinal>(t_[c].x[feature]).rank; }

  LabelCounts count(const std::vector<std::size_t>& cases) const {
    LabelCounts c;
    for (auto i : cases) (t_[i].y == 1.0 ? c.ones : c.zeros) += 1;
    return c;
  }

  std::size_t grow(std::vector<std::size_t> cases, std::size_t depth) {
    const std::size_t at = nodes_.size();
    nodes_.push_back(TreeNode{depth, LeafNode{}});

    const LabelCounts counts = count(cases);
    const double minority = static_cast<double>(std::min(counts.zeros, counts.ones)) /
                            static_cast<double>(counts.total());
    std::optional<StopReason> stop;
    if (depth >= cfg_.max_depth) stop = StopReason::max_depth;
    else if (cases.size() < 2 * cfg_.min_leaf_size) stop = StopReason::min_size;
    else if (minority <= cfg_.purity_threshold) stop = StopReason::purity;

    std::optional<SplitNode> best;
    if (!stop) {
      best = best_split(cases, counts);
      if (!best) stop = StopReason::no_gain;
    }
    if (stop) {
      nodes_[at].body = LeafNode{leaves_++, std::move(cases), *stop};
      return at;
    }

    std::vector<std::size_t> left, right;
    for (auto i : cases) (rank(i, best->feature) <= best->threshold ? left : right).push_back(i);
    best->left = grow(std::move(left), depth + 1);
    best->right = grow(std::move(right), depth + 1);
    nodes_[at].body = *best;
    return at;
  }

  // Largest impurity decrease; ties go to the lowest feature, then threshold.
  std::optional<SplitNode> best_split(const std::vector<std::size_t>& cases, const LabelCounts& parent) const {
    std::optional<SplitNode> best;
    double best_gain = 0.0;
    const double parent_impurity = weighted_impurity(parent);
    for (std::size_t f = 0; f < t_.dimension(); ++f) {
      std::map<std::size_t, LabelCounts> by_rank;
      for (auto i : cases) (t_[i].y == 1.0 ? by_rank[rank(i, f)].ones : by_rank[rank(i, f)].zeros) += 1;
      LabelCounts left;
      for (auto it = by_rank.begin(); std::next(it) != by_rank.end(); ++it) {
        left.zeros += it->second.zeros;
        left.ones += it->second.ones;
        const LabelCounts right{parent.zeros - left.zeros, parent.ones - left.ones};
        const auto min_leaf = static_cast<std::int64_t>(cfg_.min_leaf_size);
        if (left.total() < min_leaf || right.total() < min_leaf) continue;
        if (!strictly_reduces(parent, left, right)) continue;
        const double gain = parent_impurity - weighted_impurity(left) - weighted_impurity(right);
        if (!best || gain > best_gain) {
          best = SplitNode{f, it->first, 0, 0};
          best_gain = gain;
        }
      }
    }
    return best;
  }

  const TrainingSet& t_;
  const TreeConfig& cfg_;
  std::vector<TreeNode> nodes_;
  std::size_t leaves_ = 0;
};

inline void require_ordinal(const TrainingSet& t) {
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    if (t.kind(i) != FeatureKind::ordinal) {
      throw Error(ErrorCode::schema_mismatch, "decision tree feature " + std::to_string(i + 1) + " is " +
                                                  std::string(to_string(t.kind(i))) + ", expected ordinal");
    }
  }
}

}  // namespace detail

/// Recursive binary partition of the ordinal domain. A node becomes a leaf at
/// max depth, below 2 * min_leaf_size cases, when its minority fraction is at
/// most the purity threshold, or when no admissible split lowers impurity.
inline TreePartition dtree_build(const TrainingSet& t, const TreeConfig& cfg = {}) {
  cfg.validate();
  detail::require_ordinal(t);
  require_feedback(t, FeedbackDomain::binary01);
  return detail::TreeBuilder(t, cfg).build();
}

/// Every observation whose feature vector lies in x0's leaf.
inline CounterpartSet dtree_counterparts(const FeatureVector& x0, const TreePartition& partition,
                                         const TrainingSet& t) {
  const std::size_t leaf = partition.route(x0);
  CounterpartSet out{{}, Provenance::from_training};
  for (const auto& c : t) {
    if (partition.route(c.x) == leaf) out.members.push_back(c);
  }
  if (out.members.empty()) throw Error(ErrorCode::empty_leaf, "leaf of " + describe(x0) + " holds no case");
  return out;
}

inline BinaryDecision dtree_predict(const FeatureVector& x0, const TreePartition& partition, const TrainingSet& t) {
  require_feedback(t, FeedbackDomain::binary01);
  return decide_from_counterparts(x0, dtree_counterparts(x0, partition, t));
}

// ---------------------------------------------------------------------------
// Naive Bayes over disjoint nominal value sets

/// A case of the transformed single-feature problem.
struct NominalCase {
  std::string value;
  std::size_t feature = 0;  // 0-based origin position, kept for reporting
  double y = 0.0;
  bool operator==(const NominalCase&) const = default;
};

struct TransformedProblem {
  /// Pooled value set C, the union of the per-feature sets.
  std::set<std::string> pooled_values;
  /// x0' = ([x0]_1, ..., [x0]_n).
  std::vector<std::string> query;
  /// T' with n * m cases; repeats are expected.
  std::vector<NominalCase> cases;
};

namespace detail {

inline const std::string& symbol_at(const FeatureVector& x, std::size_t i) {
  const auto* nom = std::get_if<Nominal>(&x[i]);
  if (nom == nullptr) {
    throw Error(ErrorCode::schema_mismatch, "Naive Bayes feature " + std::to_string(i + 1) + " must be nominal");
  }
  return nom->symbol;
}

}  // namespace detail

inline TransformedProblem nb_transform(const FeatureVector& x0, const TrainingSet& t) {
  require_feedback(t, FeedbackDomain::binary01);
  const std::size_t n = t.dimension();
  if (x0.dimension() != n) {
    throw Error(ErrorCode::dimension_mismatch, "query of dimension " + std::to_string(x0.dimension()) +
                                                   " for data of dimension " + std::to_string(n));
  }

  // Value sets C^i: declared when a schema exists, observed otherwise.
  std::vector<std::set<std::string>> sets(n);
  if (t.schema()) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& col = t.schema()->columns[i];
      if (col.kind != FeatureKind::nominal) {
        throw Error(ErrorCode::schema_mismatch, "Naive Bayes feature " + std::to_string(i + 1) + " must be nominal");
      }
      sets[i].insert(col.values.begin(), col.values.end());
    }
    t.schema()->check(x0);
  }
  for (const auto& c : t) {
    for (std::size_t i = 0; i < n; ++i) sets[i].insert(detail::symbol_at(c.x, i));
  }
  for (std::size_t i = 0; i < n; ++i) sets[i].insert(detail::symbol_at(x0, i));

  TransformedProblem out;
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : sets[i]) {
      auto [it, inserted] = owner.emplace(s, i);
      if (!inserted) {
        throw Error(ErrorCode::non_disjoint_value_sets, "value '" + s + "' belongs to features " +
                                                            std::to_string(it->second + 1) + " and " +
                                                            std::to_string(i + 1));
      }
      out.pooled_values.insert(s);
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.query.push_back(detail::symbol_at(x0, i));
  out.cases.reserve(n * t.size());
  for (const auto& c : t) {
    for (std::size_t i = 0; i < n; ++i) out.cases.push_back({detail::symbol_at(c.x, i), i, c.y});
  }
  return out;
}

/// Share of T' cases with alpha's value whose label differs from alpha's.
/// An unseen value is uninformative and scores 0.5.
inline double nb_case_inconsistency(const NominalCase& alpha, const std::vector<NominalCase>& transformed) {
  std::size_t matches = 0, disagreements = 0;
  for (const auto& beta : transformed) {
    if (beta.value != alpha.value) continue;
    ++matches;
    if (beta.y != alpha.y) ++disagreements;
  }
  if (matches == 0) return 0.5;
  return static_cast<double>(disagreements) / static_cast<double>(matches);
}

inline std::size_t nb_counterpart_count(const std::string& value, const std::vector<NominalCase>& transformed) {
  return static_cast<std::size_t>(std::count_if(transformed.begin(), transformed.end(),
                                                [&](const NominalCase& c) { return c.value == value; }));
}

inline InconsistencyReport nb_report(const TransformedProblem& p, const FeatureVector& x0, double h_value) {
  std::vector<ReportEntry> entries;
  for (std::size_t i = 0; i < p.query.size(); ++i) {
    const NominalCase alpha{p.query[i], i, h_value};
    entries.push_back({Case{FeatureVector({Nominal{p.query[i]}}), h_value}, Provenance::from_hypothesis,
                       Provenance::from_training, nb_case_inconsistency(alpha, p.cases),
                       nb_counterpart_count(p.query[i], p.cases)});
  }
  return make_report(describe(Hypothesis{PointwiseHypothesis{x0, h_value}}), Aggregation::product, 0.0,
                     std::move(entries));
}

/// Lambda(h) is the product of mu over the n baseline cases <[x0]_i, h>.
inline BinaryDecision nb_predict(const FeatureVector& x0, const TrainingSet& t) {
  const TransformedProblem p = nb_transform(x0, t);
  InconsistencyReport reports[2] = {nb_report(p, x0, 0.0), nb_report(p, x0, 1.0)};
  BinaryDecision d;
  d.totals = {reports[0].total, reports[1].total};
  const std::size_t pick = argmin_label(d.totals);
  d.label = static_cast<double>(pick);
  d.report = std::move(reports[pick]);
  return d;
}

// ---------------------------------------------------------------------------
// Learner contracts

namespace detail {

inline NeighborhoodSpec neighborhood_from(const ProblemStatement& p) {
  const Metric metric = p.has("metric") ? parse_metric(p.text("metric")) : Metric::euclidean;
  if (p.has("k") == p.has("radius")) {
    throw Error(ErrorCode::invalid_parameter, "smoothing needs exactly one of 'k' and 'radius'");
  }
  if (p.has("radius")) return {FixedRadius{p.number("radius")}, metric};
  return {KNearest{positive_count(p.number("k"), "k")}, metric};
}

}  // namespace detail

struct SmoothingLearner {
  Family family() const { return Family::smoothing; }

  InconsistencyReport inconsistency(const Hypothesis& h, const ProblemStatement& p, const TrainingSet& t) const {
    const auto& x0 = p.point("x0");
    return pointwise_report(x0, evaluate(h, x0), smoothing_counterparts(x0, t, detail::neighborhood_from(p)));
  }

  Selection minimize(const ProblemStatement& p, const TrainingSet& t) const {
    Hypothesis h = smoothing_fit(p.point("x0"), t, detail::neighborhood_from(p));
    InconsistencyReport r = inconsistency(h, p, t);
    return {std::move(h), std::move(r)};
  }
};

namespace detail {

inline std::vector<Hypothesis> binary_candidates(const ProblemStatement& p) {
  const auto& x0 = p.point("x0");
  return {PointwiseHypothesis{x0, 0.0}, PointwiseHypothesis{x0, 1.0}};
}

}  // namespace detail

struct KnnLearner {
  Family family() const { return Family::knn; }
  std::vector<Hypothesis> candidates(const ProblemStatement& p, const TrainingSet&) const {
    return detail::binary_candidates(p);
  }
  InconsistencyReport inconsistency(const Hypothesis& h, const ProblemStatement& p, const TrainingSet& t) const {
    require_feedback(t, FeedbackDomain::binary01);
    const auto& x0 = p.point("x0");
    const Metric metric = p.has("metric") ? parse_metric(p.text("metric")) : Metric::euclidean;
    const NeighborhoodSpec spec{KNearest{positive_count(p.number("k"), "k")}, metric};
    return pointwise_report(x0, evaluate(h, x0), smoothing_counterparts(x0, t, spec));
  }
};

inline TreeConfig tree_config_from(const ProblemStatement& p) {
  TreeConfig cfg;
  if (p.has("max_depth")) cfg.max_depth = positive_count(p.number("max_depth"), "max_depth");
  if (p.has("min_leaf")) cfg.min_leaf_size = positive_count(p.number("min_leaf"), "min_leaf");
  cfg.purity_threshold = p.number_or("purity", cfg.purity_threshold);
  return cfg;
}

struct DtreeLearner {
  Family family() const { return Family::dtree; }
  std::vector<Hypothesis> candidates(const ProblemStatement& p, const TrainingSet&) const {
    return detail::binary_candidates(p);
  }
  InconsistencyReport inconsistency(const Hypothesis& h, const ProblemStatement& p, const TrainingSet& t) const {
    const auto& x0 = p.point("x0");
    const TreePartition tree = dtree_build(t, tree_config_from(p));
    return pointwise_report(x0, evaluate(h, x0), dtree_counterparts(x0, tree, t));
  }
};

struct NbLearner {
  Family family() const { return Family::nb; }
  std::vector<Hypothesis> candidates(const ProblemStatement& p, const TrainingSet&) const {
    return detail::binary_candidates(p);
  }
  InconsistencyReport inconsistency(const Hypothesis& h, const ProblemStatement& p, const TrainingSet& t) const {
    const auto& x0 = p.point("x0");
    return nb_report(nb_transform(x0, t), x0, evaluate(h, x0));
  }
};

}  // namespace plearn

#endif  // PLEARN_LOCAL_HPP
