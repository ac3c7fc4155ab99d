#include <gtest/gtest.h>

#include "plearn/local.hpp"
#include "plearn/oracle.hpp"

using namespace plearn;

namespace {

TrainingSet numeric_set(std::initializer_list<std::pair<double, double>> xy) {
  std::vector<Case> cases;
  for (auto [x, y] : xy) cases.push_back({FeatureVector::numeric({x}), y});
  return validate_training_set(std::move(cases));
}

TrainingSet ordinal_set(std::initializer_list<std::pair<std::size_t, double>> xy) {
  std::vector<Case> cases;
  for (auto [x, y] : xy) cases.push_back({FeatureVector::ordinal({x}), y});
  return validate_training_set(std::move(cases));
}

CounterpartSet feedbacks(std::initializer_list<double> ys) {
  CounterpartSet s;
  double x = 0.0;
  for (double y : ys) s.members.push_back({FeatureVector::numeric({x++}), y});
  return s;
}

std::vector<double> labels_of(const CounterpartSet& s) {
  std::vector<double> out;
  for (const auto& c : s.members) out.push_back(c.y);
  return out;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::io_error;
}

const auto x = [](double v) { return FeatureVector::numeric({v}); };
const auto r = [](std::size_t v) { return FeatureVector::ordinal({v}); };

}  // namespace

// ---------------------------------------------------------------------------
// Smoothing

TEST(SmoothingTest, Counterparts) {
  const auto t = numeric_set({{0, 1}, {1, 2}, {5, 9}});
  EXPECT_EQ(labels_of(smoothing_counterparts(x(0.4), t, {KNearest{2}})), (std::vector<double>{1, 2}));
  EXPECT_EQ(labels_of(smoothing_counterparts(x(0.4), t, {FixedRadius{0.5}})), (std::vector<double>{1}));
  EXPECT_EQ(labels_of(smoothing_counterparts(x(7), numeric_set({{3, 4}}), {KNearest{1}})),
            (std::vector<double>{4}));
}

TEST(SmoothingTest, TiesWithTheKthDistanceAreKept) {
  const auto t = numeric_set({{-1, 1}, {1, 2}, {3, 9}});
  EXPECT_EQ(smoothing_counterparts(x(0), t, {KNearest{1}}).members.size(), 2u);
}

TEST(SmoothingTest, NeighborhoodErrors) {
  const auto t = numeric_set({{0, 1}, {1, 2}});
  EXPECT_EQ(code_of([&] { smoothing_counterparts(x(0), t, {KNearest{0}}); }), ErrorCode::invalid_parameter);
  EXPECT_EQ(code_of([&] { smoothing_counterparts(x(0), t, {KNearest{3}}); }), ErrorCode::k_exceeds_sample_size);
  EXPECT_EQ(code_of([&] { smoothing_counterparts(x(10), t, {FixedRadius{1}}); }), ErrorCode::empty_neighborhood);
  EXPECT_EQ(code_of([&] { smoothing_counterparts(x(0), t, {FixedRadius{0}}); }), ErrorCode::invalid_parameter);
}

TEST(SmoothingTest, CaseInconsistency) {
  EXPECT_EQ(smoothing_case_inconsistency(3.0, feedbacks({2.0, 4.0})), 0.0);
  EXPECT_EQ(smoothing_case_inconsistency(0.0, feedbacks({2.0, 4.0})), 3.0);
  EXPECT_EQ(smoothing_case_inconsistency(5.0, feedbacks({5.0})), 0.0);
}

TEST(SmoothingTest, FitIsTheMean) {
  EXPECT_EQ(smoothing_fit(x(0.4), numeric_set({{0, 2}, {1, 4}, {5, 9}}), {KNearest{2}}).value, 3.0);
  EXPECT_EQ(smoothing_fit(x(0.4), numeric_set({{0, 5}}), {KNearest{1}}).value, 5.0);
  EXPECT_DOUBLE_EQ(smoothing_fit(x(0), numeric_set({{0, 1}, {1, 1}, {2, 0}, {9, 1}}), {KNearest{3}}).value,
                   2.0 / 3.0);
}

TEST(SmoothingTest, ManhattanMetricChangesTheNeighborhood) {
  std::vector<Case> cases{{FeatureVector::numeric({1.0, 1.0}), 1.0}, {FeatureVector::numeric({1.5, 0.0}), 2.0}};
  const auto t = validate_training_set(std::move(cases));
  const auto q = FeatureVector::numeric({0, 0});
  // Euclidean: sqrt(2) < 1.5; Manhattan: 2 > 1.5.
  EXPECT_EQ(labels_of(smoothing_counterparts(q, t, {KNearest{1}, Metric::euclidean})), (std::vector<double>{1}));
  EXPECT_EQ(labels_of(smoothing_counterparts(q, t, {KNearest{1}, Metric::manhattan})), (std::vector<double>{2}));
}

TEST(SmoothingTest, ReportProvenance) {
  const auto rep = pointwise_report(x(0), 1.0, smoothing_counterparts(x(0), numeric_set({{0, 2}}), {KNearest{1}}));
  ASSERT_EQ(rep.entries.size(), 1u);
  EXPECT_EQ(rep.entries[0].baseline_source, Provenance::from_hypothesis);
  EXPECT_EQ(rep.entries[0].counterpart_source, Provenance::from_training);
  EXPECT_EQ(rep.total, 1.0);
}

// ---------------------------------------------------------------------------
// k-NN

TEST(KnnTest, Examples) {
  const auto t = numeric_set({{0, 1}, {0.1, 1}, {0.9, 0}, {1, 0}});
  const auto d = knn_predict(x(0.05), t, 3);
  EXPECT_EQ(d.label, 1.0);
  EXPECT_DOUBLE_EQ(d.totals[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.totals[0], 2.0 / 3.0);

  EXPECT_EQ(knn_predict(x(42), numeric_set({{0, 1}}), 1).label, 1.0);
  EXPECT_EQ(knn_predict(x(0.5), numeric_set({{0, 0}, {1, 1}}), 2).label, 0.0);
}

TEST(KnnTest, MajorityLabels) {
  EXPECT_EQ(decide_from_counterparts(x(0), feedbacks({1, 1, 0})).label, 1.0);
  EXPECT_EQ(decide_from_counterparts(x(0), feedbacks({0, 1})).label, 0.0);
  EXPECT_EQ(decide_from_counterparts(x(0), feedbacks({0})).label, 0.0);
}

TEST(KnnTest, AgreesWithBruteForceMajority) {
  const std::vector<double> points{0.0, 1.0, 2.5, 3.0, 4.5, 7.0};
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Case> cases;
    for (std::size_t i = 0; i < points.size(); ++i) cases.push_back({x(points[i]), double((mask >> i) & 1u)});
    const auto t = validate_training_set(std::move(cases));
    for (std::size_t k : {1, 3, 5}) {
      for (int q = 0; q < 20; ++q) {
        const auto x0 = x(-0.5 + 0.41 * q);
        EXPECT_EQ(knn_predict(x0, t, k).label, oracle::brute_knn_majority(x0, t, k)) << mask << " k=" << k;
      }
    }
  }
}

TEST(KnnTest, RejectsRealLabels) {
  EXPECT_EQ(code_of([] { knn_predict(x(0), numeric_set({{0, 0.5}}), 1); }), ErrorCode::schema_mismatch);
}

// ---------------------------------------------------------------------------
// Decision tree

TEST(DtreeTest, SplitsAtTheBestThreshold) {
  const auto t = ordinal_set({{1, 0}, {2, 0}, {3, 1}, {4, 1}});
  const auto tree = dtree_build(t);
  ASSERT_TRUE(std::holds_alternative<SplitNode>(tree.nodes()[0].body));
  const auto& split = std::get<SplitNode>(tree.nodes()[0].body);
  EXPECT_EQ(split.feature, 0u);
  EXPECT_EQ(split.threshold, 2u);
  EXPECT_EQ(tree.leaf_count(), 2u);

  EXPECT_EQ(labels_of(dtree_counterparts(r(1), tree, t)), (std::vector<double>{0, 0}));
  EXPECT_EQ(labels_of(dtree_counterparts(r(4), tree, t)), (std::vector<double>{1, 1}));
}

TEST(DtreeTest, StoppingRules) {
  const auto pure = dtree_build(ordinal_set({{1, 1}, {2, 1}, {3, 1}}));
  ASSERT_EQ(pure.leaf_count(), 1u);
  EXPECT_EQ(std::get<LeafNode>(pure.nodes()[0].body).stop, StopReason::purity);

  const auto small = dtree_build(ordinal_set({{1, 0}, {2, 1}, {3, 1}}), {8, 2, 0.0});
  ASSERT_EQ(small.leaf_count(), 1u);
  EXPECT_EQ(std::get<LeafNode>(small.nodes()[0].body).stop, StopReason::min_size);

  const auto t = ordinal_set({{1, 0}, {2, 0}, {3, 1}, {4, 1}});
  EXPECT_EQ(labels_of(dtree_counterparts(r(2), dtree_build(t, {8, 3, 0.0}), t)).size(), 4u);
}

TEST(DtreeTest, LeafDecisions) {
  EXPECT_EQ(decide_from_counterparts(r(0), feedbacks({0, 0})).label, 0.0);
  EXPECT_EQ(decide_from_counterparts(r(0), feedbacks({0, 0})).report.total, 0.0);
  const auto d = decide_from_counterparts(r(0), feedbacks({1, 1, 0}));
  EXPECT_EQ(d.label, 1.0);
  EXPECT_DOUBLE_EQ(d.report.total, 1.0 / 3.0);
  EXPECT_EQ(decide_from_counterparts(r(0), feedbacks({0, 1})).label, 0.0);
}

TEST(DtreeTest, RequiresOrdinalFeatures) {
  EXPECT_EQ(code_of([] { dtree_build(numeric_set({{0, 0}, {1, 1}})); }), ErrorCode::schema_mismatch);
}

TEST(DtreeTest, PartitionIsTotalAndStopsSoundly) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    oracle::RandomInstance spec;
    spec.seed = seed;
    spec.n = 2;
    spec.m = 20;
    spec.kind = FeatureKind::ordinal;
    spec.levels = 6;
    spec.labels = oracle::LabelScheme::binary01;
    spec.dependence.outlier_fraction = 0.2;
    const auto inst = oracle::generate_instance(spec);
    const TreeConfig cfg{3, 2, 0.1};
    const auto tree = dtree_build(inst.training, cfg);
    const auto boxes = tree.leaf_boxes(spec.levels);
    for (std::size_t a = 0; a < spec.levels; ++a) {
      for (std::size_t b = 0; b < spec.levels; ++b) {
        const auto probe = FeatureVector::ordinal({a, b});
        const auto hits = std::count_if(boxes.begin(), boxes.end(), [&](const auto& kv) {
          return kv.second.contains(probe);
        });
        EXPECT_EQ(hits, 1);
      }
    }
    for (const auto& node : tree.nodes()) {
      const auto* leaf = std::get_if<LeafNode>(&node.body);
      if (leaf == nullptr) continue;
      EXPECT_GE(leaf->cases.size(), cfg.min_leaf_size);
      std::size_t ones = 0;
      for (auto i : leaf->cases) ones += inst.training[i].y == 1.0;
      const double minority =
          double(std::min(ones, leaf->cases.size() - ones)) / double(leaf->cases.size());
      switch (leaf->stop) {
        case StopReason::max_depth: EXPECT_EQ(node.depth, cfg.max_depth); break;
        case StopReason::min_size: EXPECT_LT(leaf->cases.size(), 2 * cfg.min_leaf_size); break;
        case StopReason::purity: EXPECT_LE(minority, cfg.purity_threshold); break;
        case StopReason::no_gain: break;
      }
    }
  }
}

TEST(DtreeTest, Deterministic) {
  oracle::RandomInstance spec;
  spec.seed = 11;
  spec.n = 3;
  spec.m = 20;
  spec.kind = FeatureKind::ordinal;
  spec.levels = 4;
  spec.labels = oracle::LabelScheme::binary01;
  const auto t = oracle::generate_instance(spec).training;
  EXPECT_EQ(dtree_build(t), dtree_build(t));
}

// ---------------------------------------------------------------------------
// Naive Bayes

TEST(NbTest, Transform) {
  const auto one = validate_training_set({{FeatureVector::nominal({"a", "p"}), 1}});
  const auto p = nb_transform(FeatureVector::nominal({"a", "p"}), one);
  ASSERT_EQ(p.cases.size(), 2u);
  EXPECT_EQ(p.cases[0], (NominalCase{"a", 0, 1}));
  EXPECT_EQ(p.cases[1], (NominalCase{"p", 1, 1}));

  const auto three = validate_training_set({{FeatureVector::nominal({"a", "p"}), 1},
                                            {FeatureVector::nominal({"b", "p"}), 0},
                                            {FeatureVector::nominal({"a", "q"}), 0}});
  EXPECT_EQ(nb_transform(FeatureVector::nominal({"a", "p"}), three).cases.size(), 6u);

  const auto shared = validate_training_set({{FeatureVector::nominal({"a", "a"}), 1}});
  EXPECT_EQ(code_of([&] { nb_transform(FeatureVector::nominal({"a", "a"}), shared); }),
            ErrorCode::non_disjoint_value_sets);
}

TEST(NbTest, CaseInconsistency) {
  const std::vector<NominalCase> tp{{"v", 0, 0}, {"v", 0, 0}, {"v", 0, 1}, {"w", 0, 1}};
  EXPECT_DOUBLE_EQ(nb_case_inconsistency({"v", 0, 0}, tp), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(nb_case_inconsistency({"v", 0, 1}, tp), 2.0 / 3.0);
  EXPECT_EQ(nb_case_inconsistency({"w", 0, 1}, tp), 0.0);
  EXPECT_EQ(nb_case_inconsistency({"u", 0, 1}, tp), 0.5);
}

TEST(NbTest, ProductAndZeroFactor) {
  // Feature 1 splits labels evenly; feature 2 perfectly predicts label 1.
  const auto t = validate_training_set({{FeatureVector::nominal({"a", "p"}), 1},
                                        {FeatureVector::nominal({"b", "p"}), 1},
                                        {FeatureVector::nominal({"a", "q"}), 0},
                                        {FeatureVector::nominal({"b", "q"}), 0}});
  const auto d = nb_predict(FeatureVector::nominal({"a", "p"}), t);
  EXPECT_EQ(d.totals[1], 0.0);
  EXPECT_EQ(d.totals[0], 0.5);
  EXPECT_EQ(d.label, 1.0);

  const auto even = nb_predict(FeatureVector::nominal({"a", "r"}), t);
  EXPECT_EQ(even.totals[1], 0.25);
  EXPECT_EQ(even.label, 0.0);
}

TEST(NbTest, SingleFeatureIsMajorityVote) {
  const auto t = validate_training_set({{FeatureVector::nominal({"u"}), 1},
                                        {FeatureVector::nominal({"v"}), 0}});
  // With one feature and distinct vectors each value occurs once; mu is 0 or 1.
  EXPECT_EQ(nb_predict(FeatureVector::nominal({"u"}), t).label, 1.0);
  EXPECT_EQ(nb_predict(FeatureVector::nominal({"v"}), t).label, 0.0);
  // An unseen value scores 0.5 on both sides: tie goes to 0.
  EXPECT_EQ(nb_predict(FeatureVector::nominal({"w"}), t).label, 0.0);
}

TEST(NbTest, MatchesBruteForceProduct) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    oracle::RandomInstance spec;
    spec.seed = seed;
    spec.n = 3;
    spec.m = 15;
    spec.kind = FeatureKind::nominal;
    spec.levels = 4;
    spec.labels = oracle::LabelScheme::binary01;
    spec.dependence.outlier_fraction = 0.25;
    spec.queries = 3;
    const auto inst = oracle::generate_instance(spec);
    for (const auto& q : inst.queries) {
      const auto d = nb_predict(q, inst.training);
      EXPECT_NEAR(d.totals[0], oracle::brute_nb_total(q, inst.training, 0.0), 1e-12);
      EXPECT_NEAR(d.totals[1], oracle::brute_nb_total(q, inst.training, 1.0), 1e-12);
    }
  }
}

TEST(LearnerTest, KnnThroughSelectHypothesis) {
  const auto t = numeric_set({{0, 1}, {0.1, 1}, {0.9, 0}, {1, 0}});
  const ProblemStatement p(Family::knn, {{"x0", x(0.05)}, {"k", 3.0}});
  EXPECT_EQ(evaluate(select_hypothesis(KnnLearner{}, p, t).hypothesis, x(0.05)), 1.0);
}

TEST(LearnerTest, DtreeAndNbThroughSelectHypothesis) {
  const auto t = ordinal_set({{1, 0}, {2, 0}, {3, 1}, {4, 1}});
  const ProblemStatement p(Family::dtree, {{"x0", r(3)}});
  EXPECT_EQ(evaluate(select_hypothesis(DtreeLearner{}, p, t).hypothesis, r(3)), 1.0);

  const auto nt = validate_training_set({{FeatureVector::nominal({"u"}), 1}, {FeatureVector::nominal({"v"}), 0}});
  const ProblemStatement np(Family::nb, {{"x0", FeatureVector::nominal({"u"})}});
  EXPECT_EQ(evaluate(select_hypothesis(NbLearner{}, np, nt).hypothesis, FeatureVector::nominal({"u"})), 1.0);
}
