#include <gtest/gtest.h>

#include "plearn/linear.hpp"
#include "plearn/local.hpp"
#include "plearn/oracle.hpp"

using namespace plearn;

namespace {

TrainingSet numeric_set(std::initializer_list<std::pair<double, double>> xy) {
  std::vector<Case> cases;
  for (auto [x, y] : xy) cases.push_back({FeatureVector::numeric({x}), y});
  return validate_training_set(std::move(cases));
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

LinearHypothesis identity_line() { return {{1.0}, 0.0}; }

}  // namespace

TEST(TrainingSetTest, AcceptsDistinctPoints) {
  const auto t = numeric_set({{0, 1}, {1, 0}});
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.dimension(), 1u);
}

TEST(TrainingSetTest, RejectsDuplicateFeatureVectors) {
  try {
    numeric_set({{0, 1}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::duplicate_feature_vector);
    EXPECT_NE(std::string(e.what()).find("cases 1 and 2"), std::string::npos) << e.what();
  }
}

TEST(TrainingSetTest, RejectsEmptyAndMixedInput) {
  EXPECT_EQ(code_of([] { validate_training_set({}); }), ErrorCode::empty_set);
  EXPECT_EQ(code_of([] {
              validate_training_set({{FeatureVector::numeric({1}), 0}, {FeatureVector::numeric({1, 2}), 0}});
            }),
            ErrorCode::schema_mismatch);
  EXPECT_EQ(code_of([] {
              validate_training_set({{FeatureVector::numeric({1}), 0}, {FeatureVector::ordinal({1}), 0}});
            }),
            ErrorCode::schema_mismatch);
  EXPECT_EQ(code_of([] { numeric_set({{std::nan(""), 0}}); }), ErrorCode::schema_mismatch);
}

TEST(TrainingSetTest, SchemaBoundsOrdinalAndNominalValues) {
  FeatureSchema s{{{"size", FeatureKind::ordinal, {"s", "m", "l"}}}};
  EXPECT_NO_THROW(validate_training_set({{FeatureVector::ordinal({2}), 0}}, s));
  EXPECT_EQ(code_of([&] { validate_training_set({{FeatureVector::ordinal({3}), 0}}, s); }),
            ErrorCode::schema_mismatch);

  FeatureSchema overlapping{{{"a", FeatureKind::nominal, {"p", "q"}}, {"b", FeatureKind::nominal, {"q"}}}};
  EXPECT_EQ(code_of([&] { overlapping.check_disjoint_nominals(); }), ErrorCode::non_disjoint_value_sets);
}

TEST(FeatureVectorTest, ComponentIsOneBased) {
  const auto x = FeatureVector::numeric({3, 4});
  EXPECT_EQ(std::get<Numeric>(x.component(1)).value, 3.0);
  EXPECT_EQ(std::get<Numeric>(x.component(2)).value, 4.0);
  EXPECT_EQ(code_of([&] { x.component(0); }), ErrorCode::dimension_mismatch);
  EXPECT_EQ(code_of([&] { x.component(3); }), ErrorCode::dimension_mismatch);
}

TEST(HypothesisTest, HypotheticalCases) {
  const std::vector<FeatureVector> at2{FeatureVector::numeric({2})};
  const auto cases = hypothetical_cases(identity_line(), at2);
  ASSERT_EQ(cases.size(), 1u);
  EXPECT_EQ(cases[0], (Case{FeatureVector::numeric({2}), 2.0}));

  const Hypothesis point = PointwiseHypothesis{FeatureVector::numeric({1}), 0.0};
  const std::vector<FeatureVector> at1{FeatureVector::numeric({1})};
  EXPECT_EQ(hypothetical_cases(point, at1)[0].y, 0.0);
  EXPECT_EQ(code_of([&] { hypothetical_cases(point, at2); }), ErrorCode::undefined_at);
}

TEST(HypothesisTest, LinearEvaluationIsDotPlusIntercept) {
  const LinearHypothesis f{{2.0, -1.0}, 0.5};
  EXPECT_EQ(evaluate(f, FeatureVector::numeric({1, 3})), 2.0 - 3.0 + 0.5);
  EXPECT_EQ(code_of([&] { evaluate(f, FeatureVector::numeric({1})); }), ErrorCode::dimension_mismatch);
}

TEST(HypothesisTest, MergedCases) {
  const std::vector<FeatureVector> at1{FeatureVector::numeric({1})};
  const std::vector<FeatureVector> at2{FeatureVector::numeric({2})};

  EXPECT_EQ(merged_cases(identity_line(), numeric_set({{1, 1}}), at1).size(), 1u);

  const auto grown = merged_cases(identity_line(), numeric_set({{1, 1}}), at2);
  ASSERT_EQ(grown.size(), 2u);
  EXPECT_EQ(grown[1], (Case{FeatureVector::numeric({2}), 2.0}));

  // A hypothetical case conflicting with an observation is a different case.
  const auto conflicting = merged_cases(identity_line(), numeric_set({{1, 0}}), at1);
  ASSERT_EQ(conflicting.size(), 2u);
  EXPECT_EQ(conflicting[0].y, 0.0);
  EXPECT_EQ(conflicting[1].y, 1.0);
}

TEST(ErmTest, Examples) {
  EXPECT_EQ(erm_total_inconsistency(LinearHypothesis{{0.0}, 0.0}, numeric_set({{1, 0.5}})), 0.5);
  EXPECT_EQ(erm_total_inconsistency(identity_line(), numeric_set({{1, 1}, {2, 2}})), 0.0);
}

TEST(ErmTest, ReportReaggregates) {
  const auto t = numeric_set({{0, 1}, {1, 3}, {2, -1}});
  const auto r = erm_report(LinearHypothesis{{0.5}, 0.25}, t);
  double s = 0.0;
  for (const auto& e : r.entries) {
    EXPECT_GE(e.mu, 0.0);
    EXPECT_EQ(e.counterpart_source, opposite(e.baseline_source));
    s += e.mu;
  }
  EXPECT_EQ(s, r.total);
}

TEST(ProblemStatementTest, ValidatesParameters) {
  EXPECT_NO_THROW(ProblemStatement(Family::svm, {{"w", 0.1}}));
  EXPECT_EQ(code_of([] { ProblemStatement(Family::svm, {}); }), ErrorCode::invalid_parameter);
  EXPECT_EQ(code_of([] { ProblemStatement(Family::svm, {{"w", 0.1}, {"k", 3.0}}); }), ErrorCode::invalid_parameter);
  EXPECT_EQ(code_of([] { ProblemStatement(Family::knn, {{"x0", FeatureVector::numeric({0})}}); }),
            ErrorCode::invalid_parameter);
}

namespace {

// Two fixed candidates with prescribed totals.
struct TwoValueLearner {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  Family family() const { return Family::knn; }
  std::vector<Hypothesis> candidates(const ProblemStatement& p, const TrainingSet&) const {
    return {PointwiseHypothesis{p.point("x0"), 0.0}, PointwiseHypothesis{p.point("x0"), 1.0}};
  }
  InconsistencyReport inconsistency(const Hypothesis& h, const ProblemStatement& p, const TrainingSet&) const {
    const double v = evaluate(h, p.point("x0")) == 0.0 ? lambda0 : lambda1;
    return make_report("h", Aggregation::sum, 0.0, {ReportEntry{{}, {}, {}, v, 1}});
  }
};

}  // namespace

static_assert(FiniteParadigm<KnnLearner>);
static_assert(FiniteParadigm<DtreeLearner>);
static_assert(FiniteParadigm<NbLearner>);
static_assert(ContinuousParadigm<SmoothingLearner>);
static_assert(ContinuousParadigm<SvmLearner>);
static_assert(ContinuousParadigm<SvrLearner>);
static_assert(ContinuousParadigm<ErmLearner>);

TEST(SelectHypothesisTest, ArgminAndTieRule) {
  const ProblemStatement p(Family::knn, {{"x0", FeatureVector::numeric({0})}, {"k", 1.0}});
  const auto t = numeric_set({{0, 1}});
  EXPECT_EQ(evaluate(select_hypothesis(TwoValueLearner{0.2, 0.7}, p, t).hypothesis, FeatureVector::numeric({0})),
            0.0);
  EXPECT_EQ(evaluate(select_hypothesis(TwoValueLearner{0.7, 0.2}, p, t).hypothesis, FeatureVector::numeric({0})),
            1.0);
  EXPECT_EQ(evaluate(select_hypothesis(TwoValueLearner{0.5, 0.5}, p, t).hypothesis, FeatureVector::numeric({0})),
            0.0);
}

TEST(SelectHypothesisTest, RejectsForeignProblem) {
  const ProblemStatement p(Family::svm, {{"w", 0.1}});
  EXPECT_EQ(code_of([&] { select_hypothesis(KnnLearner{}, p, numeric_set({{0, 1}})); }),
            ErrorCode::incompatible_family);
}

TEST(SelectHypothesisTest, SmoothingReturnsCounterpartMean) {
  const auto t = numeric_set({{0, 2}, {1, 4}, {5, 9}});
  const ProblemStatement p(Family::smoothing, {{"x0", FeatureVector::numeric({0.4})}, {"k", 2.0}});
  const auto sel = select_hypothesis(SmoothingLearner{}, p, t);
  EXPECT_EQ(evaluate(sel.hypothesis, FeatureVector::numeric({0.4})), 3.0);
  EXPECT_EQ(sel.report.total, 0.0);
}

TEST(SelectHypothesisTest, ErmMinimisesAbsoluteLoss) {
  const auto t = numeric_set({{0, 0}, {1, 2}, {2, 4}, {3, 6}});
  const auto sel = select_hypothesis(ErmLearner{}, ProblemStatement(Family::erm, {}), t);
  EXPECT_LT(sel.report.total, 1e-3);
  EXPECT_EQ(sel.report.total, erm_total_inconsistency(sel.hypothesis, t));
}

TEST(SelectHypothesisTest, FiniteArgminMatchesEnumeration) {
  // Property: the selected report total is the minimum over the candidates.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    oracle::RandomInstance spec;
    spec.seed = seed;
    spec.m = 12;
    spec.labels = oracle::LabelScheme::binary01;
    spec.dependence.outlier_fraction = 0.3;
    spec.queries = 1;
    const auto inst = oracle::generate_instance(spec);
    const ProblemStatement p(Family::knn, {{"x0", inst.queries[0]}, {"k", 3.0}});
    const auto sel = select_hypothesis(KnnLearner{}, p, inst.training);
    for (const auto& h : KnnLearner{}.candidates(p, inst.training)) {
      EXPECT_LE(sel.report.total, KnnLearner{}.inconsistency(h, p, inst.training).total);
    }
  }
}

TEST(AggregateTest, Rules) {
  std::vector<ReportEntry> e(3);
  e[0].mu = 0.5;
  e[1].mu = 0.25;
  e[2].mu = 2.0;
  EXPECT_EQ(aggregate(e, Aggregation::sum), 2.75);
  EXPECT_EQ(aggregate(e, Aggregation::product), 0.25);
  EXPECT_EQ(aggregate(e, Aggregation::mean_plus_penalty, 1.0), 1.0 + 2.75 / 3.0);
  EXPECT_EQ(aggregate(e, Aggregation::sum_plus_penalty, 1.0), 3.75);
}

TEST(AggregateTest, SumAndProductAreMonotoneInEachMu) {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ReportEntry> e(1 + rng.below(6));
    for (auto& x : e) x.mu = rng.unit();
    const std::size_t i = rng.below(e.size());
    auto bumped = e;
    bumped[i].mu += rng.unit();
    for (auto how : {Aggregation::sum, Aggregation::product, Aggregation::mean_plus_penalty}) {
      EXPECT_LE(aggregate(e, how, 0.1), aggregate(bumped, how, 0.1));
    }
  }
}

TEST(FeedbackTest, ReencodeIsExplicitAndReversible) {
  const auto t = numeric_set({{0, 0}, {1, 1}});
  EXPECT_EQ(code_of([&] { require_feedback(t, FeedbackDomain::binary_pm1); }), ErrorCode::schema_mismatch);
  const auto pm = reencode(t, FeedbackDomain::binary01, FeedbackDomain::binary_pm1);
  EXPECT_EQ(pm[0].y, -1.0);
  EXPECT_EQ(pm[1].y, 1.0);
  EXPECT_EQ(reencode(pm, FeedbackDomain::binary_pm1, FeedbackDomain::binary01), t);
}

TEST(ExactTest, DifferenceUpNeverUnderestimates) {
  oracle::Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double hi = rng.uniform(-1e3, 1e3);
    const double lo = rng.uniform(-1e3, 1e3);
    const double d = exact::difference_up(hi, lo);
    // lo + d >= hi over the reals, and d is the smallest such double.
    EXPECT_TRUE(exact::sum_at_least(lo, d, hi));
    EXPECT_FALSE(exact::sum_at_least(lo, std::nextafter(d, -INFINITY), hi));
  }
}

TEST(FormatTest, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}
