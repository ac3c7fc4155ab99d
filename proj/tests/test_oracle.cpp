#include <gtest/gtest.h>

#include "plearn/oracle.hpp"

using namespace plearn;
using namespace plearn::oracle;

namespace {

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

}  // namespace

TEST(GeneratorTest, SameSeedSameData) {
  RandomInstance spec;
  spec.seed = 17;
  spec.n = 3;
  spec.m = 20;
  spec.queries = 4;
  const auto a = generate_instance(spec);
  const auto b = generate_instance(spec);
  EXPECT_EQ(a.training, b.training);
  EXPECT_EQ(a.queries, b.queries);
  spec.seed = 18;
  EXPECT_FALSE(generate_instance(spec).training == a.training);
}

TEST(GeneratorTest, PigeonholeExhaustsRetries) {
  RandomInstance spec;
  spec.m = 20;
  spec.levels = 5;
  EXPECT_EQ(code_of([&] { generate_instance(spec); }), ErrorCode::exhausted_retries);
}

TEST(GeneratorTest, NoOutliersFollowTheBase) {
  RandomInstance spec;
  spec.seed = 2;
  spec.n = 1;
  spec.m = 20;
  spec.dependence.coefficients = {2.0};
  for (const auto& c : generate_instance(spec).training) {
    EXPECT_EQ(c.y, 2.0 * std::get<Numeric>(c.x[0]).value);
  }
  spec.labels = LabelScheme::binary_pm1;
  for (const auto& c : generate_instance(spec).training) {
    EXPECT_EQ(c.y, std::get<Numeric>(c.x[0]).value > 0.0 ? 1.0 : -1.0);
  }
}

TEST(GeneratorTest, NominalInstancesCarryDisjointSchemas) {
  RandomInstance spec;
  spec.n = 3;
  spec.m = 12;
  spec.kind = FeatureKind::nominal;
  spec.levels = 3;
  spec.labels = LabelScheme::binary01;
  const auto inst = generate_instance(spec);
  ASSERT_TRUE(inst.training.schema().has_value());
  EXPECT_NO_THROW(inst.training.schema()->check_disjoint_nominals());
}

TEST(GridTest, Examples) {
  const auto quad = grid_search_linear([](const LinearHypothesis& f) { return f.b[0] * f.b[0] + f.a * f.a; },
                                       Box{{-1, -1}, {1, 1}}, 0.5);
  EXPECT_EQ(quad.hypothesis.b[0], 0.0);
  EXPECT_EQ(quad.value, 0.0);

  const auto point = grid_search_linear([](const LinearHypothesis& f) { return f.b[0] + f.a; },
                                        Box{{0.7, -0.2}, {0.7, -0.2}}, 0.1);
  EXPECT_EQ(point.hypothesis.b[0], 0.7);
  EXPECT_EQ(point.hypothesis.a, -0.2);
}

TEST(GridTest, RefusesHugeLattices) {
  EXPECT_EQ(code_of([] {
              grid_search_linear([](const LinearHypothesis&) { return 0.0; }, square_box(2, 3.0), 0.001);
            }),
            ErrorCode::box_too_large);
}

TEST(GridTest, SvmGridBoundsTheSolver) {
  std::vector<Case> cases{{FeatureVector::numeric({-1}), -1}, {FeatureVector::numeric({1}), 1}};
  const auto t = validate_training_set(std::move(cases));
  const SvmParams p{0.01};
  const auto d = numeric_data(t, 1);
  const auto grid = grid_search_linear([&](const LinearHypothesis& f) { return svm_objective(f, d, p); },
                                       square_box(1, 3.0), 0.01);
  EXPECT_LE(svm_solve(t, p).report.total, grid.value + 1e-3);
}

TEST(FeasibleSlackTest, ZeroNoiseGivesTheClosedForm) {
  const auto trial = random_svm_trial(12);
  EXPECT_EQ(random_feasible_slack(trial.f, trial.training, 1, 0.0), svm_slack(trial.f, trial.training));
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_TRUE(slack_feasible(trial.f, trial.training, random_feasible_slack(trial.f, trial.training, s)));
  }
}

TEST(BruteNbTest, SingleFeatureEqualsCaseInconsistency) {
  const auto t = validate_training_set({{FeatureVector::nominal({"u"}), 1},
                                        {FeatureVector::nominal({"v"}), 0},
                                        {FeatureVector::nominal({"w"}), 1}});
  const auto q = FeatureVector::nominal({"v"});
  const auto p = nb_transform(q, t);
  EXPECT_EQ(brute_nb_total(q, t, 1.0), nb_case_inconsistency({"v", 0, 1.0}, p.cases));
  EXPECT_EQ(brute_nb_total(FeatureVector::nominal({"z"}), t, 1.0), 0.5);
}

TEST(EquivalenceChecksTest, PassOnTheRealSlack) {
  for (const auto& c : run_equivalence_checks(1, 20)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(check_slack_identity(1, 200).passed);
}

TEST(EquivalenceChecksTest, FlippedSignIsCaught) {
  // max(0, 1 + y f(x)) in place of max(0, 1 - y f(x)).
  const SlackRule flipped = [](const LinearHypothesis& f, const NumericData& d) {
    SlackVector z;
    for (std::size_t i = 0; i < d.size(); ++i) z.zeta.push_back(std::max(0.0, 1.0 + d.y[i] * f(d.x[i])));
    return z;
  };
  const auto outcome = check_statement1(1, 100, flipped);
  EXPECT_FALSE(outcome.passed);
  ASSERT_TRUE(outcome.failing_seed.has_value());

  // The reported seed reproduces the failure on its own.
  const auto again = check_statement1(*outcome.failing_seed, 1, flipped);
  EXPECT_FALSE(again.passed);
  EXPECT_EQ(again.failing_seed, outcome.failing_seed);
}

TEST(EquivalenceChecksTest, ShrunkSlackBreaksMinimalityHarness) {
  // A slack that is too small is infeasible, which the harness reports as a failure.
  const SlackRule shrunk = [](const LinearHypothesis& f, const NumericData& d) {
    auto z = svm_slack(f, d);
    for (auto& v : z.zeta) v *= 0.5;
    return z;
  };
  EXPECT_FALSE(check_lemma_identity(1, 100, shrunk).passed);
}
