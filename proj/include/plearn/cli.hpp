#ifndef PLEARN_CLI_HPP
#define PLEARN_CLI_HPP

// The plearn command line: train, predict, audit, verify.
//
// Exit codes: 0 success, 1 data or solver error (and failed verification),
// 2 usage error. Standard output carries only results.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plearn/dataio.hpp"
#include "plearn/linear.hpp"
#include "plearn/local.hpp"
#include "plearn/oracle.hpp"

namespace plearn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag combinations that CLI11 cannot see on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string learner;
  std::filesystem::path data;
  std::optional<std::string> target;
  std::optional<std::filesystem::path> schema;
  std::optional<std::filesystem::path> out;
  std::filesystem::path model;
  std::filesystem::path query;

  std::optional<std::size_t> k;
  std::optional<double> radius;
  std::string metric = "euclidean";
  double w = SvmParams{}.w;
  double epsilon = 0.0;
  double lambda = 0.0;
  std::size_t max_depth = TreeConfig{}.max_depth;
  std::size_t min_leaf = TreeConfig{}.min_leaf_size;
  double purity = TreeConfig{}.purity_threshold;
  SolverConfig solver;

  std::uint64_t seed = 1;
  std::size_t trials = 1000;
};

// ---------------------------------------------------------------------------
// Audits

struct AuditRow {
  std::size_t row = 0;  // 1-based data row
  ReportEntry entry;
  std::optional<std::size_t> leaf;
};

struct Audit {
  Aggregation aggregation = Aggregation::sum;
  double penalty = 0.0;
  std::vector<AuditRow> rows;
  /// Aggregated in data-row order.
  double total = 0.0;
};

namespace detail {

inline Audit audit_from_report(const InconsistencyReport& r) {
  Audit a{r.aggregation, r.penalty, {}, r.total};
  for (std::size_t i = 0; i < r.entries.size(); ++i) a.rows.push_back({i + 1, r.entries[i], std::nullopt});
  return a;
}

inline ReportEntry row_entry(const Case& c, const CounterpartSet& cps) {
  return {c, Provenance::from_training, cps.provenance, smoothing_case_inconsistency(c.y, cps), cps.members.size()};
}

}  // namespace detail

/// Linear models: the learner's own report over the dataset.
/// Pointwise models: each row is audited as a query point x0 with h(x0) set
/// to the observed label; mu is that row's total inconsistency and the rows
/// are summed.
inline Audit audit(const io::ModelFile& model, const TrainingSet& t) {
  const auto& s = model.settings;
  if (const auto* lin = std::get_if<LinearHypothesis>(&model.payload)) {
    if (s.family == Family::svm) return detail::audit_from_report(svm_report(*lin, t, s.svm));
    return detail::audit_from_report(svr_report(*lin, t, s.svr));
  }
  std::vector<ReportEntry> entries;
  std::vector<std::optional<std::size_t>> leaves;
  switch (s.family) {
    case Family::smoothing:
    case Family::knn: {
      if (s.family == Family::knn) require_feedback(t, FeedbackDomain::binary01);
      const auto spec = s.family == Family::knn ? NeighborhoodSpec{KNearest{*s.k}, s.metric} : s.neighborhood();
      for (const auto& c : t) entries.push_back(detail::row_entry(c, smoothing_counterparts(c.x, t, spec)));
      break;
    }
    case Family::dtree: {
      const auto& tree = std::get<TreePartition>(model.payload);
      require_feedback(t, FeedbackDomain::binary01);
      for (const auto& c : t) {
        entries.push_back(detail::row_entry(c, dtree_counterparts(c.x, tree, t)));
        const auto& leaf = std::get<LeafNode>(tree.nodes()[tree.route(c.x)].body);
        leaves.push_back(leaf.id);
      }
      break;
    }
    case Family::nb: {
      for (const auto& c : t) {
        const auto p = nb_transform(c.x, t);
        const auto r = nb_report(p, c.x, c.y);
        std::size_t count = 0;
        for (const auto& e : r.entries) count += e.counterparts.value_or(0);
        entries.push_back({c, Provenance::from_training, Provenance::from_training, r.total, count});
      }
      break;
    }
    default: throw Error(ErrorCode::model_format, "model carries no hypothesis for " + std::string(to_string(s.family)));
  }
  auto report = make_report("per-row audit", Aggregation::sum, 0.0, std::move(entries));
  Audit a = detail::audit_from_report(report);
  for (std::size_t i = 0; i < leaves.size(); ++i) a.rows[i].leaf = leaves[i];
  return a;
}

inline nlohmann::json to_json(const Audit& a, const io::ModelFile& model) {
  std::vector<const AuditRow*> order;
  for (const auto& r : a.rows) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const AuditRow* l, const AuditRow* r) { return l->entry.mu > r->entry.mu; });
  nlohmann::json rows = nlohmann::json::array();
  for (const auto* r : order) {
    nlohmann::json j{{"row", r->row},
                     {"x", describe(r->entry.baseline.x)},
                     {"y", r->entry.baseline.y},
                     {"mu", r->entry.mu},
                     {"counterparts", nullptr}};
    if (r->entry.counterparts) j["counterparts"] = *r->entry.counterparts;
    if (r->leaf) j["leaf"] = *r->leaf;
    rows.push_back(std::move(j));
  }
  return {{"learner", to_string(model.settings.family)},
          {"aggregation", to_string(a.aggregation)},
          {"penalty", a.penalty},
          {"total", a.total},
          {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline io::LearnerSettings settings_from(const Options& o) {
  io::LearnerSettings s;
  s.family = parse_family(o.learner);
  s.k = o.k;
  s.radius = o.radius;
  s.metric = parse_metric(o.metric);
  s.svm.w = o.w;
  s.svr = {o.epsilon, o.lambda};
  s.tree = {o.max_depth, o.min_leaf, o.purity};
  s.solver = o.solver;
  if (s.family == Family::knn && !s.k) throw UsageError("knn needs --k");
  if (s.family == Family::smoothing && s.k.has_value() == s.radius.has_value()) {
    throw UsageError("smoothing needs exactly one of --k and --radius");
  }
  try {
    s.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return s;
}

inline std::map<std::string, ColumnSpec> declared_columns(const FeatureSchema& schema) {
  std::map<std::string, ColumnSpec> out;
  for (const auto& c : schema.columns) out.emplace(c.name, c);
  return out;
}

/// Loads a dataset against a saved model's columns.
inline TrainingSet load_for_model(const io::ModelFile& m, const std::filesystem::path& path) {
  auto d = io::load_dataset(path, m.target, declared_columns(m.features));
  if (!(d.features == m.features)) {
    throw Error(ErrorCode::schema_mismatch, path.string() + ": feature columns differ from the model's");
  }
  return std::move(d.training);
}

inline TrainingSet matching_training_data(const io::ModelFile& m, const Options& o) {
  if (o.data.empty()) throw UsageError(std::string(to_string(m.settings.family)) + " models need --data");
  auto t = load_for_model(m, o.data);
  if (io::content_hash(t) != m.data_hash) {
    throw Error(ErrorCode::schema_mismatch, o.data.string() + " is not the data this model was trained on");
  }
  return t;
}

inline void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (!o.out) {
    out << text;
    return;
  }
  std::ofstream f(*o.out);
  if (!f) throw Error(ErrorCode::io_error, "cannot write " + o.out->string());
  f << text;
}

}  // namespace detail

inline int cmd_train(const Options& o, std::ostream& out) {
  const auto settings = detail::settings_from(o);
  if (settings.family == Family::erm) throw UsageError("erm is available through svr with --epsilon 0 --lambda 0");
  if (!o.out) throw UsageError("train needs --out");
  const auto data = io::load_dataset({o.data, o.target, o.schema});
  const TrainingSet& t = data.training;

  io::ModelFile model{settings, data.features, data.target, io::content_hash(t), 0.0, std::monostate{}};
  std::string extra;
  if (settings.family == Family::svm || settings.family == Family::svr) {
    const auto result = settings.family == Family::svm ? svm_solve(t, settings.svm, settings.solver)
                                                       : svr_solve(t, settings.svr, settings.solver);
    model.payload = result.hypothesis;
    extra = "hypothesis: " + describe(Hypothesis{result.hypothesis}) + "\nepochs: " + std::to_string(result.epochs) +
            "\nconverged: " + (result.converged ? "true" : "false") + "\n";
  } else if (settings.family == Family::dtree) {
    const auto tree = dtree_build(t, settings.tree);
    extra = "leaves: " + std::to_string(tree.leaf_count()) + "\n";
    model.payload = tree;
  }
  model.train_total = audit(model, t).total;
  io::save_model(model, *o.out);

  out << "learner: " << to_string(settings.family) << '\n'
      << "params: " << io::to_json(settings).dump() << '\n'
      << "cases: " << t.size() << '\n'
      << "total_inconsistency: " << format_real(model.train_total) << '\n'
      << extra;
  return kExitOk;
}

inline int cmd_predict(const Options& o, std::ostream& out) {
  const auto model = io::load_model(o.model);
  const auto queries = io::load_queries(o.query, model.features);
  const auto& s = model.settings;
  std::optional<TrainingSet> t;
  if (s.pointwise()) t = detail::matching_training_data(model, o);

  std::string text;
  for (const auto& x : queries) {
    double v = 0.0;
    switch (s.family) {
      case Family::svm: v = std::get<LinearHypothesis>(model.payload)(x.reals()) > 0.0 ? 1.0 : -1.0; break;
      case Family::svr: v = std::get<LinearHypothesis>(model.payload)(x.reals()); break;
      case Family::smoothing: v = smoothing_fit(x, *t, s.neighborhood()).value; break;
      case Family::knn: v = knn_predict(x, *t, *s.k, s.metric).label; break;
      case Family::dtree: v = dtree_predict(x, std::get<TreePartition>(model.payload), *t).label; break;
      case Family::nb: v = nb_predict(x, *t).label; break;
      default: throw Error(ErrorCode::model_format, "cannot predict with " + std::string(to_string(s.family)));
    }
    text += format_real(v) + '\n';
  }
  detail::emit(o, out, text);
  return kExitOk;
}

inline int cmd_audit(const Options& o, std::ostream& out) {
  const auto model = io::load_model(o.model);
  if (o.data.empty()) throw UsageError("audit needs --data");
  const TrainingSet t =
      model.settings.pointwise() ? detail::matching_training_data(model, o) : detail::load_for_model(model, o.data);
  detail::emit(o, out, to_json(audit(model, t), model).dump(2) + '\n');
  return kExitOk;
}

/// Runs the SVM/SVM* equivalence checks; `rule` is replaceable so tests can
/// confirm a broken slack formula is caught.
inline int run_verify(std::uint64_t seed, std::size_t trials, std::ostream& out,
                      const oracle::SlackRule& rule = oracle::closed_form_slack()) {
  bool all = true;
  for (const auto& c : oracle::run_equivalence_checks(seed, trials, {}, rule)) {
    if (c.passed) {
      out << "PASS " << c.name << " (" << c.trials << " trials)\n";
    } else {
      all = false;
      out << "FAIL " << c.name << " seed=" << c.failing_seed.value_or(seed) << ": " << c.detail << '\n';
    }
  }
  return all ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Practical-learning toolkit: train, predict, audit and verify", "plearn"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> learners{"smoothing", "knn", "dtree", "nb", "svm", "svr"};
  auto* train = app.add_subcommand("train", "Fit a learner and write a model file");
  train->add_option("--learner", o.learner, "Learner family")->required()->check(CLI::IsMember(learners));
  train->add_option("--data", o.data, "Training data (CSV with header)")->required();
  train->add_option("--target", o.target, "Feedback column (default: last column)");
  train->add_option("--schema", o.schema, "Sidecar JSON declaring ordinal/nominal columns");
  train->add_option("--out", o.out, "Model file to write")->required();
  train->add_option("--k", o.k, "Neighbourhood size")->check(CLI::PositiveNumber);
  train->add_option("--radius", o.radius, "Neighbourhood radius")->check(CLI::PositiveNumber);
  train->add_option("--metric", o.metric, "euclidean or manhattan")->check(CLI::IsMember({"euclidean", "manhattan"}));
  train->add_option("--w", o.w, "SVM regularisation weight");
  train->add_option("--epsilon", o.epsilon, "SVR insensitivity");
  train->add_option("--lambda", o.lambda, "SVR regularisation weight");
  train->add_option("--max-depth", o.max_depth, "Tree depth limit")->check(CLI::PositiveNumber);
  train->add_option("--min-leaf", o.min_leaf, "Minimum cases per tree leaf")->check(CLI::PositiveNumber);
  train->add_option("--purity", o.purity, "Leaf purity threshold in [0, 0.5]")->check(CLI::Range(0.0, 0.5));
  train->add_option("--eta0", o.solver.eta0, "Initial step length");
  train->add_option("--decay", o.solver.decay, "Step length decay");
  train->add_option("--tol", o.solver.tol, "Convergence tolerance on the objective");
  train->add_option("--max-iters", o.solver.max_iters, "Epoch limit");

  auto* predict = app.add_subcommand("predict", "Predict one value per query row");
  predict->add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
  predict->add_option("--query", o.query, "Query rows (feature columns only)")->required()->check(CLI::ExistingFile);
  predict->add_option("--data", o.data, "Training data, required for pointwise learners");
  predict->add_option("--out", o.out, "Write predictions here instead of standard output");

  auto* audit_cmd = app.add_subcommand("audit", "Per-case inconsistency report as JSON");
  audit_cmd->add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
  audit_cmd->add_option("--data", o.data, "Dataset to audit")->required();
  audit_cmd->add_option("--out", o.out, "Write the report here instead of standard output");

  auto* verify = app.add_subcommand("verify", "Randomized SVM/SVM* equivalence checks");
  verify->add_option("--seed", o.seed, "Base seed");
  verify->add_option("--trials", o.trials, "Trials per check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "plearn: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(o, out);
    if (predict->parsed()) return cmd_predict(o, out);
    if (audit_cmd->parsed()) return cmd_audit(o, out);
    const int code = run_verify(o.seed, o.trials, out);
    if (code != kExitOk) err << "plearn: verification failed\n";
    return code;
  } catch (const UsageError& e) {
    err << "plearn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "plearn: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace plearn::cli

#endif  // PLEARN_CLI_HPP
