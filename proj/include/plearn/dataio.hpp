#ifndef PLEARN_DATAIO_HPP
#define PLEARN_DATAIO_HPP

// Delimited-text datasets with an optional JSON sidecar schema, and the JSON
// model file format.
//
// Sidecar schema:
//   {"columns": {"size": {"kind": "ordinal", "values": ["small", "large"]},
//                "colour": {"kind": "nominal", "values": ["red", "blue"]}}}
// Columns not listed are numeric. The feedback column is always numeric.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "plearn/core.hpp"
#include "plearn/linear.hpp"
#include "plearn/local.hpp"

namespace plearn::io {

inline constexpr std::string_view kModelFormat = "plearn-model";
inline constexpr int kModelVersion = 1;
inline constexpr std::string_view kLibraryVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Text parsing

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

/// Splits one line on commas; double quotes protect embedded commas.
inline std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"') {
      if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = !quoted;
      }
    } else if (c == ',' && !quoted) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

struct Table {
  std::vector<std::string> header;
  /// (1-based data row, fields)
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

inline Table read_table(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  Table t;
  std::string line;
  std::size_t line_no = 0;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_row(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    ++row_no;
    if (fields.size() != t.header.size()) {
      throw Error(ErrorCode::parse_error, path.string() + ": row " + std::to_string(row_no) + " has " +
                                              std::to_string(fields.size()) + " fields, header has " +
                                              std::to_string(t.header.size()));
    }
    t.rows.emplace_back(row_no, std::move(fields));
  }
  if (t.header.empty()) throw Error(ErrorCode::parse_error, path.string() + ": missing header row");
  return t;
}

inline std::optional<double> parse_real(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------
// Schema

inline FeatureKind parse_kind(std::string_view name) {
  if (name == "numeric") return FeatureKind::numeric;
  if (name == "ordinal") return FeatureKind::ordinal;
  if (name == "nominal") return FeatureKind::nominal;
  throw Error(ErrorCode::unknown_column_kind, "column kind '" + std::string(name) + "'");
}

/// Column declarations keyed by column name.
inline std::map<std::string, ColumnSpec> load_schema(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
  if (!doc.contains("columns") || !doc["columns"].is_object()) {
    throw Error(ErrorCode::parse_error, path.string() + ": expected an object under \"columns\"");
  }
  std::map<std::string, ColumnSpec> out;
  for (const auto& [name, spec] : doc["columns"].items()) {
    if (!spec.contains("kind") || !spec["kind"].is_string()) {
      throw Error(ErrorCode::unknown_column_kind, "column '" + name + "' has no kind");
    }
    ColumnSpec col{name, parse_kind(spec["kind"].get<std::string>()), {}};
    if (spec.contains("values")) col.values = spec["values"].get<std::vector<std::string>>();
    if (col.kind != FeatureKind::numeric && col.values.empty()) {
      throw Error(ErrorCode::schema_mismatch, "column '" + name + "' must enumerate its values");
    }
    out.emplace(name, std::move(col));
  }
  return out;
}

namespace detail {

inline FeatureValue parse_cell(const std::string& token, const ColumnSpec& col, std::size_t row, std::size_t column) {
  auto where = [&] {
    return "row " + std::to_string(row) + ", column " + std::to_string(column + 1) + " ('" + col.name + "')";
  };
  switch (col.kind) {
    case FeatureKind::numeric: {
      const auto v = parse_real(token);
      if (!v) throw Error(ErrorCode::parse_error, where() + ": '" + token + "' is not a number");
      return Numeric{*v};
    }
    case FeatureKind::ordinal: {
      const auto it = std::find(col.values.begin(), col.values.end(), token);
      if (it == col.values.end()) throw Error(ErrorCode::parse_error, where() + ": '" + token + "' is not a declared level");
      return Ordinal{static_cast<std::size_t>(it - col.values.begin())};
    }
    case FeatureKind::nominal: {
      if (std::find(col.values.begin(), col.values.end(), token) == col.values.end()) {
        throw Error(ErrorCode::parse_error, where() + ": '" + token + "' is not a declared symbol");
      }
      return Nominal{token};
    }
  }
  throw Error(ErrorCode::unknown_column_kind, where());
}

inline std::vector<std::size_t> locate(const std::vector<std::string>& header, const FeatureSchema& schema,
                                       const std::string& file) {
  std::vector<std::size_t> at;
  for (const auto& col : schema.columns) {
    const auto it = std::find(header.begin(), header.end(), col.name);
    if (it == header.end()) throw Error(ErrorCode::schema_mismatch, file + ": missing column '" + col.name + "'");
    at.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return at;
}

inline FeatureVector parse_features(const std::vector<std::string>& fields, const FeatureSchema& schema,
                                    const std::vector<std::size_t>& at, std::size_t row) {
  std::vector<FeatureValue> values;
  values.reserve(at.size());
  for (std::size_t i = 0; i < at.size(); ++i) values.push_back(parse_cell(fields[at[i]], schema.columns[i], row, at[i]));
  return FeatureVector(std::move(values));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Datasets

struct DatasetFile {
  std::filesystem::path path;
  /// Feedback column; the last column when unset.
  std::optional<std::string> target;
  std::optional<std::filesystem::path> schema;
};

struct Dataset {
  TrainingSet training;
  FeatureSchema features;
  std::string target;
};

/// Columns absent from `declared` are numeric.
inline Dataset load_dataset(const std::filesystem::path& path, const std::optional<std::string>& target_name,
                            const std::map<std::string, ColumnSpec>& declared) {
  const Table table = read_table(path);
  const std::string name = path.string();
  const std::string target = target_name.value_or(table.header.back());
  const auto target_it = std::find(table.header.begin(), table.header.end(), target);
  if (target_it == table.header.end()) throw Error(ErrorCode::schema_mismatch, name + ": no column '" + target + "'");
  const auto target_at = static_cast<std::size_t>(target_it - table.header.begin());

  FeatureSchema schema;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == target_at) continue;
    const auto it = declared.find(table.header[c]);
    schema.columns.push_back(it != declared.end() ? it->second : ColumnSpec{table.header[c], FeatureKind::numeric, {}});
  }
  for (const auto& [col, _] : declared) {
    if (col != target && std::find(table.header.begin(), table.header.end(), col) == table.header.end()) {
      throw Error(ErrorCode::schema_mismatch, name + ": schema declares unknown column '" + col + "'");
    }
  }
  if (table.rows.empty()) throw Error(ErrorCode::empty_set, name + ": no data rows");

  const auto at = detail::locate(table.header, schema, name);
  std::vector<Case> cases;
  std::map<FeatureVector, std::size_t> first_row;
  for (const auto& [row, fields] : table.rows) {
    FeatureVector x = detail::parse_features(fields, schema, at, row);
    const auto y = parse_real(fields[target_at]);
    if (!y) {
      throw Error(ErrorCode::parse_error, name + ": row " + std::to_string(row) + ", column " +
                                              std::to_string(target_at + 1) + " ('" + target + "'): '" +
                                              fields[target_at] + "' is not a number");
    }
    auto [it, inserted] = first_row.emplace(x, row);
    if (!inserted) {
      throw Error(ErrorCode::duplicate_feature_vector, name + ": rows " + std::to_string(it->second) + " and " +
                                                           std::to_string(row) + " share feature vector " +
                                                           describe(x));
    }
    cases.push_back({std::move(x), *y});
  }
  schema.check_disjoint_nominals();
  return {validate_training_set(std::move(cases), schema), std::move(schema), target};
}

inline Dataset load_dataset(const DatasetFile& file) {
  return load_dataset(file.path, file.target, file.schema ? load_schema(*file.schema) : std::map<std::string, ColumnSpec>{});
}

/// Query rows carrying exactly the model's feature columns.
inline std::vector<FeatureVector> load_queries(const std::filesystem::path& path, const FeatureSchema& schema) {
  const Table table = read_table(path);
  if (table.header.size() != schema.columns.size()) {
    throw Error(ErrorCode::schema_mismatch, path.string() + ": query has " + std::to_string(table.header.size()) +
                                                " columns, model expects " + std::to_string(schema.columns.size()));
  }
  const auto at = detail::locate(table.header, schema, path.string());
  std::vector<FeatureVector> out;
  for (const auto& [row, fields] : table.rows) out.push_back(detail::parse_features(fields, schema, at, row));
  return out;
}

/// FNV-1a over a canonical rendering of the cases.
inline std::string content_hash(const TrainingSet& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& c : t) {
    feed(describe(c.x));
    feed("->");
    feed(format_real(c.y));
    feed("\n");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Learner settings

struct LearnerSettings {
  Family family = Family::svm;
  std::optional<std::size_t> k;
  std::optional<double> radius;
  Metric metric = Metric::euclidean;
  SvmParams svm;
  SvrParams svr;
  TreeConfig tree;
  SolverConfig solver;

  bool pointwise() const noexcept { return family != Family::svm && family != Family::svr && family != Family::erm; }

  void validate() const {
    switch (family) {
      case Family::smoothing:
        if (k.has_value() == radius.has_value()) {
          throw Error(ErrorCode::invalid_parameter, "smoothing needs exactly one of k and radius");
        }
        if (k && *k == 0) throw Error(ErrorCode::invalid_parameter, "k must be positive");
        if (radius && !(*radius > 0.0)) throw Error(ErrorCode::invalid_parameter, "radius must be positive");
        break;
      case Family::knn:
        if (!k || *k == 0) throw Error(ErrorCode::invalid_parameter, "knn needs a positive k");
        break;
      case Family::dtree: tree.validate(); break;
      case Family::svm:
        svm.validate();
        solver.validate();
        break;
      case Family::svr:
        svr.validate();
        solver.validate();
        break;
      default: break;
    }
  }

  NeighborhoodSpec neighborhood() const {
    if (radius) return {FixedRadius{*radius}, metric};
    return {KNearest{k.value_or(1)}, metric};
  }
};

inline nlohmann::json to_json(const SolverConfig& s) {
  return {{"eta0", s.eta0}, {"decay", s.decay}, {"tol", s.tol}, {"max_iters", s.max_iters}};
}

/// Only the parameters the family uses.
inline nlohmann::json to_json(const LearnerSettings& s) {
  nlohmann::json j = nlohmann::json::object();
  switch (s.family) {
    case Family::smoothing:
      if (s.k) j["k"] = *s.k;
      if (s.radius) j["radius"] = *s.radius;
      j["metric"] = to_string(s.metric);
      break;
    case Family::knn:
      j["k"] = s.k.value_or(0);
      j["metric"] = to_string(s.metric);
      break;
    case Family::dtree:
      j["max_depth"] = s.tree.max_depth;
      j["min_leaf"] = s.tree.min_leaf_size;
      j["purity"] = s.tree.purity_threshold;
      break;
    case Family::svm:
      j["w"] = s.svm.w;
      j["solver"] = to_json(s.solver);
      break;
    case Family::svr:
      j["epsilon"] = s.svr.epsilon;
      j["lambda"] = s.svr.lambda;
      j["solver"] = to_json(s.solver);
      break;
    default: break;
  }
  return j;
}

inline LearnerSettings settings_from_json(Family family, const nlohmann::json& j) {
  LearnerSettings s;
  s.family = family;
  if (j.contains("k")) s.k = j["k"].get<std::size_t>();
  if (j.contains("radius")) s.radius = j["radius"].get<double>();
  if (j.contains("metric")) s.metric = parse_metric(j["metric"].get<std::string>());
  if (j.contains("max_depth")) s.tree.max_depth = j["max_depth"].get<std::size_t>();
  if (j.contains("min_leaf")) s.tree.min_leaf_size = j["min_leaf"].get<std::size_t>();
  if (j.contains("purity")) s.tree.purity_threshold = j["purity"].get<double>();
  if (j.contains("w")) s.svm.w = j["w"].get<double>();
  if (j.contains("epsilon")) s.svr.epsilon = j["epsilon"].get<double>();
  if (j.contains("lambda")) s.svr.lambda = j["lambda"].get<double>();
  if (j.contains("solver")) {
    const auto& c = j["solver"];
    s.solver.eta0 = c.at("eta0").get<double>();
    s.solver.decay = c.at("decay").get<double>();
    s.solver.tol = c.at("tol").get<double>();
    s.solver.max_iters = c.at("max_iters").get<std::size_t>();
  }
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Model files

/// Linear learners persist coefficients; the tree persists its partition;
/// the other pointwise learners are query-time learners and persist nothing
/// beyond their parameters and the training data hash.
using ModelPayload = std::variant<std::monostate, LinearHypothesis, TreePartition>;

struct ModelFile {
  LearnerSettings settings;
  FeatureSchema features;
  std::string target;
  std::string data_hash;
  double train_total = 0.0;
  ModelPayload payload;
};

namespace detail {

inline nlohmann::json tree_to_json(const TreePartition& tree, std::size_t at) {
  const auto& node = tree.nodes()[at];
  nlohmann::json j{{"depth", node.depth}};
  if (const auto* leaf = std::get_if<LeafNode>(&node.body)) {
    j["leaf"] = {{"id", leaf->id}, {"cases", leaf->cases}, {"stop", to_string(leaf->stop)}};
    return j;
  }
  const auto& split = std::get<SplitNode>(node.body);
  j["split"] = {{"feature", split.feature}, {"threshold", split.threshold}};
  j["left"] = tree_to_json(tree, split.left);
  j["right"] = tree_to_json(tree, split.right);
  return j;
}

// Rebuilds nodes in pre-order, the order the builder creates them.
inline std::size_t tree_from_json(const nlohmann::json& j, std::vector<TreeNode>& nodes) {
  const std::size_t at = nodes.size();
  nodes.push_back(TreeNode{j.at("depth").get<std::size_t>(), LeafNode{}});
  if (j.contains("leaf")) {
    const auto& l = j["leaf"];
    nodes[at].body = LeafNode{l.at("id").get<std::size_t>(), l.at("cases").get<std::vector<std::size_t>>(),
                              parse_stop_reason(l.at("stop").get<std::string>())};
    return at;
  }
  SplitNode split{j.at("split").at("feature").get<std::size_t>(), j.at("split").at("threshold").get<std::size_t>(), 0,
                  0};
  split.left = tree_from_json(j.at("left"), nodes);
  split.right = tree_from_json(j.at("right"), nodes);
  nodes[at].body = split;
  return at;
}

}  // namespace detail

inline nlohmann::json to_json(const ModelFile& m) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& c : m.features.columns) {
    features.push_back({{"name", c.name}, {"kind", to_string(c.kind)}, {"values", c.values}});
  }
  nlohmann::json hypothesis;
  if (const auto* lin = std::get_if<LinearHypothesis>(&m.payload)) {
    hypothesis = {{"kind", "linear"}, {"b", lin->b}, {"a", lin->a}};
  } else if (const auto* tree = std::get_if<TreePartition>(&m.payload)) {
    hypothesis = {{"kind", "tree"}, {"dimension", tree->dimension()}, {"root", detail::tree_to_json(*tree, 0)}};
  } else {
    hypothesis = {{"kind", "pointwise"}};
  }
  return {{"format", kModelFormat},
          {"format_version", kModelVersion},
          {"library_version", kLibraryVersion},
          {"learner", to_string(m.settings.family)},
          {"params", to_json(m.settings)},
          {"features", features},
          {"target", m.target},
          {"data_hash", m.data_hash},
          {"train_total", m.train_total},
          {"hypothesis", hypothesis}};
}

inline ModelFile model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kModelFormat) throw Error(ErrorCode::model_format, "not a model file");
    const int version = j.at("format_version").get<int>();
    if (version != kModelVersion) {
      throw Error(ErrorCode::model_format, "unsupported model format version " + std::to_string(version));
    }
    ModelFile m;
    const Family family = parse_family(j.at("learner").get<std::string>());
    m.settings = settings_from_json(family, j.at("params"));
    for (const auto& c : j.at("features")) {
      m.features.columns.push_back({c.at("name").get<std::string>(), parse_kind(c.at("kind").get<std::string>()),
                                    c.at("values").get<std::vector<std::string>>()});
    }
    m.target = j.at("target").get<std::string>();
    m.data_hash = j.at("data_hash").get<std::string>();
    m.train_total = j.at("train_total").get<double>();
    const auto& h = j.at("hypothesis");
    const auto kind = h.at("kind").get<std::string>();
    if (kind == "linear") {
      m.payload = LinearHypothesis{h.at("b").get<std::vector<double>>(), h.at("a").get<double>()};
    } else if (kind == "tree") {
      std::vector<TreeNode> nodes;
      detail::tree_from_json(h.at("root"), nodes);
      m.payload = TreePartition(std::move(nodes), h.at("dimension").get<std::size_t>());
    } else if (kind != "pointwise") {
      throw Error(ErrorCode::model_format, "unknown hypothesis kind '" + kind + "'");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::model_format, e.what());
  }
}

inline void save_model(const ModelFile& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << to_json(m).dump(2) << '\n';
}

inline ModelFile load_model(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::model_format, path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace plearn::io

#endif  // PLEARN_DATAIO_HPP
