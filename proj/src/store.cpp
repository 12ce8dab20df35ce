#include "qaoarec/store.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qaoarec/errors.hpp"

namespace qaoarec::store {
namespace {

const json& field(const json& j, const char* name, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string(what) + ": missing field '" + name + "'");
  return *it;
}

template <class T>
T get(const json& j, const char* name, const char* what) {
  const json& v = field(j, name, what);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string(what) + ": field '" + name + "' has the wrong type");
  }
}

void check_version(const json& j, const char* what) {
  const int v = get<int>(j, "schema_version", what);
  if (v != kSchemaVersion)
    throw SchemaError(std::string(what) + ": field 'schema_version' is " + std::to_string(v) + ", expected " +
                      std::to_string(kSchemaVersion));
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from(const json& j, const char* name, const char* what) {
  const auto v = get<std::vector<double>>(j, name, what);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_json(m.row(r).transpose()));
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, const char* name, const char* what) {
  const auto rows = get<std::vector<std::vector<double>>>(j, name, what);
  if (rows.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size())
      throw SchemaError(std::string(what) + ": field '" + name + "' is ragged");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::trunc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::out | mode);
  if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

json to_json(const ProblemInstance& inst) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["id"] = inst.id;
  j["kind"] = inst.is_maxcut() ? "MaxCutGraph" : "DenseQubo";
  j["n"] = inst.n;
  if (inst.is_maxcut()) {
    json edges = json::array();
    for (const auto& e : inst.edges) edges.push_back({e.i, e.j, e.w});
    j["edges"] = std::move(edges);
    j["qubo"] = nullptr;
  } else {
    json rows = json::array();
    for (int i = 0; i < inst.n; ++i) {
      std::vector<double> row;
      for (int c = i; c < inst.n; ++c) row.push_back(inst.qubo(i, c));
      rows.push_back(row);
    }
    j["edges"] = nullptr;
    j["qubo"] = std::move(rows);
  }
  json meta;
  meta["edge_probability"] = inst.meta.edge_probability ? json(*inst.meta.edge_probability) : json(nullptr);
  meta["seed"] = inst.meta.seed;
  meta["index"] = inst.meta.index;
  j["meta"] = std::move(meta);
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  constexpr const char* what = "instance";
  check_version(j, what);
  ProblemInstance inst;
  inst.id = get<std::string>(j, "id", what);
  const auto kind = get<std::string>(j, "kind", what);
  if (kind == "MaxCutGraph") inst.kind = InstanceKind::MaxCutGraph;
  else if (kind == "DenseQubo") inst.kind = InstanceKind::DenseQubo;
  else throw SchemaError("instance: field 'kind' has unknown value '" + kind + "'");
  inst.n = get<int>(j, "n", what);
  if (inst.is_maxcut()) {
    for (const auto& e : field(j, "edges", what)) {
      if (!e.is_array() || e.size() != 3) throw SchemaError("instance: field 'edges' entries must be [i, j, w]");
      inst.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
  } else {
    const auto rows = get<std::vector<std::vector<double>>>(j, "qubo", what);
    if (static_cast<int>(rows.size()) != inst.n) throw SchemaError("instance: field 'qubo' must have n rows");
    inst.qubo = Eigen::MatrixXd::Zero(inst.n, inst.n);
    for (int i = 0; i < inst.n; ++i) {
      if (static_cast<int>(rows[i].size()) != inst.n - i)
        throw SchemaError("instance: field 'qubo' row " + std::to_string(i) + " must hold n - i entries");
      for (int c = i; c < inst.n; ++c) inst.qubo(i, c) = rows[i][c - i];
    }
  }
  const json& meta = field(j, "meta", what);
  const json& p = field(meta, "edge_probability", "instance meta");
  if (!p.is_null()) inst.meta.edge_probability = p.get<double>();
  inst.meta.seed = get<std::uint64_t>(meta, "seed", "instance meta");
  if (meta.contains("index")) inst.meta.index = get<std::uint64_t>(meta, "index", "instance meta");
  try {
    inst.validate();
  } catch (const ParameterError& e) {
    throw SchemaError(e.what());
  }
  return inst;
}

json to_json(const std::string& instance_id, const ExactSolution& sol) {
  return {{"schema_version", kSchemaVersion},
          {"instance_id", instance_id},
          {"c_opt", sol.c_opt},
          {"argmin_config", sol.argmin_config}};
}

std::pair<std::string, ExactSolution> exact_from_json(const json& j) {
  constexpr const char* what = "exact solution";
  check_version(j, what);
  ExactSolution sol;
  sol.c_opt = get<double>(j, "c_opt", what);
  sol.argmin_config = get<std::vector<std::uint8_t>>(j, "argmin_config", what);
  return {get<std::string>(j, "instance_id", what), std::move(sol)};
}

json to_json(const AngleVector& a) { return {{"gamma", vector_json(a.gamma)}, {"beta", vector_json(a.beta)}}; }

AngleVector angles_from_json(const json& j) {
  AngleVector a(vector_from(j, "gamma", "angles"), vector_from(j, "beta", "angles"));
  if (a.depth() < 1) throw SchemaError("angles: depth must be >= 1");
  return a;
}

json to_json(const AngleRecord& r) {
  return {{"schema_version", kSchemaVersion},
          {"instance_id", r.instance_id},
          {"p", r.p},
          {"angles", to_json(r.angles)},
          {"expectation", r.expectation},
          {"c_opt", r.c_opt},
          {"n_restarts", r.n_restarts},
          {"n_aborted_restarts", r.n_aborted_restarts},
          {"n_circuit_calls", r.n_circuit_calls},
          {"n_objective_calls", r.n_objective_calls},
          {"n_gradient_calls", r.n_gradient_calls},
          {"best_restart_calls", r.best_restart_calls},
          {"best_restart_gradient_calls", r.best_restart_gradient_calls}};
}

AngleRecord angle_record_from_json(const json& j) {
  constexpr const char* what = "angle record";
  check_version(j, what);
  AngleRecord r;
  r.instance_id = get<std::string>(j, "instance_id", what);
  r.p = get<int>(j, "p", what);
  r.angles = angles_from_json(field(j, "angles", what));
  if (r.angles.depth() != r.p) throw SchemaError("angle record: field 'angles' does not match field 'p'");
  r.expectation = get<double>(j, "expectation", what);
  r.c_opt = get<double>(j, "c_opt", what);
  r.n_restarts = get<int>(j, "n_restarts", what);
  r.n_aborted_restarts = j.value("n_aborted_restarts", 0);
  r.n_circuit_calls = get<long>(j, "n_circuit_calls", what);
  r.n_objective_calls = j.value("n_objective_calls", 0L);
  r.n_gradient_calls = j.value("n_gradient_calls", 0L);
  r.best_restart_calls = get<long>(j, "best_restart_calls", what);
  r.best_restart_gradient_calls = j.value("best_restart_gradient_calls", 0L);
  return r;
}

json to_json(const Encoding& e) {
  return {{"schema_version", kSchemaVersion},
          {"instance_id", e.instance_id},
          {"source", to_string(e.source)},
          {"vector", vector_json(e.vector)},
          {"feature_names", e.feature_names}};
}

Encoding encoding_from_json(const json& j) {
  constexpr const char* what = "encoding";
  check_version(j, what);
  Encoding e;
  e.instance_id = get<std::string>(j, "instance_id", what);
  e.source = encoding_source_from_string(get<std::string>(j, "source", what));
  e.vector = vector_from(j, "vector", what);
  if (j.contains("feature_names") && !j["feature_names"].is_null())
    e.feature_names = get<std::vector<std::string>>(j, "feature_names", what);
  if (!e.vector.allFinite()) throw SchemaError("encoding " + e.instance_id + ": field 'vector' has non-finite entries");
  return e;
}

json to_json(const ClusterModel& m) {
  json assignments = json::object();
  for (const auto& [id, c] : m.assignments) assignments[id] = c;
  json scaler = nullptr;
  if (m.scaler) scaler = {{"mean", vector_json(m.scaler->mean)}, {"scale", vector_json(m.scaler->scale)}};
  return {{"schema_version", kSchemaVersion},
          {"k", m.k},
          {"source", to_string(m.source)},
          {"representative_rule", to_string(m.representative_rule)},
          {"centroids", matrix_json(m.centroids)},
          {"member_ids", m.member_ids},
          {"points", matrix_json(m.points)},
          {"assignments", std::move(assignments)},
          {"inertia", m.inertia},
          {"seed", m.seed},
          {"depth", m.depth},
          {"scaler", std::move(scaler)}};
}

ClusterModel cluster_model_from_json(const json& j) {
  constexpr const char* what = "cluster model";
  check_version(j, what);
  ClusterModel m;
  m.k = get<int>(j, "k", what);
  m.source = encoding_source_from_string(get<std::string>(j, "source", what));
  m.representative_rule = representative_rule_from_string(get<std::string>(j, "representative_rule", what));
  m.centroids = matrix_from(j, "centroids", what);
  m.member_ids = get<std::vector<std::string>>(j, "member_ids", what);
  m.points = matrix_from(j, "points", what);
  m.assignments = get<std::map<std::string, int>>(j, "assignments", what);
  m.inertia = get<double>(j, "inertia", what);
  m.seed = get<std::uint64_t>(j, "seed", what);
  m.depth = get<int>(j, "depth", what);
  const json& s = field(j, "scaler", what);
  if (!s.is_null()) m.scaler = Scaler{vector_from(s, "mean", "scaler"), vector_from(s, "scale", "scaler")};
  if (m.centroids.rows() != m.k) throw SchemaError("cluster model: field 'centroids' must have k rows");
  if (static_cast<std::size_t>(m.points.rows()) != m.member_ids.size())
    throw SchemaError("cluster model: field 'points' must match field 'member_ids'");
  return m;
}

json to_json(const RecommendationSet& r) {
  json angles = json::array();
  for (const auto& a : r.angles) angles.push_back(to_json(a));
  return {{"schema_version", kSchemaVersion},
          {"depth", r.depth},
          {"angles", std::move(angles)},
          {"source", r.source},
          {"provenance", r.provenance}};
}

RecommendationSet recommendation_set_from_json(const json& j) {
  constexpr const char* what = "recommendation set";
  check_version(j, what);
  RecommendationSet r;
  r.depth = get<int>(j, "depth", what);
  for (const auto& a : field(j, "angles", what)) r.angles.push_back(angles_from_json(a));
  r.source = get<std::string>(j, "source", what);
  r.provenance = j.value("provenance", std::string{});
  try {
    r.validate();
  } catch (const ParameterError& e) {
    throw SchemaError(std::string("recommendation set: ") + e.what());
  }
  return r;
}

json to_json(const RecommendationOutcome& o) {
  return {{"schema_version", kSchemaVersion},
          {"instance_id", o.instance_id},
          {"best_expectation", o.best_expectation},
          {"best_angle_index", o.best_angle_index},
          {"per_angle_expectations", o.per_angle_expectations},
          {"circuit_calls", o.circuit_calls}};
}

RecommendationOutcome outcome_from_json(const json& j) {
  constexpr const char* what = "recommendation outcome";
  check_version(j, what);
  RecommendationOutcome o;
  o.instance_id = get<std::string>(j, "instance_id", what);
  o.best_expectation = get<double>(j, "best_expectation", what);
  o.best_angle_index = get<int>(j, "best_angle_index", what);
  o.per_angle_expectations = get<std::vector<double>>(j, "per_angle_expectations", what);
  o.circuit_calls = get<int>(j, "circuit_calls", what);
  return o;
}

json to_json(const IsingModel& m) {
  json couplings = json::array();
  for (const auto& [ij, v] : m.couplings()) couplings.push_back({ij.first, ij.second, v});
  return {{"n", m.n()}, {"h", vector_json(m.h())}, {"J", std::move(couplings)}, {"offset", m.offset()}};
}

IsingModel ising_from_json(const json& j) {
  constexpr const char* what = "ising model";
  IsingModel m(get<int>(j, "n", what));
  const Eigen::VectorXd h = vector_from(j, "h", what);
  if (h.size() != m.n()) throw SchemaError("ising model: field 'h' must have n entries");
  for (int i = 0; i < m.n(); ++i) m.set_bias(i, h(i));
  for (const auto& c : field(j, "J", what)) m.add_coupling(c[0].get<int>(), c[1].get<int>(), c[2].get<double>());
  m.add_offset(get<double>(j, "offset", what));
  return m;
}

json to_json(const RqaoaTrace& t) {
  json elim = json::array();
  for (const auto& e : t.eliminations)
    elim.push_back({{"kept", e.kept},
                    {"removed", e.removed},
                    {"sign", e.sign},
                    {"correlation", e.correlation},
                    {"iteration", e.iteration}});
  return {{"schema_version", kSchemaVersion},
          {"instance_id", t.instance_id},
          {"method", t.method},
          {"depth", t.depth},
          {"eliminations", std::move(elim)},
          {"final_model", to_json(t.final_model)},
          {"final_variables", t.final_variables},
          {"final_assignment", t.final_assignment},
          {"reconstructed", t.reconstructed},
          {"objective", t.objective},
          {"approximation_ratio", t.approximation_ratio},
          {"circuit_calls", t.circuit_calls},
          {"gradient_calls", t.gradient_calls},
          {"iterations", t.iterations}};
}

json to_json(const MedianSummary& s) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"count", s.count},
          {"optimum_hits", s.optimum_hits},
          {"median", num(s.median)},
          {"ci95_low", num(s.ci_low)},
          {"ci95_high", num(s.ci_high)}};
}

json to_json(const EcdfCurve& c) {
  return {{"method", c.method}, {"grid", c.grid}, {"values", c.values}};
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<json> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw SchemaError(path.string() + ":" + std::to_string(number) + ": malformed JSON");
    }
  }
  return rows;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows) {
  std::ofstream out = open_out(path);
  for (const auto& r : rows) out << r.dump() << '\n';
}

void append_jsonl(const std::filesystem::path& path, const json& row) {
  std::ofstream out = open_out(path, std::ios::app);
  out << row.dump() << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error&) {
    throw SchemaError(path.string() + ": malformed JSON");
  }
}

void write_json(const std::filesystem::path& path, const json& value) {
  std::ofstream out = open_out(path);
  out << value.dump(2) << '\n';
}

namespace {

template <class T, class F>
std::vector<T> read_rows(const std::filesystem::path& path, F&& parse) {
  std::vector<T> out;
  int line = 0;
  for (const auto& j : read_jsonl(path)) {
    ++line;
    try {
      out.push_back(parse(j));
    } catch (const SchemaError& e) {
      throw SchemaError(path.string() + ": record " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<ProblemInstance> read_instances(const std::filesystem::path& path) {
  return read_rows<ProblemInstance>(path, instance_from_json);
}

void write_instances(const std::filesystem::path& path, const std::vector<ProblemInstance>& instances) {
  std::vector<json> rows;
  for (const auto& i : instances) rows.push_back(to_json(i));
  write_jsonl(path, rows);
}

std::map<std::string, ExactSolution> read_exact(const std::filesystem::path& path) {
  std::map<std::string, ExactSolution> out;
  for (auto& [id, sol] : read_rows<std::pair<std::string, ExactSolution>>(path, exact_from_json)) out[id] = sol;
  return out;
}

void write_exact(const std::filesystem::path& path, const std::map<std::string, ExactSolution>& exact) {
  std::vector<json> rows;
  for (const auto& [id, sol] : exact) rows.push_back(to_json(id, sol));
  write_jsonl(path, rows);
}

std::vector<AngleRecord> read_angle_db(const std::filesystem::path& path) {
  return read_rows<AngleRecord>(path, angle_record_from_json);
}

void write_angle_db(const std::filesystem::path& path, const std::vector<AngleRecord>& records) {
  std::vector<json> rows;
  for (const auto& r : records) rows.push_back(to_json(r));
  write_jsonl(path, rows);
}

std::vector<Encoding> read_encodings(const std::filesystem::path& path) {
  return read_rows<Encoding>(path, encoding_from_json);
}

void write_encodings(const std::filesystem::path& path, const std::vector<Encoding>& encodings) {
  std::vector<json> rows;
  for (const auto& e : encodings) rows.push_back(to_json(e));
  write_jsonl(path, rows);
}

std::vector<RecommendationSet> read_recommendation_sets(const std::filesystem::path& path) {
  return read_rows<RecommendationSet>(path, recommendation_set_from_json);
}

void write_samples_csv(const std::filesystem::path& path, const std::vector<RatioSample>& samples) {
  std::ofstream out = open_out(path);
  out << "schema_version,instance_id,method,depth,k,ratio\n";
  for (const auto& s : samples) {
    out << kSchemaVersion << ',' << s.instance_id << ',' << s.method << ',' << s.depth << ',' << s.k << ',';
    if (std::isinf(s.ratio)) out << (s.ratio > 0 ? "inf" : "-inf");
    else out << format_double(s.ratio);
    out << '\n';
  }
}

std::vector<RatioSample> read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) return {};
  if (line.rfind("schema_version,instance_id,method,depth,k,ratio", 0) != 0)
    throw SchemaError(path.string() + ": unexpected CSV header");
  std::vector<RatioSample> out;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const std::string where = path.string() + ":" + std::to_string(number);
    if (cells.size() != 6) throw SchemaError(where + ": expected 6 columns");
    if (cells[0] != std::to_string(kSchemaVersion))
      throw SchemaError(where + ": field 'schema_version' is " + cells[0]);
    RatioSample s;
    s.instance_id = cells[1];
    s.method = cells[2];
    try {
      s.depth = std::stoi(cells[3]);
      s.k = std::stoi(cells[4]);
      s.ratio = cells[5] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(cells[5]);
    } catch (const std::exception&) {
      throw SchemaError(where + ": malformed number");
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace qaoarec::store
