#include "qaoarec/features.hpp"

#include <algorithm>
#include <cmath>

#include "qaoarec/errors.hpp"
#include "qaoarec/ising.hpp"

namespace qaoarec {

std::string to_string(EncodingSource source) {
  switch (source) {
    case EncodingSource::AngleValues: return "AngleValues";
    case EncodingSource::InstanceFeatures: return "InstanceFeatures";
    case EncodingSource::ExternalEmbedding: return "ExternalEmbedding";
  }
  return "unknown";
}

EncodingSource encoding_source_from_string(const std::string& text) {
  if (text == "AngleValues") return EncodingSource::AngleValues;
  if (text == "InstanceFeatures") return EncodingSource::InstanceFeatures;
  if (text == "ExternalEmbedding") return EncodingSource::ExternalEmbedding;
  throw SchemaError("unknown encoding source '" + text + "'");
}

Eigen::MatrixXd laplacian(const ProblemInstance& graph) {
  if (!graph.is_maxcut()) throw KindError("laplacian: instance " + graph.id + " is not a graph");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(graph.n, graph.n);
  for (const auto& e : graph.edges) {
    const double w = std::abs(e.w);
    L(e.i, e.j) -= w;
    L(e.j, e.i) -= w;
    L(e.i, e.i) += w;
    L(e.j, e.j) += w;
  }
  return L;
}

Eigen::VectorXd laplacian_spectrum(const ProblemInstance& graph) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(graph), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

namespace {

struct SpectralFeatures {
  double log_l1_over_d;
  double log_l2_over_d;
  double log_l1_over_l2;
};

SpectralFeatures spectral_features(const ProblemInstance& graph) {
  const Eigen::VectorXd lambda = laplacian_spectrum(graph);
  double total = 0.0;
  for (const auto& e : graph.edges) total += std::abs(e.w);
  if (total <= 0.0) throw FeatureError("instance " + graph.id + " has no edges; spectral features are undefined");
  const double avg_degree = 2.0 * total / graph.n;
  const double l1 = std::max(lambda(0), kEigenvalueFloor);
  const double l2 = std::max(lambda.size() > 1 ? lambda(1) : 0.0, kEigenvalueFloor);
  return {std::log(l1 / avg_degree), std::log(l2 / avg_degree), std::log(l1 / l2)};
}

}  // namespace

Encoding maxcut_features(const ProblemInstance& inst, const FeatureOptions& options) {
  if (!inst.is_maxcut()) throw KindError("maxcut_features: instance " + inst.id + " is not a MaxCut graph");
  if (inst.n < 2) throw FeatureError("maxcut_features: instance " + inst.id + " has fewer than 2 nodes");
  if (inst.edges.empty()) throw FeatureError("maxcut_features: instance " + inst.id + " has no edges");
  const SpectralFeatures s = spectral_features(inst);
  Encoding enc;
  enc.instance_id = inst.id;
  enc.source = EncodingSource::InstanceFeatures;
  std::vector<double> v{inst.density()};
  enc.feature_names = {"density"};
  if (options.include_count_features) {
    v.push_back(std::log(static_cast<double>(inst.n)));
    v.push_back(std::log(static_cast<double>(inst.edges.size())));
    enc.feature_names.insert(enc.feature_names.end(), {"log_nodes", "log_edges"});
  }
  v.insert(v.end(), {s.log_l1_over_d, s.log_l2_over_d, s.log_l1_over_l2});
  enc.feature_names.insert(enc.feature_names.end(), {"log_l1_over_avg_degree", "log_l2_over_avg_degree", "log_l1_over_l2"});
  enc.vector = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  return enc;
}

Encoding qubo_features(const ProblemInstance& inst, const FeatureOptions& options) {
  if (inst.is_maxcut()) throw KindError("qubo_features: instance " + inst.id + " is not a QUBO");
  const MaxCutReduction red = qubo_to_maxcut(inst);
  const SpectralFeatures s = spectral_features(red.graph);
  Encoding enc;
  enc.instance_id = inst.id;
  enc.source = EncodingSource::InstanceFeatures;
  std::vector<double> v;
  if (options.include_count_features) {
    v.push_back(std::log(static_cast<double>(inst.n)));
    enc.feature_names.push_back("log_nodes");
  }
  v.insert(v.end(), {s.log_l1_over_d, s.log_l2_over_d, s.log_l1_over_l2});
  enc.feature_names.insert(enc.feature_names.end(), {"log_l1_over_avg_degree", "log_l2_over_avg_degree", "log_l1_over_l2"});
  enc.vector = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  return enc;
}

Encoding instance_features(const ProblemInstance& inst, const FeatureOptions& options) {
  return inst.is_maxcut() ? maxcut_features(inst, options) : qubo_features(inst, options);
}

Encoding angle_encoding(const AngleRecord& record) {
  Encoding enc;
  enc.instance_id = record.instance_id;
  enc.source = EncodingSource::AngleValues;
  enc.vector = record.angles.flat();
  for (int k = 1; k <= record.p; ++k) enc.feature_names.push_back("gamma_" + std::to_string(k));
  for (int k = 1; k <= record.p; ++k) enc.feature_names.push_back("beta_" + std::to_string(k));
  return enc;
}

void check_homogeneous(const std::vector<Encoding>& encodings) {
  if (encodings.empty()) return;
  const auto& first = encodings.front();
  for (const auto& e : encodings) {
    if (e.source != first.source)
      throw ParameterError("encodings mix sources " + to_string(first.source) + " and " + to_string(e.source));
    if (e.vector.size() != first.vector.size())
      throw ParameterError("encoding " + e.instance_id + " has dimension " + std::to_string(e.vector.size()) +
                           ", expected " + std::to_string(first.vector.size()));
    if (!e.vector.allFinite()) throw ParameterError("encoding " + e.instance_id + " has non-finite entries");
  }
}

Eigen::VectorXd Scaler::transform(const Eigen::VectorXd& v) const {
  if (v.size() != mean.size()) throw ParameterError("Scaler: dimension mismatch");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = scale(k) > 0.0 ? (v(k) - mean(k)) / scale(k) : 0.0;
  return out;
}

Encoding Scaler::transform(const Encoding& e) const {
  Encoding out = e;
  out.vector = transform(e.vector);
  return out;
}

std::vector<Encoding> Scaler::transform(const std::vector<Encoding>& es) const {
  std::vector<Encoding> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(transform(e));
  return out;
}

Scaler fit_scaler(const std::vector<Encoding>& encodings) {
  if (encodings.empty()) throw ParameterError("fit_scaler: no encodings");
  check_homogeneous(encodings);
  const Eigen::Index dim = encodings.front().vector.size();
  const double count = static_cast<double>(encodings.size());
  Scaler s;
  s.mean = Eigen::VectorXd::Zero(dim);
  for (const auto& e : encodings) s.mean += e.vector;
  s.mean /= count;
  Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
  for (const auto& e : encodings) var += (e.vector - s.mean).cwiseAbs2();
  s.scale = (var / count).cwiseSqrt();
  // Treat numerically constant columns as constant.
  for (Eigen::Index k = 0; k < dim; ++k)
    if (s.scale(k) <= 1e-12 * std::max(1.0, std::abs(s.mean(k)))) s.scale(k) = 0.0;
  return s;
}

std::pair<std::vector<Encoding>, Scaler> standardize(const std::vector<Encoding>& encodings) {
  Scaler s = fit_scaler(encodings);
  return {s.transform(encodings), std::move(s)};
}

}  // namespace qaoarec
