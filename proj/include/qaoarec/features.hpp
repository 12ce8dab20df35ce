#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/instances.hpp"

namespace qaoarec {

enum class EncodingSource { AngleValues, InstanceFeatures, ExternalEmbedding };

std::string to_string(EncodingSource source);
EncodingSource encoding_source_from_string(const std::string& text);

// Fixed-length representation of one instance. All encodings in a collection
// share `source` and dimension.
struct Encoding {
  std::string instance_id;
  EncodingSource source = EncodingSource::InstanceFeatures;
  Eigen::VectorXd vector;
  std::vector<std::string> feature_names;
};

struct FeatureOptions {
  // log-node / log-edge count features; disabled when training on small
  // graphs and testing on larger ones.
  bool include_count_features = true;
};

inline constexpr double kEigenvalueFloor = 1e-12;

// L = D - |W| with D_ii = sum_j |w_ij|. Eigenvalues in descending order.
Eigen::MatrixXd laplacian(const ProblemInstance& graph);
Eigen::VectorXd laplacian_spectrum(const ProblemInstance& graph);

// [density, log n, log |E|, log(l1/d), log(l2/d), log(l1/l2)] with l1 >= l2
// the two largest Laplacian eigenvalues and d the average degree.
Encoding maxcut_features(const ProblemInstance& inst, const FeatureOptions& options = {});

// Reduces to MaxCut, then [log n, log(l1/d), log(l2/d), log(l1/l2)] on the
// weighted Laplacian of the reduced graph.
Encoding qubo_features(const ProblemInstance& inst, const FeatureOptions& options = {});

Encoding instance_features(const ProblemInstance& inst, const FeatureOptions& options = {});

// Flat [gamma, beta] of a database record.
Encoding angle_encoding(const AngleRecord& record);

// Per-dimension z-score fitted on training encodings. Zero-variance
// dimensions map to 0.
struct Scaler {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;  // population standard deviation; 0 for constant dimensions

  Eigen::VectorXd transform(const Eigen::VectorXd& v) const;
  Encoding transform(const Encoding& e) const;
  std::vector<Encoding> transform(const std::vector<Encoding>& es) const;
};

Scaler fit_scaler(const std::vector<Encoding>& encodings);
std::pair<std::vector<Encoding>, Scaler> standardize(const std::vector<Encoding>& encodings);

// Throws ParameterError unless all encodings share source and dimension.
void check_homogeneous(const std::vector<Encoding>& encodings);

}  // namespace qaoarec
