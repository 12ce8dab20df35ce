#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/features.hpp"

namespace qaoarec {

enum class RepresentativeRule { Centroid, ClosestPoint };

std::string to_string(RepresentativeRule rule);
RepresentativeRule representative_rule_from_string(const std::string& text);

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
  double tolerance = 1e-8;  // largest centroid shift
  // Throw if a Lloyd iteration ever increases the inertia.
  bool check_monotone = false;
};

// Raw k-means output on a point matrix (one row per point).
struct KMeansResult {
  Eigen::MatrixXd centroids;  // k x F
  std::vector<int> labels;
  double inertia = 0.0;
  int iterations = 0;
};

// Within-cluster sum of squares of the given labelling.
double wcss(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids, const std::vector<int>& labels);

// k-means++ seeding followed by Lloyd iterations; best of `restarts` runs.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options = {});

// A fitted clustering of a collection of encodings. `points` keeps the
// (possibly standardized) training encodings the centroids live among.
struct ClusterModel {
  int k = 0;
  EncodingSource source = EncodingSource::AngleValues;
  RepresentativeRule representative_rule = RepresentativeRule::ClosestPoint;
  Eigen::MatrixXd centroids;
  std::vector<std::string> member_ids;
  Eigen::MatrixXd points;
  std::map<std::string, int> assignments;
  double inertia = 0.0;
  std::uint64_t seed = 0;
  int depth = 0;                  // angle depth the model serves
  std::optional<Scaler> scaler;   // present when encodings were standardized
};

ClusterModel kmeans_fit(const std::vector<Encoding>& encodings, int k, std::uint64_t seed,
                        const KMeansOptions& options = {});

// One angle vector per cluster: the centroid itself (angle encodings only) or
// the stored optimum of the training instance nearest to the centroid.
std::vector<AngleVector> representatives(const ClusterModel& model, const AngleDatabase& db, int depth);

enum class AggregateStat { Mean, Median };

AngleVector aggregate_baseline(const AngleDatabase& db, int depth, AggregateStat stat);
AngleVector aggregate_baseline(const std::vector<const AngleRecord*>& records, AggregateStat stat);

}  // namespace qaoarec
