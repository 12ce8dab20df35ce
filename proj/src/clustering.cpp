#include "qaoarec/clustering.hpp"

#include <algorithm>
#include <limits>

#include "qaoarec/errors.hpp"
#include "qaoarec/rng.hpp"

namespace qaoarec {

std::string to_string(RepresentativeRule rule) {
  return rule == RepresentativeRule::Centroid ? "centroid" : "closest";
}

RepresentativeRule representative_rule_from_string(const std::string& text) {
  if (text == "centroid" || text == "Centroid") return RepresentativeRule::Centroid;
  if (text == "closest" || text == "ClosestPoint") return RepresentativeRule::ClosestPoint;
  throw ParameterError("unknown representative rule '" + text + "' (expected closest|centroid)");
}

double wcss(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids, const std::vector<int>& labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) total += (points.row(i) - centroids.row(labels[i])).squaredNorm();
  return total;
}

namespace {

int nearest(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& x) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

Eigen::MatrixXd kmeans_pp(const Eigen::MatrixXd& X, int k, Rng& rng) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd C(k, X.cols());
  C.row(0) = X.row(static_cast<Eigen::Index>(rng.below(n)));
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = (X.row(i) - C.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (d2(i) > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      while (d2(pick) == 0.0 && pick > 0) --pick;
    } else {
      pick = static_cast<Eigen::Index>(rng.below(n));
    }
    C.row(c) = X.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) d2(i) = std::min(d2(i), (X.row(i) - C.row(c)).squaredNorm());
  }
  return C;
}

KMeansResult lloyd(const Eigen::MatrixXd& X, Eigen::MatrixXd C, const KMeansOptions& opt) {
  const Eigen::Index n = X.rows();
  const int k = static_cast<int>(C.rows());
  KMeansResult res;
  res.labels.assign(n, 0);
  double last_inertia = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it + 1;
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      res.labels[i] = nearest(C, X.row(i));
      ++counts[res.labels[i]];
    }
    // Empty clusters take the point farthest from its current centroid.
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Eigen::Index far = -1;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[res.labels[i]] <= 1) continue;
        const double d = (X.row(i) - C.row(res.labels[i])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) throw ParameterError("kmeans: cannot fill an empty cluster");
      --counts[res.labels[far]];
      res.labels[far] = c;
      counts[c] = 1;
    }
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, X.cols());
    for (Eigen::Index i = 0; i < n; ++i) next.row(res.labels[i]) += X.row(i);
    for (int c = 0; c < k; ++c) next.row(c) /= counts[c];
    const double shift = (next - C).rowwise().norm().maxCoeff();
    C = std::move(next);
    const double inertia = wcss(X, C, res.labels);
    if (opt.check_monotone && inertia > last_inertia + 1e-9 * std::max(1.0, last_inertia))
      throw ContractError("kmeans: inertia increased during a Lloyd iteration");
    last_inertia = inertia;
    if (shift < opt.tolerance) break;
  }
  res.centroids = std::move(C);
  res.inertia = wcss(X, res.centroids, res.labels);
  return res;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1) throw ParameterError("kmeans: k must be >= 1");
  if (k > points.rows())
    throw ParameterError("kmeans: k = " + std::to_string(k) + " exceeds the number of points (" +
                         std::to_string(points.rows()) + ")");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    KMeansResult run = lloyd(points, kmeans_pp(points, k, rng), options);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

ClusterModel kmeans_fit(const std::vector<Encoding>& encodings, int k, std::uint64_t seed,
                        const KMeansOptions& options) {
  if (encodings.empty()) throw ParameterError("kmeans_fit: no encodings");
  check_homogeneous(encodings);
  const Eigen::Index n = static_cast<Eigen::Index>(encodings.size());
  Eigen::MatrixXd X(n, encodings.front().vector.size());
  for (Eigen::Index i = 0; i < n; ++i) X.row(i) = encodings[i].vector.transpose();
  const KMeansResult r = kmeans(X, k, seed, options);

  ClusterModel m;
  m.k = k;
  m.source = encodings.front().source;
  m.representative_rule = RepresentativeRule::ClosestPoint;
  m.centroids = r.centroids;
  m.points = std::move(X);
  m.inertia = r.inertia;
  m.seed = seed;
  for (Eigen::Index i = 0; i < n; ++i) {
    m.member_ids.push_back(encodings[i].instance_id);
    m.assignments[encodings[i].instance_id] = r.labels[i];
  }
  return m;
}

std::vector<AngleVector> representatives(const ClusterModel& model, const AngleDatabase& db, int depth) {
  std::vector<AngleVector> out;
  if (model.representative_rule == RepresentativeRule::Centroid) {
    if (model.source != EncodingSource::AngleValues)
      throw ContractError("centroid representatives require AngleValues encodings; " + to_string(model.source) +
                          " centroids are not angles");
    if (model.centroids.cols() != 2 * depth)
      throw ContractError("centroid dimension does not match depth " + std::to_string(depth));
    for (Eigen::Index c = 0; c < model.centroids.rows(); ++c)
      out.push_back(AngleVector::from_flat(model.centroids.row(c).transpose()));
    return out;
  }
  for (Eigen::Index c = 0; c < model.centroids.rows(); ++c) {
    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < model.points.rows(); ++i) {
      const double d = (model.points.row(i) - model.centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    out.push_back(db.at(model.member_ids[best], depth).angles);
  }
  return out;
}

AngleVector aggregate_baseline(const std::vector<const AngleRecord*>& records, AggregateStat stat) {
  if (records.empty()) throw ParameterError("aggregate_baseline: no records");
  const Eigen::Index dim = records.front()->angles.flat().size();
  const Eigen::Index n = static_cast<Eigen::Index>(records.size());
  Eigen::MatrixXd A(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (records[i]->angles.flat().size() != dim) throw ParameterError("aggregate_baseline: mixed depths");
    A.row(i) = records[i]->angles.flat().transpose();
  }
  Eigen::VectorXd out(dim);
  if (stat == AggregateStat::Mean) {
    out = A.colwise().mean().transpose();
  } else {
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::vector<double> col(A.col(c).data(), A.col(c).data() + n);
      std::sort(col.begin(), col.end());
      out(c) = n % 2 ? col[n / 2] : 0.5 * (col[n / 2 - 1] + col[n / 2]);
    }
  }
  return AngleVector::from_flat(out);
}

AngleVector aggregate_baseline(const AngleDatabase& db, int depth, AggregateStat stat) {
  return aggregate_baseline(db.at_depth(depth), stat);
}

}  // namespace qaoarec
