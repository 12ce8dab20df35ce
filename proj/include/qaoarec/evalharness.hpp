#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/clustering.hpp"
#include "qaoarec/features.hpp"
#include "qaoarec/recommend.hpp"

namespace qaoarec {

// E(cut) / C_opt for MaxCut, from an Ising-convention expectation.
double approximation_ratio(double expectation_ising, double c_opt_cut);

// (C_opt - E) / C_opt for minimization problems with a negative optimum.
double optimality_gap(double expectation, double c_opt);

// (C_opt - E_opt) / (C_opt - E_cluster), all in the native convention. When
// the recommendation hits the optimum exactly the result is +infinity.
double ratio_to_optimal(double c_opt, double e_opt, double e_cluster);

struct RatioSample {
  std::string instance_id;
  std::string method;
  int depth = 0;
  int k = 0;
  double ratio = 0.0;
};

enum class MethodKind { AngleValues, InstanceFeatures, ExternalEmbedding, MeanBaseline, MedianBaseline };

std::string to_string(MethodKind kind);
MethodKind method_kind_from_string(const std::string& text);

struct MethodConfig {
  std::string name;
  MethodKind kind = MethodKind::AngleValues;
  RepresentativeRule rule = RepresentativeRule::ClosestPoint;
  std::vector<int> depths{1};
  std::vector<int> ks{3};
  std::uint64_t seed = 0;
  KMeansOptions kmeans{};
  FeatureOptions features{};
  // Standardize encodings with training statistics; defaults to on for
  // instance features and embeddings, off for raw angles.
  std::optional<bool> standardize;
  // External embeddings keyed by instance id (ExternalEmbedding only).
  const std::map<std::string, Encoding>* embeddings = nullptr;

  bool uses_standardization() const;
  std::string label() const { return name.empty() ? to_string(kind) : name; }
};

// A fitted method: the recommendation set plus the scaler and cluster model
// that produced it (absent for aggregation baselines).
struct FittedMethod {
  RecommendationSet recs;
  std::optional<Scaler> scaler;
  std::optional<ClusterModel> model;
  std::vector<std::string> warnings;
};

// Trains a method on `train` only and returns its K recommendations.
FittedMethod fit_method(const MethodConfig& config, int depth, int k, const std::vector<ProblemInstance>& train,
                        const AngleDatabase& db);

// Encodings used by a method for the given instances; instances whose
// features cannot be computed are skipped with a warning.
std::vector<Encoding> method_encodings(const MethodConfig& config, int depth,
                                       const std::vector<ProblemInstance>& instances, const AngleDatabase& db,
                                       std::vector<std::string>* warnings = nullptr);

struct FoldFit {
  int fold = 0;
  int depth = 0;
  int k = 0;
  FittedMethod fitted;
};

struct EvalResult {
  std::vector<RatioSample> samples;
  std::vector<FoldFit> fits;
  std::vector<int> fold_of;  // per input instance; -1 when never tested
  std::vector<std::string> warnings;
};

// Seeded fold assignment. Stratified mode deals each node-count group
// round-robin over the folds after shuffling it.
std::vector<int> make_folds(const std::vector<ProblemInstance>& instances, int folds, std::uint64_t seed,
                            bool stratified = true);

EvalResult run_cv(const MethodConfig& config, const std::vector<ProblemInstance>& instances, const AngleDatabase& db,
                  int folds = 5, std::uint64_t seed = 0, bool stratified = true, int jobs = 1);

// Smallest node counts (whole groups, about train_frac of the data) train;
// the remaining largest instances test. Count features are dropped.
struct SizeSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
SizeSplit size_split(const std::vector<ProblemInstance>& instances, double train_frac = 0.6);

EvalResult run_size_split(const MethodConfig& config, const std::vector<ProblemInstance>& instances,
                          const AngleDatabase& db, double train_frac = 0.6, int jobs = 1);

struct MedianSummary {
  std::size_t count = 0;         // finite ratios
  std::size_t optimum_hits = 0;  // +infinity sentinels, excluded from the median
  double median = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

double median(std::vector<double> values);

// Median of the finite ratios with a percentile bootstrap 95% interval.
MedianSummary summarize(const std::vector<double>& ratios, std::uint64_t seed = 0, int resamples = 1000);

// F(t) = (1/R) sum_i 1[0 <= t <= r_i]: the fraction of samples whose
// interval [0, r_i] contains t. Non-increasing in t on t >= 0.
struct EcdfCurve {
  std::string method;
  std::vector<double> sorted_sample;
  std::vector<double> grid;
  std::vector<double> values;
};

EcdfCurve ecdf(std::vector<double> samples, std::vector<double> grid, std::string method = {});

// Evenly spaced grid on [lo, hi] with `points` entries.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace qaoarec
