#pragma once

#include <string>
#include <vector>

#include "qaoarec/clustering.hpp"
#include "qaoarec/qaoa_sim.hpp"

namespace qaoarec {

// K frozen angle vectors of a common depth.
struct RecommendationSet {
  int depth = 0;
  std::vector<AngleVector> angles;
  std::string source;      // encoding source or baseline name
  std::string provenance;  // free-form reference to the producing model

  int k() const { return static_cast<int>(angles.size()); }
  void validate() const;
};

struct RecommendationOutcome {
  std::string instance_id;
  double best_expectation = 0.0;  // Ising convention
  int best_angle_index = 0;
  std::vector<double> per_angle_expectations;
  int circuit_calls = 0;
};

RecommendationSet make_recommendations(const ClusterModel& model, const AngleDatabase& db, int depth,
                                       std::string provenance = {});

// Exactly K circuits; the lowest expectation wins, ties to the lowest index.
RecommendationOutcome evaluate_recommendations(const RecommendationSet& recs, const QaoaSimulator& sim,
                                               std::string instance_id = {});

std::vector<RecommendationOutcome> recommend_and_evaluate(const RecommendationSet& recs,
                                                          const std::vector<ProblemInstance>& test, int jobs = 1);

}  // namespace qaoarec
