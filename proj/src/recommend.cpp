#include "qaoarec/recommend.hpp"

#include "qaoarec/errors.hpp"
#include "qaoarec/parallel.hpp"

namespace qaoarec {

void RecommendationSet::validate() const {
  if (angles.empty()) throw ParameterError("recommendation set is empty");
  for (const auto& a : angles)
    if (a.depth() != depth)
      throw ParameterError("recommendation of depth " + std::to_string(a.depth()) + " in a depth-" +
                           std::to_string(depth) + " set");
}

RecommendationSet make_recommendations(const ClusterModel& model, const AngleDatabase& db, int depth,
                                       std::string provenance) {
  RecommendationSet recs;
  recs.depth = depth;
  recs.angles = representatives(model, db, depth);
  recs.source = to_string(model.source);
  recs.provenance = std::move(provenance);
  return recs;
}

RecommendationOutcome evaluate_recommendations(const RecommendationSet& recs, const QaoaSimulator& sim,
                                               std::string instance_id) {
  recs.validate();
  RecommendationOutcome out;
  out.instance_id = std::move(instance_id);
  for (const auto& a : recs.angles) {
    out.per_angle_expectations.push_back(sim.expectation(a));
    ++out.circuit_calls;
  }
  out.best_angle_index = 0;
  for (int c = 1; c < recs.k(); ++c)
    if (out.per_angle_expectations[c] < out.per_angle_expectations[out.best_angle_index]) out.best_angle_index = c;
  out.best_expectation = out.per_angle_expectations[out.best_angle_index];
  return out;
}

std::vector<RecommendationOutcome> recommend_and_evaluate(const RecommendationSet& recs,
                                                          const std::vector<ProblemInstance>& test, int jobs) {
  recs.validate();
  std::vector<RecommendationOutcome> out(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t i) {
    const QaoaSimulator sim(to_ising(test[i]));
    out[i] = evaluate_recommendations(recs, sim, test[i].id);
  });
  return out;
}

}  // namespace qaoarec
