#include "doctest.h"

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/errors.hpp"
#include "qaoarec/instances.hpp"
#include "qaoarec/recommend.hpp"
#include "qaoarec/rng.hpp"

using namespace qaoarec;

TEST_SUITE("recommend") {
  TEST_CASE("own optimum reproduces the database value") {
    const auto insts = generate_maxcut_dataset({6}, {0.5}, 3, 1);
    Rng rng(3);
    for (const auto& inst : insts) {
      const auto m = to_ising(inst);
      const auto rec = optimize_angles(m, 2, 4, 9);
      const QaoaSimulator sim(m);
      RecommendationSet one{2, {rec.angles}, "self", ""};
      const auto o1 = evaluate_recommendations(one, sim, inst.id);
      CHECK(o1.best_expectation == doctest::Approx(rec.expectation).epsilon(1e-12));
      CHECK(o1.circuit_calls == 1);

      RecommendationSet more{2, {random_angles(2, rng), rec.angles, random_angles(2, rng)}, "mix", ""};
      const auto o3 = evaluate_recommendations(more, sim, inst.id);
      CHECK(o3.best_expectation <= rec.expectation + 1e-12);
      CHECK(o3.circuit_calls == 3);
      CHECK(o3.per_angle_expectations.size() == 3);
      CHECK(o3.best_expectation == *std::min_element(o3.per_angle_expectations.begin(), o3.per_angle_expectations.end()));
    }
  }

  TEST_CASE("nested sets are monotone and ties go to the lowest index") {
    const auto inst = generate_er_graph(7, 0.6, 2);
    const QaoaSimulator sim(to_ising(inst));
    Rng rng(8);
    RecommendationSet recs{1, {}, "random", ""};
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 6; ++k) {
      recs.angles.push_back(random_angles(1, rng));
      const auto o = evaluate_recommendations(recs, sim);
      CHECK(o.best_expectation <= last);
      last = o.best_expectation;
    }
    RecommendationSet dup{1, {AngleVector::zeros(1), AngleVector::zeros(1)}, "dup", ""};
    CHECK(evaluate_recommendations(dup, sim).best_angle_index == 0);
  }

  TEST_CASE("batch evaluation spends exactly K circuits per instance") {
    const auto test = generate_maxcut_dataset({5, 6}, {0.5, 0.7}, 2, 0);
    Rng rng(1);
    RecommendationSet recs{1, {random_angles(1, rng), random_angles(1, rng), random_angles(1, rng)}, "r", ""};
    const auto serial = recommend_and_evaluate(recs, test, 1);
    const auto parallel = recommend_and_evaluate(recs, test, 4);
    REQUIRE(serial.size() == test.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].circuit_calls == 3);
      CHECK(serial[i].instance_id == test[i].id);
      CHECK(serial[i].best_expectation == parallel[i].best_expectation);
    }
  }

  TEST_CASE("validation") {
    RecommendationSet empty{1, {}, "x", ""};
    CHECK_THROWS_AS(empty.validate(), ParameterError);
    RecommendationSet mixed{1, {AngleVector::zeros(1), AngleVector::zeros(2)}, "x", ""};
    CHECK_THROWS_AS(mixed.validate(), ParameterError);
  }
}
