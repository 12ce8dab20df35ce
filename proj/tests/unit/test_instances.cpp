#include "doctest.h"

#include <set>

#include "qaoarec/errors.hpp"
#include "qaoarec/instances.hpp"
#include "qaoarec/store.hpp"

using namespace qaoarec;

TEST_SUITE("instances") {
  TEST_CASE("er graph is deterministic and well formed") {
    const auto a = generate_er_graph(12, 0.7, 7);
    const auto b = generate_er_graph(12, 0.7, 7);
    CHECK(a == b);
    CHECK(a.id == "maxcut-n12-p0.7-s7-k0");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : a.edges) {
      CHECK(e.i < e.j);
      CHECK(e.j < 12);
      CHECK(e.w == 1.0);
      CHECK(seen.insert({e.i, e.j}).second);
    }
    CHECK(a.density() >= 0.0);
    CHECK(a.density() <= 1.0);
  }

  TEST_CASE("er edge count averages n(n-1)p/2") {
    double total = 0.0;
    const int trials = 2000;
    for (int s = 0; s < trials; ++s) total += generate_er_graph(10, 0.5, s).edges.size();
    // Binomial(45, 0.5): sd of the mean is sqrt(11.25 / 2000) ~ 0.075.
    CHECK(total / trials == doctest::Approx(22.5).epsilon(0.02));
  }

  TEST_CASE("two-node graphs only contain the single pair") {
    for (int s = 0; s < 50; ++s) {
      const auto g = generate_er_graph(2, 0.999999, s);
      CHECK(g.edges.size() <= 1);
      for (const auto& e : g.edges) CHECK((e.i == 0 && e.j == 1));
    }
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(generate_er_graph(1, 0.5, 0), ParameterError);
    CHECK_THROWS_AS(generate_er_graph(5, 0.0, 0), ParameterError);
    CHECK_THROWS_AS(generate_er_graph(5, 1.0, 0), ParameterError);
    CHECK_THROWS_AS(generate_dense_qubo(1, 0), ParameterError);
  }

  TEST_CASE("dense qubo coefficients") {
    for (auto [n, s] : {std::pair{10, 3}, std::pair{18, 1}}) {
      const auto q = generate_dense_qubo(n, s);
      int count = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (j < i) {
            CHECK(q.qubo(i, j) == 0.0);
            continue;
          }
          ++count;
          CHECK(q.qubo(i, j) >= -1.0);
          CHECK(q.qubo(i, j) <= 1.0);
        }
      CHECK(count == n * (n + 1) / 2);
      CHECK(q == generate_dense_qubo(n, s));
    }
    for (int s = 0; s < 200; ++s) {
      const auto q = generate_dense_qubo(6, s);
      CHECK(q.qubo.cwiseAbs().maxCoeff() <= 1.0);
    }
  }

  TEST_CASE("paper dataset sizes") {
    const auto all = generate_paper_datasets(0);
    REQUIRE(all.size() == 300);
    std::map<int, int> maxcut_per_n, qubo_per_n;
    std::set<std::string> ids;
    for (const auto& inst : all) {
      (inst.is_maxcut() ? maxcut_per_n : qubo_per_n)[inst.n]++;
      ids.insert(inst.id);
    }
    CHECK(ids.size() == 300);
    for (int n : {10, 12, 14, 16, 18}) {
      CHECK(maxcut_per_n[n] == 40);
      CHECK(qubo_per_n[n] == 20);
    }
  }

  TEST_CASE("round trip through the instance format is byte identical") {
    const auto all = generate_paper_datasets(5);
    std::vector<ProblemInstance> sample(all.begin(), all.begin() + 3);
    sample.push_back(all.back());
    for (const auto& inst : sample) {
      const auto j = store::to_json(inst);
      const auto back = store::instance_from_json(store::json::parse(j.dump()));
      CHECK(back == inst);
      CHECK(store::to_json(back).dump() == j.dump());
    }
  }
}
