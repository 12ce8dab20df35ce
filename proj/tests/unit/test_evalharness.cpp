#include "doctest.h"

#include <set>
#include <tuple>

#include "qaoarec/errors.hpp"
#include "qaoarec/evalharness.hpp"
#include "qaoarec/instances.hpp"
#include "qaoarec/rng.hpp"

using namespace qaoarec;

namespace {

struct Fixture {
  std::vector<ProblemInstance> instances;
  AngleDatabase db;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture out;
    out.instances = generate_maxcut_dataset({5, 6, 7}, {0.5, 0.7}, 2, 11);
    std::map<std::string, ExactSolution> exact;
    BuildOptions opt;
    opt.n_restarts = 3;
    opt.seed = 1;
    out.db = AngleDatabase(build_database(out.instances, {1, 2}, opt, {}, exact).records);
    return out;
  }();
  return f;
}

}  // namespace

TEST_SUITE("evalharness") {
  TEST_CASE("metric examples") {
    CHECK(approximation_ratio(-7.0, 7.0) == 1.0);
    CHECK(approximation_ratio(-4.0, 10.0) == 0.4);
    CHECK_THROWS_AS(approximation_ratio(-1.0, 0.0), DomainError);
    CHECK(optimality_gap(-3.0, -3.0) == 0.0);
    CHECK(optimality_gap(0.0, -3.0) == 1.0);
    CHECK_THROWS_AS(optimality_gap(0.0, 0.0), DomainError);
    CHECK(ratio_to_optimal(10, 9, 9) == 1.0);
    CHECK(ratio_to_optimal(10, 9, 8) == 0.5);
    CHECK(ratio_to_optimal(-10, -9, -8) == 0.5);
    CHECK(std::isinf(ratio_to_optimal(10, 9, 10)));
  }

  TEST_CASE("folds are stratified and deterministic") {
    const auto& f = fixture();
    const auto a = make_folds(f.instances, 4, 3);
    CHECK(a == make_folds(f.instances, 4, 3));
    std::map<int, std::set<int>> folds_per_n;
    for (std::size_t i = 0; i < a.size(); ++i) folds_per_n[f.instances[i].n].insert(a[i]);
    for (const auto& [n, folds] : folds_per_n) CHECK(folds.size() == 4);
    std::vector<int> counts(4, 0);
    for (int x : a) counts[x]++;
    CHECK(*std::max_element(counts.begin(), counts.end()) - *std::min_element(counts.begin(), counts.end()) <= 1);
  }

  TEST_CASE("cross-validation covers every instance once") {
    const auto& f = fixture();
    MethodConfig cfg;
    cfg.kind = MethodKind::InstanceFeatures;
    cfg.depths = {1, 2};
    cfg.ks = {1, 3};
    const auto r = run_cv(cfg, f.instances, f.db, 5, 2);
    CHECK(r.samples.size() == f.instances.size() * 4);
    std::map<std::tuple<std::string, int, int>, int> seen;
    for (const auto& s : r.samples) seen[{s.instance_id, s.depth, s.k}]++;
    CHECK(seen.size() == f.instances.size() * 4);
    const auto again = run_cv(cfg, f.instances, f.db, 5, 2, true, 3);
    REQUIRE(again.samples.size() == r.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i) CHECK(again.samples[i].ratio == r.samples[i].ratio);
  }

  TEST_CASE("leave-one-out with k=1") {
    const auto& f = fixture();
    MethodConfig cfg;
    cfg.kind = MethodKind::AngleValues;
    cfg.ks = {1};
    const int n = static_cast<int>(f.instances.size());
    const auto r = run_cv(cfg, f.instances, f.db, n, 0);
    CHECK(r.samples.size() == f.instances.size());
    std::set<int> folds(r.fold_of.begin(), r.fold_of.end());
    CHECK(static_cast<int>(folds.size()) == n);
  }

  TEST_CASE("folds smaller than k are skipped with a warning") {
    const auto& f = fixture();
    MethodConfig cfg;
    cfg.ks = {static_cast<int>(f.instances.size())};
    const auto r = run_cv(cfg, f.instances, f.db, 2, 0);
    CHECK(r.samples.empty());
    CHECK(r.warnings.size() == 2);
  }

  TEST_CASE("test data never reaches fitting") {
    const auto& f = fixture();
    std::map<std::string, Encoding> emb;
    Rng rng(5);
    for (const auto& inst : f.instances) {
      Eigen::VectorXd v(3);
      for (int d = 0; d < 3; ++d) v(d) = rng.uniform(-1, 1);
      emb[inst.id] = {inst.id, EncodingSource::ExternalEmbedding, v, {}};
    }
    MethodConfig cfg;
    cfg.kind = MethodKind::ExternalEmbedding;
    cfg.embeddings = &emb;
    cfg.ks = {2};
    const auto base = run_cv(cfg, f.instances, f.db, 3, 4);
    std::size_t victim = 0;
    while (base.fold_of[victim] != 1) ++victim;
    emb[f.instances[victim].id].vector *= 50.0;
    const auto perturbed = run_cv(cfg, f.instances, f.db, 3, 4);
    for (std::size_t i = 0; i < base.fits.size(); ++i) {
      const auto& a = base.fits[i].fitted;
      const auto& b = perturbed.fits[i].fitted;
      if (base.fits[i].fold != 1) continue;
      CHECK(a.scaler->mean == b.scaler->mean);
      CHECK(a.scaler->scale == b.scaler->scale);
      CHECK(a.model->centroids == b.model->centroids);
      for (int r = 0; r < a.recs.k(); ++r) CHECK(a.recs.angles[r] == b.recs.angles[r]);
    }
  }

  TEST_CASE("own optimum gives ratio at least one") {
    const auto& f = fixture();
    for (const auto& inst : f.instances) {
      const AngleRecord& rec = f.db.at(inst.id, 1);
      Rng rng(stable_hash(inst.id));
      RecommendationSet recs{1, {random_angles(1, rng), rec.angles}, "own", ""};
      const auto o = evaluate_recommendations(recs, QaoaSimulator(to_ising(inst)));
      const double r = ratio_to_optimal(rec.c_opt, -rec.expectation, -o.best_expectation);
      CHECK(r >= 1.0 - 1e-9);
    }
  }

  TEST_CASE("size split") {
    std::vector<ProblemInstance> insts;
    for (int n : {10, 12, 14, 16, 18})
      for (int i = 0; i < 40; ++i) {
        ProblemInstance p;
        p.id = std::to_string(n) + "-" + std::to_string(i);
        p.n = n;
        insts.push_back(p);
      }
    const auto split = size_split(insts, 0.6);
    CHECK(split.train.size() == 120);
    CHECK(split.test.size() == 80);
    for (auto i : split.test) CHECK(insts[i].n >= 16);
    std::vector<ProblemInstance> one(insts.begin(), insts.begin() + 40);
    CHECK_THROWS_AS(size_split(one), ParameterError);

    const auto& f = fixture();
    MethodConfig cfg;
    cfg.kind = MethodKind::InstanceFeatures;
    const auto r = run_size_split(cfg, f.instances, f.db);
    // 12 instances, 4 per size: only the n=5 group fits under 60%.
    CHECK(r.samples.size() == 8);
    for (const auto& s : r.samples) CHECK(s.instance_id.find("-n5-") == std::string::npos);
    CHECK(r.fits.at(0).fitted.scaler->mean.size() == 4);
  }

  TEST_CASE("aggregation baselines evaluate one circuit") {
    const auto& f = fixture();
    MethodConfig cfg;
    cfg.kind = MethodKind::MedianBaseline;
    const auto r = run_cv(cfg, f.instances, f.db, 3, 0);
    CHECK(r.samples.size() == f.instances.size());
    for (const auto& s : r.samples) CHECK(s.k == 1);
  }

  TEST_CASE("summary with optimum hits") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto s = summarize({0.9, 1.0, inf, 0.8, inf}, 1);
    CHECK(s.count == 3);
    CHECK(s.optimum_hits == 2);
    CHECK(s.median == 0.9);
    CHECK(s.ci_low <= s.median);
    CHECK(s.ci_high >= s.median);
    CHECK(median({3, 1, 2, 4}) == 2.5);
  }

  TEST_CASE("ecdf examples") {
    CHECK(ecdf({0.7, 0.7, 0.7}, {0.7}).values[0] == 1.0);
    CHECK(ecdf({0.5, 1.0}, {0.75}).values[0] == 0.5);
    CHECK(ecdf({0.5, 1.0}, {-0.1}).values[0] == 0.0);
    CHECK_THROWS_AS(ecdf({}, {0.5}), ParameterError);
    // A dominates B pointwise: A's curve is never below B's.
    const std::vector<double> b{0.2, 0.5, 0.6, 0.9};
    const std::vector<double> a{0.3, 0.55, 0.8, 0.95};
    const auto grid = linear_grid(0.0, 0.3, 31);
    const auto fa = ecdf(a, grid), fb = ecdf(b, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(fa.values[i] >= fb.values[i]);
  }
}
