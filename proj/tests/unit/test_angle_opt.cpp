#include "doctest.h"

#include <filesystem>

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/bfgs.hpp"
#include "qaoarec/errors.hpp"
#include "qaoarec/instances.hpp"

using namespace qaoarec;

namespace {

ProblemInstance single_edge() {
  ProblemInstance k2;
  k2.id = "k2";
  k2.n = 2;
  k2.edges = {{0, 1, 1.0}};
  return k2;
}

}  // namespace

TEST_SUITE("bfgs") {
  TEST_CASE("rosenbrock") {
    const ScalarFunction f = [](const Eigen::VectorXd& x) {
      return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
    };
    const GradientFunction g = [](const Eigen::VectorXd& x) {
      Eigen::VectorXd d(2);
      d << -400 * x(0) * (x(1) - x(0) * x(0)) - 2 * (1 - x(0)), 200 * (x(1) - x(0) * x(0));
      return d;
    };
    const auto r = minimize_bfgs(f, g, Eigen::Vector2d(-1.2, 1.0));
    CHECK((r.x - Eigen::Vector2d(1, 1)).norm() <= 1e-6);
    CHECK(r.f <= r.f_initial);
  }

  TEST_CASE("central differences") {
    const ScalarFunction f = [](const Eigen::VectorXd& x) { return std::sin(x(0)) * std::exp(x(1)); };
    const Eigen::Vector2d x(0.3, -0.2);
    const Eigen::VectorXd g = central_difference_gradient(f, x);
    CHECK(std::abs(g(0) - std::cos(0.3) * std::exp(-0.2)) <= 1e-8);
    CHECK(std::abs(g(1) - std::sin(0.3) * std::exp(-0.2)) <= 1e-8);
  }

  TEST_CASE("evaluation cap") {
    long calls = 0;
    const ScalarFunction f = [&](const Eigen::VectorXd& x) {
      ++calls;
      return x.squaredNorm();
    };
    const GradientFunction g = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(2 * x); };
    BfgsOptions opt;
    opt.max_objective_evals = 3;
    const auto r = minimize_bfgs(f, g, Eigen::Vector3d(1, 2, 3), opt);
    CHECK(calls <= 3);
    CHECK(r.objective_evals <= 3);
    CHECK(r.f <= r.f_initial);
  }

  TEST_CASE("non-finite objective stops the run") {
    const ScalarFunction f = [](const Eigen::VectorXd& x) {
      return x(0) > 0.5 ? std::numeric_limits<double>::quiet_NaN() : -x(0);
    };
    const GradientFunction g = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Constant(1, -1.0); };
    const auto r = minimize_bfgs(f, g, Eigen::VectorXd::Zero(1));
    CHECK(std::isfinite(r.f));
    CHECK(r.f <= r.f_initial);
  }
}

TEST_SUITE("angle_opt") {
  TEST_CASE("single edge reaches ratio one") {
    const auto rec = optimize_angles(to_ising(single_edge()), 1, 50, 0);
    CHECK(std::abs(rec.expectation + 1.0) <= 1e-6);
    CHECK(rec.n_restarts == 50);
    CHECK(rec.n_circuit_calls >= rec.n_restarts);
    CHECK(rec.n_circuit_calls == rec.n_objective_calls + rec.n_gradient_calls);
    CHECK(rec.best_restart_calls >= 1);
    CHECK(rec.angles.depth() == 1);
    CHECK(rec.angles.beta(0) >= 0.0);
    CHECK(rec.angles.beta(0) < 2 * M_PI);
  }

  TEST_CASE("stationary start never gets worse") {
    const auto m = to_ising(generate_er_graph(6, 0.5, 3));
    const QaoaSimulator sim(m);
    const auto r = optimize_from(sim, AngleVector::zeros(1));
    CHECK(r.expectation <= r.initial_expectation);
    Eigen::VectorXd flat = AngleVector::zeros(1).flat();
    const Eigen::VectorXd grad = central_difference_gradient(
        [&](const Eigen::VectorXd& x) { return sim.expectation(AngleVector::from_flat(x)); }, flat);
    CHECK(grad.norm() <= 1e-8);
  }

  TEST_CASE("every restart is monotone and best-of is nested") {
    for (int s = 0; s < 5; ++s) {
      const auto m = to_ising(generate_er_graph(6, 0.6, 100 + s));
      const double e10 = optimize_angles(m, 1, 10, s).expectation;
      const double e50 = optimize_angles(m, 1, 50, s).expectation;
      CHECK(e50 <= e10);
      const QaoaSimulator sim(m);
      Rng rng(derive_seed(s, {0}));
      const auto r = optimize_from(sim, random_angles(2, rng));
      CHECK(r.expectation <= r.initial_expectation);
    }
  }

  TEST_CASE("expectation never beats the ground state") {
    const auto g = generate_er_graph(7, 0.5, 12);
    const auto m = to_ising(g);
    const auto sol = brute_force_solve(m, NativeObjective::MaximizeCut);
    for (int p : {1, 2}) CHECK(optimize_angles(m, p, 5, 1).expectation >= -sol.c_opt - 1e-12);
  }

  TEST_CASE("angle wrapping") {
    const AngleVector a(Eigen::Vector2d(-0.5, 7.0), Eigen::Vector2d(-1.0, 6.5));
    const auto w = wrap_angles(a, true);
    CHECK(std::abs(w.gamma(0) - (2 * M_PI - 0.5)) <= 1e-15);
    CHECK(std::abs(w.gamma(1) - (7.0 - 2 * M_PI)) <= 1e-15);
    CHECK(std::abs(w.beta(0) - (2 * M_PI - 1.0)) <= 1e-15);
    const auto u = wrap_angles(a, false);
    CHECK(u.gamma == a.gamma);
  }

  TEST_CASE("build_database is deterministic and resumable") {
    const auto insts = generate_maxcut_dataset({6, 7}, {0.5}, 2, 3);
    std::map<std::string, ExactSolution> exact;
    BuildOptions opt;
    opt.n_restarts = 3;
    opt.seed = 4;
    const auto first = build_database(insts, {1, 2}, opt, {}, exact);
    CHECK(first.records.size() == 8);
    CHECK(first.new_optimizations == 8);
    CHECK(exact.size() == 4);
    for (const auto& r : first.records) CHECK(r.c_opt == exact.at(r.instance_id).c_opt);

    opt.jobs = 3;
    std::map<std::string, ExactSolution> exact2;
    const auto parallel = build_database(insts, {1, 2}, opt, {}, exact2);
    for (std::size_t i = 0; i < first.records.size(); ++i) {
      CHECK(parallel.records[i].instance_id == first.records[i].instance_id);
      CHECK(parallel.records[i].angles == first.records[i].angles);
      CHECK(parallel.records[i].expectation == first.records[i].expectation);
    }

    const auto again = build_database(insts, {1, 2}, opt, first.records, exact);
    CHECK(again.new_optimizations == 0);
    CHECK(again.records.size() == 8);
    CHECK(build_database({}, {1}, opt, {}, exact).records.empty());

    // Partial database: only the missing depth is optimized and matches.
    std::vector<AngleRecord> partial;
    for (const auto& r : first.records)
      if (r.p == 1) partial.push_back(r);
    const auto resumed = build_database(insts, {1, 2}, opt, partial, exact);
    CHECK(resumed.new_optimizations == 4);
    for (std::size_t i = 0; i < first.records.size(); ++i)
      CHECK(resumed.records[i].expectation == first.records[i].expectation);
  }

  TEST_CASE("instances over the brute-force cap become error entries") {
    const auto insts = generate_maxcut_dataset({5, 9}, {0.5}, 1, 0);
    std::map<std::string, ExactSolution> exact;
    BuildOptions opt;
    opt.n_restarts = 2;
    opt.brute_force_cap = 6;
    const auto db = build_database(insts, {1}, opt, {}, exact);
    CHECK(db.records.size() == 1);
    REQUIRE(db.errors.size() == 1);
    CHECK(db.errors[0].instance_id == insts[1].id);
  }

  TEST_CASE("angle database lookup") {
    AngleRecord r;
    r.instance_id = "a";
    r.p = 1;
    r.angles = AngleVector::zeros(1);
    const AngleDatabase db({r});
    CHECK(db.find("a", 1) != nullptr);
    CHECK(db.find("a", 2) == nullptr);
    CHECK_THROWS_AS(db.at("b", 1), DomainError);
    CHECK(db.at_depth(1).size() == 1);
  }
}
