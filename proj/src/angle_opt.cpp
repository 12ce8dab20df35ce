#include "qaoarec/angle_opt.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <set>

#include "qaoarec/errors.hpp"
#include "qaoarec/parallel.hpp"

namespace qaoarec {

AngleVector random_angles(int p, Rng& rng) {
  Eigen::VectorXd x(2 * p);
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return AngleVector::from_flat(x);
}

AngleVector wrap_angles(const AngleVector& angles, bool gamma_periodic) {
  const double period = 2.0 * std::numbers::pi;
  auto wrap = [period](double a) {
    double r = std::fmod(a, period);
    if (r < 0.0) r += period;
    return r >= period ? 0.0 : r;
  };
  AngleVector out = angles;
  out.beta = out.beta.unaryExpr(wrap);
  if (gamma_periodic) out.gamma = out.gamma.unaryExpr(wrap);
  return out;
}

SingleRunResult optimize_from(const QaoaSimulator& sim, const AngleVector& start, const AngleOptOptions& options) {
  long stencil_calls = 0;
  ScalarFunction objective = [&sim](const Eigen::VectorXd& x) { return sim.expectation(AngleVector::from_flat(x)); };
  GradientFunction gradient = [&](const Eigen::VectorXd& x) {
    stencil_calls += 2 * x.size();
    return central_difference_gradient(objective, x, options.fd_step);
  };
  const BfgsResult r = minimize_bfgs(objective, gradient, start.flat(), options.bfgs);
  SingleRunResult out;
  out.angles = AngleVector::from_flat(r.x);
  out.expectation = r.f;
  out.initial_expectation = r.f_initial;
  out.objective_calls = r.objective_evals;
  out.gradient_calls = stencil_calls;
  out.status = r.status;
  return out;
}

AngleRecord optimize_angles(const IsingModel& model, int p, int n_restarts, std::uint64_t seed,
                            const AngleOptOptions& options) {
  if (n_restarts < 1) throw ParameterError("optimize_angles: n_restarts must be >= 1");
  if (p < 1) throw ParameterError("optimize_angles: depth must be >= 1");
  const QaoaSimulator sim(model);
  AngleRecord rec;
  rec.p = p;
  rec.n_restarts = n_restarts;
  rec.expectation = std::numeric_limits<double>::infinity();
  rec.c_opt = std::numeric_limits<double>::quiet_NaN();
  bool found = false;
  for (int r = 0; r < n_restarts; ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    const AngleVector start = random_angles(p, rng);
    const SingleRunResult run = optimize_from(sim, start, options);
    rec.n_objective_calls += run.objective_calls;
    rec.n_gradient_calls += run.gradient_calls;
    if (run.status == BfgsStatus::NonFinite || !std::isfinite(run.expectation)) {
      ++rec.n_aborted_restarts;
      std::cerr << "warning: restart " << r << " aborted on a non-finite objective\n";
      continue;
    }
    if (!found || run.expectation < rec.expectation) {
      found = true;
      rec.expectation = run.expectation;
      rec.angles = run.angles;
      rec.best_restart_calls = run.objective_calls;
      rec.best_restart_gradient_calls = run.gradient_calls;
    }
  }
  rec.n_circuit_calls = rec.n_objective_calls + rec.n_gradient_calls;
  if (!found) throw DomainError("optimize_angles: every restart produced a non-finite objective");
  if (options.wrap_angles) rec.angles = wrap_angles(rec.angles, gamma_is_2pi_periodic(model));
  return rec;
}

AngleDatabase::AngleDatabase(std::vector<AngleRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) index_[{records_[i].instance_id, records_[i].p}] = i;
}

const AngleRecord* AngleDatabase::find(const std::string& id, int p) const {
  auto it = index_.find({id, p});
  return it == index_.end() ? nullptr : &records_[it->second];
}

const AngleRecord& AngleDatabase::at(const std::string& id, int p) const {
  const AngleRecord* r = find(id, p);
  if (!r) throw DomainError("angle database has no record for instance " + id + " at depth " + std::to_string(p));
  return *r;
}

std::vector<const AngleRecord*> AngleDatabase::at_depth(int p) const {
  std::vector<const AngleRecord*> out;
  for (const auto& r : records_)
    if (r.p == p) out.push_back(&r);
  return out;
}

DatabaseBuild build_database(const std::vector<ProblemInstance>& instances, const std::vector<int>& depths,
                             const BuildOptions& options, const std::vector<AngleRecord>& existing,
                             std::map<std::string, ExactSolution>& exact,
                             const std::function<void(const AngleRecord&)>& on_record) {
  DatabaseBuild out;
  std::map<std::pair<std::string, int>, AngleRecord> have;
  for (const auto& r : existing) have[{r.instance_id, r.p}] = r;

  struct Task {
    std::size_t instance;
    int p;
  };
  std::vector<Task> tasks;
  std::set<std::string> failed;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    bool needs_work = false;
    for (int p : depths) needs_work |= !have.count({inst.id, p});
    if (!needs_work) continue;
    if (!exact.count(inst.id)) {
      try {
        exact[inst.id] = brute_force_solve(to_ising(inst), native_objective(inst), options.brute_force_cap);
      } catch (const Error& e) {
        out.errors.push_back({inst.id, e.what()});
        failed.insert(inst.id);
        continue;
      }
    }
    for (int p : depths)
      if (!have.count({inst.id, p})) tasks.push_back({i, p});
  }

  std::vector<std::optional<AngleRecord>> produced(tasks.size());
  std::vector<std::string> task_errors(tasks.size());
  std::mutex emit_mutex;
  parallel_for(tasks.size(), options.jobs, [&](std::size_t t) {
    const auto& inst = instances[tasks[t].instance];
    const int p = tasks[t].p;
    try {
      const std::uint64_t s = derive_seed(options.seed, {stable_hash(inst.id), static_cast<std::uint64_t>(p)});
      AngleRecord rec = optimize_angles(to_ising(inst), p, options.n_restarts, s, options.angle_options);
      rec.instance_id = inst.id;
      rec.c_opt = exact.at(inst.id).c_opt;
      if (on_record) {
        std::lock_guard lock(emit_mutex);
        on_record(rec);
      }
      produced[t] = std::move(rec);
    } catch (const Error& e) {
      task_errors[t] = e.what();
    }
  });
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (produced[t]) {
      have[{produced[t]->instance_id, produced[t]->p}] = *produced[t];
      ++out.new_optimizations;
    } else {
      out.errors.push_back({instances[tasks[t].instance].id, task_errors[t]});
    }
  }

  std::set<std::pair<std::string, int>> emitted;
  for (const auto& inst : instances)
    for (int p : depths) {
      auto it = have.find({inst.id, p});
      if (it != have.end() && emitted.insert(it->first).second) out.records.push_back(it->second);
    }
  // Records for instances outside this request are kept, after the requested ones.
  for (const auto& [key, rec] : have)
    if (!emitted.count(key)) out.records.push_back(rec);
  return out;
}

}  // namespace qaoarec
