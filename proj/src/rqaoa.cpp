#include "qaoarec/rqaoa.hpp"

#include <cmath>
#include <functional>

#include "qaoarec/errors.hpp"

namespace qaoarec {

ReducibleModel::ReducibleModel(IsingModel model) : model_(std::move(model)), active_(model_.n(), true) {}

int ReducibleModel::active_count() const {
  int c = 0;
  for (bool a : active_) c += a ? 1 : 0;
  return c;
}

std::pair<IsingModel, std::vector<int>> ReducibleModel::compact() const {
  std::vector<int> labels;
  std::vector<int> position(model_.n(), -1);
  for (int i = 0; i < model_.n(); ++i)
    if (active_[i]) {
      position[i] = static_cast<int>(labels.size());
      labels.push_back(i);
    }
  IsingModel out(static_cast<int>(labels.size()));
  out.add_offset(model_.offset());
  for (std::size_t c = 0; c < labels.size(); ++c) out.set_bias(static_cast<int>(c), model_.h()(labels[c]));
  for (const auto& [ij, v] : model_.couplings()) out.add_coupling(position[ij.first], position[ij.second], v);
  return {std::move(out), std::move(labels)};
}

ReducibleModel eliminate(const ReducibleModel& m, int kept, int removed, int sign) {
  if (kept == removed) throw ContractError("eliminate: kept and removed variables coincide");
  if (!m.is_active(kept) || !m.is_active(removed))
    throw ContractError("eliminate: variable " + std::to_string(m.is_active(kept) ? removed : kept) + " is not active");
  if (sign != 1 && sign != -1) throw ContractError("eliminate: sign must be +1 or -1");

  const IsingModel& src = m.model_;
  IsingModel out(src.n());
  out.add_offset(src.offset());
  for (int i = 0; i < src.n(); ++i) out.set_bias(i, src.h()(i));
  out.add_bias(kept, sign * src.h()(removed));
  out.set_bias(removed, 0.0);
  for (const auto& [ij, v] : src.couplings()) {
    const auto [a, b] = ij;
    if (a != removed && b != removed) {
      out.add_coupling(a, b, v);
      continue;
    }
    const int other = a == removed ? b : a;
    if (other == kept) out.add_offset(sign * v);
    else out.add_coupling(other, kept, sign * v);
  }
  ReducibleModel r = m;
  r.model_ = std::move(out);
  r.active_[removed] = false;
  return r;
}

std::string to_string(RqaoaMode mode) {
  switch (mode) {
    case RqaoaMode::Recommendations: return "none";
    case RqaoaMode::RandomAngles: return "random";
    case RqaoaMode::BudgetedBfgs: return "bfgs";
  }
  return "unknown";
}

RqaoaMode rqaoa_mode_from_string(const std::string& text) {
  if (text == "none") return RqaoaMode::Recommendations;
  if (text == "random") return RqaoaMode::RandomAngles;
  if (text == "bfgs") return RqaoaMode::BudgetedBfgs;
  throw ParameterError("unknown baseline '" + text + "' (expected none|random|bfgs)");
}

std::pair<int, int> strongest_pair(const std::map<std::pair<int, int>, double>& correlations, double tolerance) {
  if (correlations.empty()) throw ParameterError("strongest_pair: no correlations");
  auto best = correlations.begin();
  for (auto it = std::next(best); it != correlations.end(); ++it)
    if (std::abs(it->second) > std::abs(best->second) + tolerance) best = it;
  return best->first;
}

namespace {

struct IterationState {
  QaoaState state;
  long circuit_calls = 0;
  long gradient_calls = 0;
};

using StateProvider = std::function<IterationState(const QaoaSimulator&, int iteration)>;

RqaoaTrace run_with(const ProblemInstance& inst, int depth, const StateProvider& provider, const RqaoaOptions& opt,
                    double c_opt) {
  if (!inst.is_maxcut()) throw KindError("RQAOA is defined for MaxCut graphs; instance " + inst.id + " is a QUBO");
  const IsingModel original = to_ising(inst);
  const int n = original.n();
  const int iterations = opt.iterations >= 0 ? opt.iterations : (n + 1) / 2;
  if (iterations >= n) throw ParameterError("RQAOA: iteration count must leave at least one variable");

  RqaoaTrace trace;
  trace.instance_id = inst.id;
  trace.depth = depth;
  ReducibleModel current(original);
  for (int it = 0; it < iterations; ++it) {
    if (!current.has_couplings()) break;
    auto [model, labels] = current.compact();
    const QaoaSimulator sim(model);
    IterationState step = provider(sim, it);
    trace.circuit_calls += step.circuit_calls;
    trace.gradient_calls += step.gradient_calls;

    std::vector<std::pair<int, int>> pairs;
    for (const auto& [ij, v] : model.couplings()) pairs.push_back(ij);
    const auto corr = zz_correlations(step.state, pairs);
    const auto [a, b] = strongest_pair(corr, opt.tie_tolerance);
    const double m = corr.at({a, b});
    const int sign = m >= 0.0 ? 1 : -1;
    trace.eliminations.push_back({labels[a], labels[b], sign, m, it});
    current = eliminate(current, labels[a], labels[b], sign);
    ++trace.iterations;
  }

  auto [residual, labels] = current.compact();
  const ExactSolution sol = brute_force_solve(residual, NativeObjective::MinimizeQubo, opt.brute_force_cap);
  trace.final_model = residual;
  trace.final_variables = labels;
  trace.reconstructed.assign(n, 0);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const int s = sol.argmin_config[c] ? -1 : 1;
    trace.final_assignment.push_back(s);
    trace.reconstructed[labels[c]] = s;
  }
  for (auto it = trace.eliminations.rbegin(); it != trace.eliminations.rend(); ++it)
    trace.reconstructed[it->removed] = it->sign * trace.reconstructed[it->kept];

  const double original_energy = original.energy(std::span<const int>(trace.reconstructed));
  const double residual_energy = residual.energy(std::span<const int>(trace.final_assignment));
  if (std::abs(original_energy - residual_energy) > 1e-9 * std::max(1.0, std::abs(original_energy)))
    throw ContractError("RQAOA: back-substituted energy disagrees with the residual model");
  trace.objective = to_native(native_objective(inst), original_energy);
  if (c_opt > 0.0) trace.approximation_ratio = trace.objective / c_opt;
  return trace;
}

}  // namespace

RqaoaTrace run_rqaoa(const ProblemInstance& inst, const RecommendationSet& recs, const RqaoaOptions& options,
                     double c_opt) {
  recs.validate();
  StateProvider provider = [&recs](const QaoaSimulator& sim, int) {
    IterationState best;
    double best_e = std::numeric_limits<double>::infinity();
    for (const auto& a : recs.angles) {
      QaoaState s = sim.evolve(a);
      const double e = sim.expectation(s);
      ++best.circuit_calls;
      if (e < best_e) {
        best_e = e;
        best.state = std::move(s);
      }
    }
    return best;
  };
  RqaoaTrace t = run_with(inst, recs.depth, provider, options, c_opt);
  t.method = recs.source;
  return t;
}

RqaoaTrace run_rqaoa_baseline(const ProblemInstance& inst, int depth, RqaoaMode mode, const RqaoaOptions& options,
                              double c_opt) {
  if (options.budget < 1) throw ParameterError("RQAOA baseline budget must be >= 1");
  StateProvider provider;
  if (mode == RqaoaMode::RandomAngles) {
    provider = [&](const QaoaSimulator& sim, int it) {
      Rng rng(derive_seed(options.seed, {stable_hash(inst.id), static_cast<std::uint64_t>(depth),
                                         static_cast<std::uint64_t>(it)}));
      IterationState best;
      double best_e = std::numeric_limits<double>::infinity();
      for (int b = 0; b < options.budget; ++b) {
        QaoaState s = sim.evolve(random_angles(depth, rng));
        const double e = sim.expectation(s);
        ++best.circuit_calls;
        if (e < best_e) {
          best_e = e;
          best.state = std::move(s);
        }
      }
      return best;
    };
  } else if (mode == RqaoaMode::BudgetedBfgs) {
    provider = [&](const QaoaSimulator& sim, int it) {
      Rng rng(derive_seed(options.seed, {stable_hash(inst.id), static_cast<std::uint64_t>(depth),
                                         static_cast<std::uint64_t>(it)}));
      AngleOptOptions ao = options.angle_options;
      ao.bfgs.max_objective_evals = options.budget;
      const SingleRunResult run = optimize_from(sim, random_angles(depth, rng), ao);
      IterationState out;
      // The winning circuit was already executed during the run.
      out.state = sim.evolve(run.angles);
      out.circuit_calls = run.objective_calls;
      out.gradient_calls = run.gradient_calls;
      return out;
    };
  } else {
    throw ParameterError("run_rqaoa_baseline: use run_rqaoa for recommendation sets");
  }
  RqaoaTrace t = run_with(inst, depth, provider, options, c_opt);
  t.method = to_string(mode);
  return t;
}

PooledRqaoa run_rqaoa_pooled(const ProblemInstance& inst, const std::vector<RecommendationSet>& sources,
                             const RqaoaOptions& options, double c_opt) {
  if (sources.empty()) throw ParameterError("run_rqaoa_pooled: no recommendation sources");
  PooledRqaoa out;
  for (const auto& recs : sources) {
    out.traces.push_back(run_rqaoa(inst, recs, options, c_opt));
    if (out.traces.back().objective > out.traces[out.best].objective) out.best = out.traces.size() - 1;
  }
  return out;
}

}  // namespace qaoarec
