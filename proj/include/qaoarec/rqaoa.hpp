#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/ising.hpp"
#include "qaoarec/recommend.hpp"

namespace qaoarec {

// An Ising model over the original variable labels where some variables have
// been eliminated. Inactive variables carry no terms.
class ReducibleModel {
 public:
  explicit ReducibleModel(IsingModel model);

  const IsingModel& model() const { return model_; }
  const std::vector<bool>& active() const { return active_; }
  bool is_active(int i) const { return i >= 0 && i < model_.n() && active_[i]; }
  int active_count() const;
  bool has_couplings() const { return !model_.couplings().empty(); }

  // Compact model over the active variables (in increasing label order) and
  // the original label of each compact index.
  std::pair<IsingModel, std::vector<int>> compact() const;

 private:
  friend ReducibleModel eliminate(const ReducibleModel& m, int kept, int removed, int sign);
  IsingModel model_;
  std::vector<bool> active_;
};

// Substitutes s_removed = sign * s_kept: J_{k,removed} merges into J_{k,kept},
// J_{kept,removed} becomes the constant sign * J, h_removed merges into
// h_kept, and `removed` becomes inactive.
ReducibleModel eliminate(const ReducibleModel& m, int kept, int removed, int sign);

struct Elimination {
  int kept = 0;
  int removed = 0;
  int sign = 1;
  double correlation = 0.0;
  int iteration = 0;
};

struct RqaoaTrace {
  std::string instance_id;
  std::string method;
  int depth = 0;
  std::vector<Elimination> eliminations;
  IsingModel final_model;                // compact residual model
  std::vector<int> final_variables;      // original labels of the residual
  std::vector<int> final_assignment;     // spins of the residual
  std::vector<int> reconstructed;        // spins of every original variable
  double objective = 0.0;                // native convention
  double approximation_ratio = 0.0;      // objective / C_opt when known
  long circuit_calls = 0;
  long gradient_calls = 0;
  int iterations = 0;
};

enum class RqaoaMode { Recommendations, RandomAngles, BudgetedBfgs };

std::string to_string(RqaoaMode mode);
RqaoaMode rqaoa_mode_from_string(const std::string& text);

struct RqaoaOptions {
  int iterations = -1;  // -1: ceil(n / 2)
  std::uint64_t seed = 0;
  int budget = 3;       // baselines: objective evaluations per iteration
  int brute_force_cap = kDefaultBruteForceCap;
  AngleOptOptions angle_options{};
  double tie_tolerance = 1e-12;
};

// Pair with the largest |M_ij| over the given correlations; ties within
// `tolerance` resolve to the lexicographically smallest pair.
std::pair<int, int> strongest_pair(const std::map<std::pair<int, int>, double>& correlations, double tolerance = 1e-12);

// Recursive QAOA with a frozen recommendation set (K circuits per iteration).
RqaoaTrace run_rqaoa(const ProblemInstance& inst, const RecommendationSet& recs, const RqaoaOptions& options = {},
                     double c_opt = 0.0);

// Baselines: `budget` fresh uniform angle vectors per iteration, or BFGS from
// a random start capped at `budget` objective evaluations per iteration.
RqaoaTrace run_rqaoa_baseline(const ProblemInstance& inst, int depth, RqaoaMode mode,
                              const RqaoaOptions& options = {}, double c_opt = 0.0);

// Runs every recommendation source independently; `best` indexes the trace
// with the highest native objective (first wins ties).
struct PooledRqaoa {
  std::vector<RqaoaTrace> traces;
  std::size_t best = 0;
};
PooledRqaoa run_rqaoa_pooled(const ProblemInstance& inst, const std::vector<RecommendationSet>& sources,
                             const RqaoaOptions& options = {}, double c_opt = 0.0);

}  // namespace qaoarec
