#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaoarec/bfgs.hpp"
#include "qaoarec/ising.hpp"
#include "qaoarec/qaoa_sim.hpp"
#include "qaoarec/rng.hpp"

namespace qaoarec {

// Best angles found for one (instance, depth). Call counts are circuit
// evaluations: objective calls are line-search/initial evaluations, gradient
// calls are the 4p circuits of each central-difference stencil.
struct AngleRecord {
  std::string instance_id;
  int p = 0;
  AngleVector angles;
  double expectation = 0.0;  // Ising convention
  double c_opt = 0.0;        // native convention
  int n_restarts = 0;
  int n_aborted_restarts = 0;
  long n_circuit_calls = 0;  // objective + gradient calls over all restarts
  long n_objective_calls = 0;
  long n_gradient_calls = 0;
  long best_restart_calls = 0;  // objective calls of the winning restart
  long best_restart_gradient_calls = 0;
};

struct AngleOptOptions {
  BfgsOptions bfgs{};
  double fd_step = 1e-6;
  // Reduce returned angles into [0, 2pi) where the expectation is periodic.
  bool wrap_angles = true;
};

// Initial angles of restart r are uniform on [0, 2pi)^{2p}, drawn from a
// stream derived from (seed, r); restart sets are therefore nested in
// n_restarts.
AngleVector random_angles(int p, Rng& rng);

AngleRecord optimize_angles(const IsingModel& model, int p, int n_restarts, std::uint64_t seed,
                            const AngleOptOptions& options = {});

// Single BFGS run from a given start; exposed for RQAOA baselines and tests.
struct SingleRunResult {
  AngleVector angles;
  double expectation = 0.0;
  double initial_expectation = 0.0;
  long objective_calls = 0;
  long gradient_calls = 0;
  BfgsStatus status = BfgsStatus::MaxIterations;
};
SingleRunResult optimize_from(const QaoaSimulator& sim, const AngleVector& start, const AngleOptOptions& options = {});

// Brings angles into [0, 2pi): beta always, gamma only for 2pi-periodic models.
AngleVector wrap_angles(const AngleVector& angles, bool gamma_periodic);

struct DatabaseError {
  std::string instance_id;
  std::string message;
};

struct DatabaseBuild {
  std::vector<AngleRecord> records;  // existing + new, ordered by (instance order, depth)
  std::vector<DatabaseError> errors;
  int new_optimizations = 0;
};

struct BuildOptions {
  int n_restarts = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
  int brute_force_cap = kDefaultBruteForceCap;
  AngleOptOptions angle_options{};
};

// Optimizes every (instance, depth) pair not already present in `existing`.
// Missing exact solutions are computed by brute force (and added to `exact`).
// `on_record` is called (serialized) for each newly produced record, which
// lets callers append to disk as work completes.
DatabaseBuild build_database(const std::vector<ProblemInstance>& instances, const std::vector<int>& depths,
                             const BuildOptions& options, const std::vector<AngleRecord>& existing,
                             std::map<std::string, ExactSolution>& exact,
                             const std::function<void(const AngleRecord&)>& on_record = {});

// Lookup keyed by (instance id, depth).
class AngleDatabase {
 public:
  AngleDatabase() = default;
  explicit AngleDatabase(std::vector<AngleRecord> records);

  const std::vector<AngleRecord>& records() const { return records_; }
  const AngleRecord* find(const std::string& id, int p) const;
  const AngleRecord& at(const std::string& id, int p) const;
  std::vector<const AngleRecord*> at_depth(int p) const;

 private:
  std::vector<AngleRecord> records_;
  std::map<std::pair<std::string, int>, std::size_t> index_;
};

}  // namespace qaoarec
