#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qaoarec/instances.hpp"

namespace qaoarec {

// Configurations are indexed by bitstrings: bit i of x set means s_i = -1
// (qubit i in |1>), so x = 0 is the all-up configuration.
inline int spin_of(std::uint64_t x, int i) { return ((x >> i) & 1U) ? -1 : 1; }

// energy(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j.
// Couplings are stored sparsely with no zero entries.
class IsingModel {
 public:
  using Pair = std::pair<int, int>;

  IsingModel() = default;
  explicit IsingModel(int n) : h_(Eigen::VectorXd::Zero(n)) {}

  int n() const { return static_cast<int>(h_.size()); }
  const Eigen::VectorXd& h() const { return h_; }
  const std::map<Pair, double>& couplings() const { return J_; }
  double offset() const { return offset_; }

  double coupling(int i, int j) const;
  void add_bias(int i, double v) { h_(i) += v; }
  void set_bias(int i, double v) { h_(i) = v; }
  // Adds v to J_{min(i,j),max(i,j)}; the entry is dropped if it becomes zero.
  void add_coupling(int i, int j, double v);
  void add_offset(double v) { offset_ += v; }

  double energy(std::uint64_t x) const;
  double energy(std::span<const int> spins) const;

  bool has_fields() const { return h_.cwiseAbs().maxCoeff() > 0.0; }

  friend bool operator==(const IsingModel& a, const IsingModel& b) {
    return a.h_ == b.h_ && a.J_ == b.J_ && a.offset_ == b.offset_;
  }

 private:
  Eigen::VectorXd h_;
  std::map<Pair, double> J_;
  double offset_ = 0.0;
};

enum class NativeObjective { MaximizeCut, MinimizeQubo };

NativeObjective native_objective(const ProblemInstance& inst);

// Value in the instance's own convention: cut for MaxCut (energy = -cut),
// QUBO value for QUBO (energy = QUBO value).
inline double to_native(NativeObjective obj, double ising_energy) {
  return obj == NativeObjective::MaximizeCut ? -ising_energy : ising_energy;
}
inline double from_native(NativeObjective obj, double native) {
  return obj == NativeObjective::MaximizeCut ? -native : native;
}

struct ExactSolution {
  double c_opt = 0.0;
  std::vector<std::uint8_t> argmin_config;  // bit i = x_i
};

// h = 0, J_ij = w_ij / 2, offset = -W / 2, so energy(s) = -cut(s).
IsingModel maxcut_to_ising(const ProblemInstance& inst);

// Exact substitution x_i = (1 - s_i) / 2 including the constant.
IsingModel qubo_to_ising(const ProblemInstance& inst);

IsingModel to_ising(const ProblemInstance& inst);

// Ancilla-node reduction: node n is pinned to the "0" side. For every x,
// qubo(x) = constant - cut(s) where s_i = 1 - 2 (x_i xor ancilla bit).
struct MaxCutReduction {
  ProblemInstance graph;
  double constant = 0.0;
};
MaxCutReduction qubo_to_maxcut(const ProblemInstance& inst);

double cut_value(const ProblemInstance& graph, std::uint64_t x);
double qubo_value(const ProblemInstance& inst, std::uint64_t x);

inline constexpr int kDefaultBruteForceCap = 24;

// Exhaustive Gray-code scan of all 2^n configurations. Ties (within 1e-9)
// resolve to the lexicographically smallest bit vector (x_0 compared first).
ExactSolution brute_force_solve(const IsingModel& model, NativeObjective native,
                                int max_n = kDefaultBruteForceCap);

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> index_to_bits(std::uint64_t x, int n);

}  // namespace qaoarec
