#include "qaoarec/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "qaoarec/errors.hpp"

namespace qaoarec {

double IsingModel::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = J_.find({i, j});
  return it == J_.end() ? 0.0 : it->second;
}

void IsingModel::add_coupling(int i, int j, double v) {
  if (i == j) throw ParameterError("add_coupling: self-coupling on variable " + std::to_string(i));
  if (i < 0 || j < 0 || i >= n() || j >= n()) throw ParameterError("add_coupling: index out of range");
  if (i > j) std::swap(i, j);
  if (v == 0.0) return;
  auto [it, inserted] = J_.try_emplace({i, j}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0.0) J_.erase(it);
  }
}

double IsingModel::energy(std::uint64_t x) const {
  double e = offset_;
  for (int i = 0; i < n(); ++i) e += h_(i) * spin_of(x, i);
  for (const auto& [ij, v] : J_) e += v * spin_of(x, ij.first) * spin_of(x, ij.second);
  return e;
}

double IsingModel::energy(std::span<const int> spins) const {
  if (static_cast<int>(spins.size()) != n()) throw KindError("energy: spin vector has wrong length");
  double e = offset_;
  for (int i = 0; i < n(); ++i) e += h_(i) * spins[i];
  for (const auto& [ij, v] : J_) e += v * spins[ij.first] * spins[ij.second];
  return e;
}

NativeObjective native_objective(const ProblemInstance& inst) {
  return inst.is_maxcut() ? NativeObjective::MaximizeCut : NativeObjective::MinimizeQubo;
}

IsingModel maxcut_to_ising(const ProblemInstance& inst) {
  if (!inst.is_maxcut()) throw KindError("maxcut_to_ising: instance " + inst.id + " is not a MaxCut graph");
  IsingModel m(inst.n);
  for (const auto& e : inst.edges) {
    m.add_coupling(e.i, e.j, 0.5 * e.w);
    m.add_offset(-0.5 * e.w);
  }
  return m;
}

IsingModel qubo_to_ising(const ProblemInstance& inst) {
  if (inst.is_maxcut()) throw KindError("qubo_to_ising: instance " + inst.id + " is not a QUBO");
  const int n = inst.n;
  IsingModel m(n);
  for (int i = 0; i < n; ++i) {
    const double q = inst.qubo(i, i);
    m.add_offset(0.5 * q);
    m.add_bias(i, -0.5 * q);
    for (int j = i + 1; j < n; ++j) {
      const double qij = inst.qubo(i, j);
      if (qij == 0.0) continue;
      m.add_offset(0.25 * qij);
      m.add_bias(i, -0.25 * qij);
      m.add_bias(j, -0.25 * qij);
      m.add_coupling(i, j, 0.25 * qij);
    }
  }
  return m;
}

IsingModel to_ising(const ProblemInstance& inst) {
  return inst.is_maxcut() ? maxcut_to_ising(inst) : qubo_to_ising(inst);
}

MaxCutReduction qubo_to_maxcut(const ProblemInstance& inst) {
  const IsingModel ising = qubo_to_ising(inst);
  const int n = inst.n;
  MaxCutReduction red;
  red.graph.kind = InstanceKind::MaxCutGraph;
  red.graph.n = n + 1;
  red.graph.id = inst.id + "-maxcut";
  red.graph.meta = inst.meta;

  // Couplings c_ab on the (n+1)-node graph; h_i becomes a coupling to the ancilla.
  std::map<IsingModel::Pair, double> c = ising.couplings();
  for (int i = 0; i < n; ++i)
    if (ising.h()(i) != 0.0) c[{i, n}] += ising.h()(i);

  double total_w = 0.0;
  for (const auto& [ij, v] : c) {
    if (v == 0.0) continue;
    red.graph.edges.push_back({ij.first, ij.second, 2.0 * v});
    total_w += 2.0 * v;
  }
  red.constant = ising.offset() + 0.5 * total_w;
  return red;
}

double cut_value(const ProblemInstance& graph, std::uint64_t x) {
  double cut = 0.0;
  for (const auto& e : graph.edges)
    if (((x >> e.i) ^ (x >> e.j)) & 1U) cut += e.w;
  return cut;
}

double qubo_value(const ProblemInstance& inst, std::uint64_t x) {
  double v = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    if (!((x >> i) & 1U)) continue;
    for (int j = i; j < inst.n; ++j)
      if ((x >> j) & 1U) v += inst.qubo(i, j);
  }
  return v;
}

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) x |= (std::uint64_t{1} << i);
  return x;
}

std::vector<std::uint8_t> index_to_bits(std::uint64_t x, int n) {
  std::vector<std::uint8_t> bits(n);
  for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((x >> i) & 1U);
  return bits;
}

namespace {

// Bit-reversed key: comparing keys numerically compares bit vectors
// lexicographically with x_0 as the most significant position.
std::uint64_t lex_key(std::uint64_t x, int n) {
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) r |= ((x >> i) & 1U) << (n - 1 - i);
  return r;
}

}  // namespace

ExactSolution brute_force_solve(const IsingModel& model, NativeObjective native, int max_n) {
  const int n = model.n();
  if (n > max_n)
    throw ResourceError("brute_force_solve: n = " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(max_n));
  if (n == 0) return {to_native(native, model.offset()), {}};

  std::vector<std::vector<std::pair<int, double>>> nbrs(n);
  for (const auto& [ij, v] : model.couplings()) {
    nbrs[ij.first].emplace_back(ij.second, v);
    nbrs[ij.second].emplace_back(ij.first, v);
  }
  std::vector<int> s(n, 1);
  double e = model.energy(std::uint64_t{0});
  std::uint64_t x = 0;
  std::uint64_t best_x = 0;
  double best_e = e;
  const std::uint64_t total = std::uint64_t{1} << n;
  const double tol = 1e-9;

  for (std::uint64_t k = 1; k < total; ++k) {
    const int q = std::countr_zero(k);
    double field = model.h()(q);
    for (const auto& [j, v] : nbrs[q]) field += v * s[j];
    e -= 2.0 * s[q] * field;
    s[q] = -s[q];
    x ^= (std::uint64_t{1} << q);
    const double scale = std::max(1.0, std::abs(best_e));
    if (e < best_e - tol * scale) {
      best_e = e;
      best_x = x;
    } else if (e <= best_e + tol * scale && lex_key(x, n) < lex_key(best_x, n)) {
      best_e = std::min(best_e, e);
      best_x = x;
    }
  }
  ExactSolution sol;
  sol.argmin_config = index_to_bits(best_x, n);
  sol.c_opt = to_native(native, model.energy(best_x));
  return sol;
}

}  // namespace qaoarec
