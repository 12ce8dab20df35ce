#include "qaoarec/instances.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "qaoarec/errors.hpp"
#include "qaoarec/rng.hpp"

namespace qaoarec {
namespace {

constexpr std::uint64_t kMaxCutStream = 1;
constexpr std::uint64_t kQuboStream = 2;

std::uint64_t probability_label(double p) {
  // Probabilities are short decimals; the rounded per-mille value is a stable label.
  return static_cast<std::uint64_t>(std::llround(p * 1e6));
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string instance_id(InstanceKind kind, int n, std::optional<double> prob, std::uint64_t seed,
                        std::uint64_t index) {
  std::string id = kind == InstanceKind::MaxCutGraph ? "maxcut" : "qubo";
  id += "-n" + std::to_string(n);
  id += "-p" + (prob ? format_double(*prob) : std::string("na"));
  id += "-s" + std::to_string(seed);
  id += "-k" + std::to_string(index);
  return id;
}

double ProblemInstance::total_weight() const {
  double w = 0.0;
  for (const auto& e : edges) w += e.w;
  return w;
}

double ProblemInstance::density() const {
  if (n < 2) return 0.0;
  return static_cast<double>(edges.size()) / (0.5 * n * (n - 1));
}

void ProblemInstance::validate() const {
  if (n <= 0) throw ParameterError("instance " + id + ": n must be positive");
  if (kind == InstanceKind::MaxCutGraph) {
    if (qubo.size() != 0) throw ParameterError("instance " + id + ": MaxCut graph carries a QUBO matrix");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
      if (e.i < 0 || e.j >= n || e.i >= e.j)
        throw ParameterError("instance " + id + ": edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                             ") must satisfy 0 <= i < j < n");
      if (!seen.emplace(e.i, e.j).second)
        throw ParameterError("instance " + id + ": duplicate edge (" + std::to_string(e.i) + "," +
                             std::to_string(e.j) + ")");
      if (!std::isfinite(e.w)) throw ParameterError("instance " + id + ": non-finite edge weight");
    }
  } else {
    if (!edges.empty()) throw ParameterError("instance " + id + ": QUBO carries edges");
    if (qubo.rows() != n || qubo.cols() != n) throw ParameterError("instance " + id + ": QUBO matrix must be n x n");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double q = qubo(i, j);
        if (j < i && q != 0.0) throw ParameterError("instance " + id + ": QUBO must be upper triangular");
        if (!(q >= -1.0 && q <= 1.0)) throw ParameterError("instance " + id + ": QUBO coefficient outside [-1, 1]");
      }
  }
}

bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
  return a.id == b.id && a.kind == b.kind && a.n == b.n && a.edges == b.edges && a.meta == b.meta &&
         a.qubo.rows() == b.qubo.rows() && a.qubo.cols() == b.qubo.cols() && a.qubo == b.qubo;
}

ProblemInstance generate_er_graph(int n, double edge_prob, std::uint64_t seed, std::uint64_t index) {
  if (n < 2) throw ParameterError("generate_er_graph: n must be >= 2, got " + std::to_string(n));
  if (!(edge_prob > 0.0 && edge_prob < 1.0))
    throw ParameterError("generate_er_graph: edge probability must lie in (0, 1), got " + format_double(edge_prob));

  Rng rng(derive_seed(seed, {kMaxCutStream, static_cast<std::uint64_t>(n), probability_label(edge_prob), index}));
  ProblemInstance inst;
  inst.kind = InstanceKind::MaxCutGraph;
  inst.n = n;
  inst.meta = {edge_prob, seed, index};
  inst.id = instance_id(inst.kind, n, edge_prob, seed, index);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_prob)) inst.edges.push_back({i, j, 1.0});
  return inst;
}

ProblemInstance generate_dense_qubo(int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 2) throw ParameterError("generate_dense_qubo: n must be >= 2, got " + std::to_string(n));
  Rng rng(derive_seed(seed, {kQuboStream, static_cast<std::uint64_t>(n), index}));
  ProblemInstance inst;
  inst.kind = InstanceKind::DenseQubo;
  inst.n = n;
  inst.meta = {std::nullopt, seed, index};
  inst.id = instance_id(inst.kind, n, std::nullopt, seed, index);
  inst.qubo = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) inst.qubo(i, j) = rng.uniform(-1.0, 1.0);
  return inst;
}

std::vector<ProblemInstance> generate_maxcut_dataset(const std::vector<int>& node_counts,
                                                     const std::vector<double>& probabilities,
                                                     int per_cell, std::uint64_t seed) {
  std::vector<ProblemInstance> out;
  for (int n : node_counts)
    for (double p : probabilities)
      for (int k = 0; k < per_cell; ++k) out.push_back(generate_er_graph(n, p, seed, static_cast<std::uint64_t>(k)));
  return out;
}

std::vector<ProblemInstance> generate_paper_datasets(std::uint64_t seed) {
  const std::vector<int> sizes{10, 12, 14, 16, 18};
  auto out = generate_maxcut_dataset(sizes, {0.5, 0.6, 0.7, 0.8}, 10, seed);
  for (int n : sizes)
    for (int k = 0; k < 20; ++k) out.push_back(generate_dense_qubo(n, seed, static_cast<std::uint64_t>(k)));
  return out;
}

}  // namespace qaoarec
