#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qaoarec {

enum class InstanceKind { MaxCutGraph, DenseQubo };

struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct InstanceMeta {
  std::optional<double> edge_probability;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

// A MaxCut graph (edges populated, i < j, no duplicates) or a dense QUBO
// (upper-triangular `qubo` populated, entries below the diagonal are zero).
struct ProblemInstance {
  std::string id;
  InstanceKind kind = InstanceKind::MaxCutGraph;
  int n = 0;
  std::vector<Edge> edges;
  Eigen::MatrixXd qubo;
  InstanceMeta meta;

  bool is_maxcut() const { return kind == InstanceKind::MaxCutGraph; }
  double total_weight() const;
  // |E| / (n(n-1)/2); MaxCut only.
  double density() const;
  // Throws ParameterError when an invariant is broken.
  void validate() const;
};

bool operator==(const ProblemInstance& a, const ProblemInstance& b);

// Each pair i < j is included independently with probability edge_prob.
// The stream is fixed by (seed, n, edge_prob, index); index distinguishes
// several graphs drawn with the same parameters.
ProblemInstance generate_er_graph(int n, double edge_prob, std::uint64_t seed, std::uint64_t index = 0);

// Upper-triangular Q with i.i.d. uniform entries on [-1, 1].
ProblemInstance generate_dense_qubo(int n, std::uint64_t seed, std::uint64_t index = 0);

// 200 MaxCut graphs (10 per node count in {10,...,18} and probability in
// {0.5,...,0.8}) followed by 100 dense QUBOs (20 per node count).
std::vector<ProblemInstance> generate_paper_datasets(std::uint64_t seed);

// Smaller MaxCut-only collection with the same layout: `per_cell` graphs for
// each (node count, probability) pair.
std::vector<ProblemInstance> generate_maxcut_dataset(const std::vector<int>& node_counts,
                                                     const std::vector<double>& probabilities,
                                                     int per_cell, std::uint64_t seed);

std::string instance_id(InstanceKind kind, int n, std::optional<double> prob, std::uint64_t seed,
                        std::uint64_t index);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

}  // namespace qaoarec
