#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qaoarec/ising.hpp"

namespace qaoarec {

// 2p QAOA angles. The flat layout used by optimizers and encodings is
// [gamma_1 .. gamma_p, beta_1 .. beta_p].
struct AngleVector {
  Eigen::VectorXd gamma;
  Eigen::VectorXd beta;

  AngleVector() = default;
  AngleVector(Eigen::VectorXd g, Eigen::VectorXd b);

  int depth() const { return static_cast<int>(gamma.size()); }
  Eigen::VectorXd flat() const;
  static AngleVector from_flat(const Eigen::Ref<const Eigen::VectorXd>& x);
  static AngleVector zeros(int p);

  friend bool operator==(const AngleVector& a, const AngleVector& b) {
    return a.gamma == b.gamma && a.beta == b.beta;
  }
};

// Amplitudes over the computational basis; bit i of the index is qubit i.
struct QaoaState {
  int n = 0;
  Eigen::VectorXcd amplitudes;

  Eigen::VectorXd probabilities() const { return amplitudes.cwiseAbs2(); }
};

inline constexpr int kMaxSimulatedQubits = 24;

// Precomputes the cost diagonal of a model once and reuses it for every
// circuit. The constant offset never enters the phase layers; it is added
// back in expectation().
class QaoaSimulator {
 public:
  explicit QaoaSimulator(const IsingModel& model, int max_n = kMaxSimulatedQubits);

  int n() const { return n_; }
  double offset() const { return offset_; }
  // energy(x) - offset for every basis state x.
  const Eigen::VectorXd& diagonal() const { return diag_; }

  QaoaState evolve(const AngleVector& angles) const;
  double expectation(const QaoaState& state) const;
  double expectation(const AngleVector& angles) const { return expectation(evolve(angles)); }

 private:
  void apply_phase(Eigen::VectorXcd& amps, double gamma) const;
  static void apply_mixer(Eigen::VectorXcd& amps, int n, double beta);

  int n_ = 0;
  double offset_ = 0.0;
  Eigen::VectorXd diag_;
  // When the diagonal takes few distinct values (unweighted MaxCut), phases
  // are computed once per distinct value and applied by table lookup.
  std::vector<double> levels_;
  std::vector<std::uint32_t> level_of_;
};

QaoaState evolve(const IsingModel& model, const AngleVector& angles);
double expectation(const IsingModel& model, const QaoaState& state);

// M_ij = <Z_i Z_j> for each requested pair (i < j < n).
std::map<std::pair<int, int>, double> zz_correlations(const QaoaState& state,
                                                      const std::vector<std::pair<int, int>>& pairs);

// True when every coefficient is an integer multiple of 1/2, in which case
// the expectation is 2*pi-periodic in every gamma.
bool gamma_is_2pi_periodic(const IsingModel& model);

}  // namespace qaoarec
