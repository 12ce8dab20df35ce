#pragma once

// Independent reference implementations used only by tests. None of them
// shares code with the library beyond the IsingModel container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qaoarec/ising.hpp"
#include "qaoarec/qaoa_sim.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Energy straight from the definition, spins +-1 from bit i of x.
inline double energy(const qaoarec::IsingModel& m, std::uint64_t x) {
  double e = m.offset();
  for (int i = 0; i < m.n(); ++i) e += m.h()(i) * (((x >> i) & 1) ? -1.0 : 1.0);
  for (const auto& [ij, v] : m.couplings()) {
    const double si = ((x >> ij.first) & 1) ? -1.0 : 1.0;
    const double sj = ((x >> ij.second) & 1) ? -1.0 : 1.0;
    e += v * si * sj;
  }
  return e;
}

// Kronecker product of single-qubit operators; qubit 0 is the least
// significant bit, so it is the rightmost factor.
inline Eigen::MatrixXcd kron_all(const std::vector<Eigen::Matrix2cd>& ops) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = static_cast<int>(ops.size()) - 1; q >= 0; --q) {
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < out.rows(); ++a)
      for (int b = 0; b < out.cols(); ++b)
        next.block<2, 2>(2 * a, 2 * b) = out(a, b) * ops[q];
    out = next;
  }
  return out;
}

inline Eigen::Matrix2cd pauli_x() { return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(); }
inline Eigen::Matrix2cd pauli_z() { return (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(); }

// Cost Hamiltonian as a dense matrix built from Pauli-Z strings, offset
// included.
inline Eigen::MatrixXcd cost_matrix(const qaoarec::IsingModel& m) {
  const int n = m.n();
  const int dim = 1 << n;
  Eigen::MatrixXcd h = m.offset() * Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < n; ++i) {
    std::vector<Eigen::Matrix2cd> ops(n, Eigen::Matrix2cd::Identity());
    ops[i] = pauli_z();
    h += m.h()(i) * kron_all(ops);
  }
  for (const auto& [ij, v] : m.couplings()) {
    std::vector<Eigen::Matrix2cd> ops(n, Eigen::Matrix2cd::Identity());
    ops[ij.first] = pauli_z();
    ops[ij.second] = pauli_z();
    h += v * kron_all(ops);
  }
  return h;
}

inline Eigen::MatrixXcd mixer_matrix(int n) {
  const int dim = 1 << n;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    std::vector<Eigen::Matrix2cd> ops(n, Eigen::Matrix2cd::Identity());
    ops[i] = pauli_x();
    b += kron_all(ops);
  }
  return b;
}

// exp(-i t H) for Hermitian H through its eigendecomposition.
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(cplx(0, -t * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// QAOA state by dense matrix products, global phase included.
inline Eigen::VectorXcd qaoa_state(const qaoarec::IsingModel& m, const qaoarec::AngleVector& a) {
  const int n = m.n();
  const int dim = 1 << n;
  const Eigen::MatrixXcd hc = cost_matrix(m);
  const Eigen::MatrixXcd hb = mixer_matrix(n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (int k = 0; k < a.depth(); ++k) {
    psi = expm_hermitian(hc, a.gamma(k)) * psi;
    psi = expm_hermitian(hb, a.beta(k)) * psi;
  }
  return psi;
}

inline double qaoa_expectation(const qaoarec::IsingModel& m, const qaoarec::AngleVector& a) {
  const Eigen::VectorXcd psi = qaoa_state(m, a);
  return (psi.adjoint() * cost_matrix(m) * psi)(0, 0).real();
}

// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix; returns
// eigenvalues in descending order.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, int sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  Eigen::VectorXd ev = a.diagonal();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
  return ev;
}

// Minimum energy over configurations satisfying s_j = sign * s_i for every
// (i, j, sign) constraint.
inline double restricted_min(const qaoarec::IsingModel& m, const std::vector<std::tuple<int, int, int>>& cons) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.n()); ++x) {
    bool ok = true;
    for (const auto& [i, j, sign] : cons) {
      const int si = ((x >> i) & 1) ? -1 : 1;
      const int sj = ((x >> j) & 1) ? -1 : 1;
      if (sj != sign * si) ok = false;
    }
    if (ok) best = std::min(best, energy(m, x));
  }
  return best;
}

inline double min_energy(const qaoarec::IsingModel& m) { return restricted_min(m, {}); }

}  // namespace oracle
