#include "qaoarec/qaoa_sim.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "qaoarec/errors.hpp"

namespace qaoarec {

AngleVector::AngleVector(Eigen::VectorXd g, Eigen::VectorXd b) : gamma(std::move(g)), beta(std::move(b)) {
  if (gamma.size() != beta.size()) throw ParameterError("AngleVector: gamma and beta lengths differ");
}

Eigen::VectorXd AngleVector::flat() const {
  Eigen::VectorXd x(2 * depth());
  x << gamma, beta;
  return x;
}

AngleVector AngleVector::from_flat(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() % 2 != 0 || x.size() == 0) throw ParameterError("AngleVector: flat vector must have even length 2p > 0");
  const Eigen::Index p = x.size() / 2;
  return {x.head(p), x.tail(p)};
}

AngleVector AngleVector::zeros(int p) { return {Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p)}; }

QaoaSimulator::QaoaSimulator(const IsingModel& model, int max_n) : n_(model.n()), offset_(model.offset()) {
  if (n_ > max_n)
    throw ResourceError("QAOA simulation of " + std::to_string(n_) + " qubits exceeds the cap of " +
                        std::to_string(max_n));
  const std::uint64_t dim = std::uint64_t{1} << n_;
  diag_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (int i = 0; i < n_; ++i) {
    const double hi = model.h()(i);
    if (hi == 0.0) continue;
    for (std::uint64_t x = 0; x < dim; ++x) diag_(x) += ((x >> i) & 1U) ? -hi : hi;
  }
  for (const auto& [ij, v] : model.couplings()) {
    const int i = ij.first, j = ij.second;
    for (std::uint64_t x = 0; x < dim; ++x) diag_(x) += (((x >> i) ^ (x >> j)) & 1U) ? -v : v;
  }

  constexpr std::size_t kMaxLevels = 4096;
  std::unordered_map<double, std::uint32_t> index;
  level_of_.resize(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    auto [it, inserted] = index.try_emplace(diag_(x), static_cast<std::uint32_t>(levels_.size()));
    if (inserted) {
      levels_.push_back(diag_(x));
      if (levels_.size() > kMaxLevels) break;
    }
    level_of_[x] = it->second;
  }
  if (levels_.size() > kMaxLevels) {
    levels_.clear();
    level_of_.clear();
  }
}

void QaoaSimulator::apply_phase(Eigen::VectorXcd& amps, double gamma) const {
  const Eigen::Index dim = amps.size();
  if (!levels_.empty()) {
    std::vector<double> c(levels_.size()), s(levels_.size());
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      c[k] = std::cos(gamma * levels_[k]);
      s[k] = std::sin(gamma * levels_[k]);
    }
    for (Eigen::Index x = 0; x < dim; ++x) {
      const std::uint32_t k = level_of_[x];
      const double ar = amps[x].real(), ai = amps[x].imag();
      amps[x] = {ar * c[k] + ai * s[k], ai * c[k] - ar * s[k]};
    }
    return;
  }
  for (Eigen::Index x = 0; x < dim; ++x) {
    const double theta = gamma * diag_(x);
    const double c = std::cos(theta), s = std::sin(theta);
    const double ar = amps[x].real(), ai = amps[x].imag();
    amps[x] = {ar * c + ai * s, ai * c - ar * s};
  }
}

void QaoaSimulator::apply_mixer(Eigen::VectorXcd& amps, int n, double beta) {
  // exp(-i beta X) = cos(beta) I - i sin(beta) X on each qubit.
  const double c = std::cos(beta), s = std::sin(beta);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t stride = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
      for (std::uint64_t x = base; x < base + stride; ++x) {
        auto& a0 = amps[static_cast<Eigen::Index>(x)];
        auto& a1 = amps[static_cast<Eigen::Index>(x + stride)];
        const double r0 = a0.real(), i0 = a0.imag(), r1 = a1.real(), i1 = a1.imag();
        a0 = {c * r0 + s * i1, c * i0 - s * r1};
        a1 = {c * r1 + s * i0, c * i1 - s * r0};
      }
    }
  }
}

QaoaState QaoaSimulator::evolve(const AngleVector& angles) const {
  if (angles.depth() < 1) throw ParameterError("evolve: depth must be >= 1");
  const Eigen::Index dim = diag_.size();
  QaoaState state;
  state.n = n_;
  state.amplitudes = Eigen::VectorXcd::Constant(dim, std::complex<double>(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  for (int k = 0; k < angles.depth(); ++k) {
    apply_phase(state.amplitudes, angles.gamma(k));
    apply_mixer(state.amplitudes, n_, angles.beta(k));
  }
  return state;
}

double QaoaSimulator::expectation(const QaoaState& state) const {
  if (state.amplitudes.size() != diag_.size())
    throw KindError("expectation: state dimension " + std::to_string(state.amplitudes.size()) +
                    " does not match model dimension " + std::to_string(diag_.size()));
  return offset_ + state.amplitudes.cwiseAbs2().dot(diag_);
}

QaoaState evolve(const IsingModel& model, const AngleVector& angles) { return QaoaSimulator(model).evolve(angles); }

double expectation(const IsingModel& model, const QaoaState& state) {
  if (state.n != model.n()) throw KindError("expectation: state and model qubit counts differ");
  return QaoaSimulator(model).expectation(state);
}

std::map<std::pair<int, int>, double> zz_correlations(const QaoaState& state,
                                                      const std::vector<std::pair<int, int>>& pairs) {
  const Eigen::VectorXd prob = state.probabilities();
  std::map<std::pair<int, int>, double> out;
  for (const auto& [i, j] : pairs) {
    if (i < 0 || i >= j || j >= state.n)
      throw ParameterError("zz_correlations: pair (" + std::to_string(i) + "," + std::to_string(j) +
                           ") must satisfy 0 <= i < j < n");
    double m = 0.0;
    for (Eigen::Index x = 0; x < prob.size(); ++x) m += (((x >> i) ^ (x >> j)) & 1) ? -prob(x) : prob(x);
    out[{i, j}] = m;
  }
  return out;
}

bool gamma_is_2pi_periodic(const IsingModel& model) {
  auto half_integer = [](double v) { return std::abs(2.0 * v - std::round(2.0 * v)) < 1e-12; };
  for (int i = 0; i < model.n(); ++i)
    if (!half_integer(model.h()(i))) return false;
  for (const auto& [ij, v] : model.couplings())
    if (!half_integer(v)) return false;
  return true;
}

}  // namespace qaoarec
