#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmean/errors.hpp"
#include "qmean/lightcone.hpp"

namespace qmean {

/// Default statevector cap: 2^26 amplitudes * 16 bytes = 1 GiB.
inline constexpr std::uint32_t kDefaultQubitCap = 26;

/// Depth-p angle schedule (gamma for cost layers, beta for mixer layers),
/// angles in radians.
class ParamSchedule {
 public:
  ParamSchedule(std::vector<double> gammas, std::vector<double> betas)
      : gammas_(std::move(gammas)), betas_(std::move(betas)) {
    if (gammas_.empty() || gammas_.size() != betas_.size()) {
      throw std::invalid_argument("schedule needs equal-length nonempty gamma/beta vectors, got " +
                                  std::to_string(gammas_.size()) + " and " +
                                  std::to_string(betas_.size()));
    }
  }

  std::uint32_t depth() const { return static_cast<std::uint32_t>(gammas_.size()); }
  const std::vector<double>& gammas() const { return gammas_; }
  const std::vector<double>& betas() const { return betas_; }

 private:
  std::vector<double> gammas_;
  std::vector<double> betas_;
};

/// 2^N complex amplitudes. Basis convention: bit i of the index gives spin
/// z_i = +1 when the bit is 0 and -1 when it is 1.
class StateVector {
 public:
  explicit StateVector(std::uint32_t num_qubits)
      : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {}

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::complex<double>& operator[](std::size_t i) { return amps_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return amps_[i]; }
  std::span<std::complex<double>> amplitudes() { return amps_; }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  std::uint32_t num_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// Uniform superposition |+...+> on N qubits.
inline StateVector init_plus(std::uint32_t num_qubits, std::uint32_t max_qubits = kDefaultQubitCap) {
  if (num_qubits < 1) throw std::invalid_argument("statevector needs at least 1 qubit");
  if (num_qubits > max_qubits) {
    const double mib = std::ldexp(16.0, static_cast<int>(num_qubits)) / (1024.0 * 1024.0);
    throw ResourceError("statevector of " + std::to_string(num_qubits) +
                        " qubits exceeds the cap of " + std::to_string(max_qubits) +
                        " (would need " + std::to_string(static_cast<std::uint64_t>(mib)) +
                        " MiB)");
  }
  StateVector state(num_qubits);
  const double amp = std::ldexp(1.0, -static_cast<int>(num_qubits) / 2) *
                     (num_qubits % 2 ? 1.0 / std::sqrt(2.0) : 1.0);
  for (std::size_t b = 0; b < state.size(); ++b) state[b] = amp;
  return state;
}

/// Per-basis diagonal cost c(b) of a subgraph, built once and reused across
/// layers and parameter sets: c(b) = sum w_uv z_u z_v + sum h_k z_k.
inline std::vector<double> cost_table(const AnchoredSubgraph& sub) {
  const std::size_t size = std::size_t{1} << sub.num_qubits();
  std::vector<double> table(size, 0.0);
  for (const LocalEdge& e : sub.edges) {
    const std::size_t bu = std::size_t{1} << e.u;
    const std::size_t bv = std::size_t{1} << e.v;
    for (std::size_t b = 0; b < size; ++b) {
      const bool anti = ((b & bu) != 0) != ((b & bv) != 0);
      table[b] += anti ? -e.weight : e.weight;
    }
  }
  for (const auto& [k, h] : sub.biases) {
    const std::size_t bk = std::size_t{1} << k;
    for (std::size_t b = 0; b < size; ++b) table[b] += (b & bk) ? -h : h;
  }
  return table;
}

/// Diagonal cost layer: amplitude at basis b picks up the phase e^{-i gamma c(b)}.
inline void apply_phase_table(StateVector& state, std::span<const double> table, double gamma) {
  if (table.size() != state.size()) {
    throw std::invalid_argument("cost table size does not match state size");
  }
  for (std::size_t b = 0; b < state.size(); ++b) {
    state[b] *= std::polar(1.0, -gamma * table[b]);
  }
}

inline void apply_cost_layer(StateVector& state, const AnchoredSubgraph& sub, double gamma) {
  if (sub.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("subgraph has " + std::to_string(sub.num_qubits()) +
                                " nodes but state has " + std::to_string(state.num_qubits()) +
                                " qubits");
  }
  const std::vector<double> table = cost_table(sub);
  apply_phase_table(state, table, gamma);
}

/// Product mixer layer: e^{+i beta X} on every qubit, uniform angle.
inline void apply_mixer_layer(StateVector& state, double beta) {
  const double c = std::cos(beta);
  const std::complex<double> is(0.0, std::sin(beta));
  const std::size_t size = state.size();
  for (std::uint32_t q = 0; q < state.num_qubits(); ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t i0 = base + off;
        const std::size_t i1 = i0 + stride;
        const std::complex<double> a0 = state[i0];
        const std::complex<double> a1 = state[i1];
        state[i0] = c * a0 + is * a1;
        state[i1] = is * a0 + c * a1;
      }
    }
  }
}

/// <Z_a> or <Z_a Z_b> in the current state; result in [-1, 1].
inline double term_expectation(const StateVector& state, std::span<const std::uint32_t> anchors) {
  std::size_t mask = 0;
  for (std::uint32_t a : anchors) {
    if (a >= state.num_qubits()) {
      throw std::invalid_argument("anchor index " + std::to_string(a) + " out of range");
    }
    mask |= std::size_t{1} << a;
  }
  double value = 0.0;
  for (std::size_t b = 0; b < state.size(); ++b) {
    const double p = std::norm(state[b]);
    value += (std::popcount(b & mask) % 2) ? -p : p;
  }
  return value;
}

/// Full term evaluation with a prebuilt cost table.
inline double simulate_term_with_table(const AnchoredSubgraph& sub, std::span<const double> table,
                                       const ParamSchedule& params,
                                       std::uint32_t max_qubits = kDefaultQubitCap) {
  StateVector state = init_plus(sub.num_qubits(), max_qubits);
  for (std::uint32_t layer = 0; layer < params.depth(); ++layer) {
    apply_phase_table(state, table, params.gammas()[layer]);
    apply_mixer_layer(state, params.betas()[layer]);
  }
  return term_expectation(state, sub.anchors);
}

/// |+...+> -> p x (cost layer, mixer layer) -> anchored Z expectation.
inline double simulate_term(const AnchoredSubgraph& sub, const ParamSchedule& params,
                            std::uint32_t max_qubits = kDefaultQubitCap) {
  if (sub.num_qubits() > max_qubits) {
    throw ResourceError("subgraph of " + std::to_string(sub.num_qubits()) +
                        " qubits exceeds the cap of " + std::to_string(max_qubits));
  }
  const std::vector<double> table = cost_table(sub);
  return simulate_term_with_table(sub, table, params, max_qubits);
}

}  // namespace qmean
