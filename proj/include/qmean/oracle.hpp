#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmean/errors.hpp"
#include "qmean/ising.hpp"
#include "qmean/statevector.hpp"

namespace qmean {
namespace oracle {

inline constexpr std::uint32_t kDefaultOracleCap = 20;
inline constexpr std::uint32_t kExhaustiveCap = 24;

/// Brute-force mean value on the full n-qubit circuit, no decomposition.
///
/// Deliberately independent of the fast path: gates are applied term by term
/// (one diagonal pass per edge and per bias, own mixer butterflies) instead of
/// through a precomputed cost table, and the readout reuses the classical
/// evaluate_cost. Shares only the gate-sign constants with the engine.
inline double full_expectation(const IsingModel& model, const ParamSchedule& params,
                               std::uint32_t max_qubits = kDefaultOracleCap) {
  const std::uint32_t n = model.num_nodes();
  if (n > max_qubits) {
    throw ResourceError("oracle on " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
  }
  if (n == 0) return model.offset();

  const std::size_t size = std::size_t{1} << n;
  std::vector<std::complex<double>> amps(size, std::pow(2.0, -static_cast<double>(n) / 2.0));

  for (std::uint32_t layer = 0; layer < params.depth(); ++layer) {
    const double gamma = params.gammas()[layer];
    const double beta = params.betas()[layer];

    // cost layer, one diagonal gate per term: e^{-i gamma w Z_u Z_v}, e^{-i gamma h Z_k}
    for (const Edge& e : model.edges()) {
      const std::complex<double> aligned = std::polar(1.0, -gamma * e.weight);
      const std::complex<double> anti = std::conj(aligned);
      const std::size_t bu = std::size_t{1} << e.u;
      const std::size_t bv = std::size_t{1} << e.v;
      for (std::size_t b = 0; b < size; ++b) {
        amps[b] *= (((b & bu) != 0) != ((b & bv) != 0)) ? anti : aligned;
      }
    }
    for (const auto& [k, h] : model.biases()) {
      const std::complex<double> up = std::polar(1.0, -gamma * h);
      const std::complex<double> down = std::conj(up);
      const std::size_t bk = std::size_t{1} << k;
      for (std::size_t b = 0; b < size; ++b) amps[b] *= (b & bk) ? down : up;
    }

    // mixer layer: e^{+i beta X} per qubit
    const double c = std::cos(beta);
    const std::complex<double> is(0.0, std::sin(beta));
    for (std::uint32_t q = 0; q < n; ++q) {
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
          const std::complex<double> a0 = amps[base + off];
          const std::complex<double> a1 = amps[base + off + stride];
          amps[base + off] = c * a0 + is * a1;
          amps[base + off + stride] = is * a0 + c * a1;
        }
      }
    }
  }

  double energy = 0.0;
  std::vector<int> z(n);
  for (std::size_t b = 0; b < size; ++b) {
    for (std::uint32_t i = 0; i < n; ++i) z[i] = (b >> i) & 1 ? -1 : 1;
    energy += std::norm(amps[b]) * evaluate_cost(model, SpinAssignment(z));
  }
  return energy;
}

/// Exact minimizer of C(z) over all 2^n assignments. Ties broken by the first
/// assignment in enumeration order, which treats node 0 as the most
/// significant bit of the enumeration index.
inline std::pair<SpinAssignment, double> exhaustive_min(const IsingModel& model) {
  const std::uint32_t n = model.num_nodes();
  if (n > kExhaustiveCap) {
    throw ResourceError("exhaustive minimization on " + std::to_string(n) +
                        " nodes exceeds the cap of " + std::to_string(kExhaustiveCap));
  }
  std::vector<int> z(n, 1), best_z(n, 1);
  double best = evaluate_cost(model, SpinAssignment(z));
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t b = 1; b < size; ++b) {
    for (std::uint32_t i = 0; i < n; ++i) z[i] = (b >> (n - 1 - i)) & 1 ? -1 : 1;
    const double cost = evaluate_cost(model, SpinAssignment(z));
    if (cost < best) {
      best = cost;
      best_z = z;
    }
  }
  return {SpinAssignment(best_z), best};
}

}  // namespace oracle
}  // namespace qmean
