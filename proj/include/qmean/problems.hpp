#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmean/ising.hpp"

namespace qmean {

/// Simple unweighted graph (no self-loops, no duplicate edges).
struct PlainGraph {
  NodeId num_nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  // u < v, sorted
};

/// Random d-regular simple graph via the pairing (configuration) model:
/// shuffle n*d stubs, pair them up, reject matchings with self-loops or
/// multi-edges and retry. Deterministic per seed.
inline PlainGraph gen_random_regular(NodeId n, NodeId d, std::uint64_t seed) {
  if (d >= n) throw std::invalid_argument("regular graph needs d < n");
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0) {
    throw std::invalid_argument("regular graph needs n*d even");
  }
  std::mt19937_64 rng(seed);
  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId c = 0; c < d; ++c) stubs.push_back(v);
  }

  constexpr int kMaxAttempts = 200000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<NodeId, NodeId>> edges;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      NodeId a = stubs[i], b = stubs[i + 1];
      if (a == b) {
        ok = false;
        break;
      }
      if (!edges.insert({std::min(a, b), std::max(a, b)}).second) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    PlainGraph g;
    g.num_nodes = n;
    g.edges.assign(edges.begin(), edges.end());
    return g;
  }
  throw std::runtime_error("pairing model failed to produce a simple graph after " +
                           std::to_string(kMaxAttempts) + " attempts (n=" + std::to_string(n) +
                           ", d=" + std::to_string(d) + ")");
}

/// Max-Cut cost graph: unit weight per edge, no biases, no offset.
inline IsingModel maxcut_model(const PlainGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) edges.push_back({u, v, 1.0});
  return IsingModel(g.num_nodes, edges, {}, 0.0);
}

/// Sherrington-Kirkpatrick instance: complete graph with i.i.d. +/-1
/// couplings, no biases. Deterministic per seed.
inline IsingModel sk_model(NodeId n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sk_model needs n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      edges.push_back({i, j, coin(rng) ? 1.0 : -1.0});
    }
  }
  return IsingModel(n, edges, {}, 0.0);
}

/// Binary variable index for (vertex, color) in the coloring encoding.
inline NodeId coloring_var(NodeId v, NodeId k, NodeId c) { return v * k + c; }

/// k-coloring as a one-hot QUBO, converted to spin form.
///
///   H(x) = A * sum_v (1 - sum_c x_{v,c})^2
///        + A * sum_{(u,v) in E} sum_c x_{u,c} x_{v,c},   x in {0,1}
///
/// with x_{v,c} at index v*k + c and x = (1 - z)/2. All constants produced by
/// the conversion are accumulated into the model offset, so evaluate_cost on
/// the spin image of x equals H(x) exactly. Terms whose coefficient cancels to
/// zero are omitted.
inline IsingModel coloring_model(const PlainGraph& g, NodeId k, double penalty_a = 1.0) {
  if (k < 2) throw std::invalid_argument("coloring_model needs k >= 2");
  if (!(penalty_a > 0.0)) throw std::invalid_argument("coloring_model needs penalty_a > 0");

  const NodeId nk = g.num_nodes * k;
  double constant = 0.0;
  std::vector<double> linear(nk, 0.0);
  std::map<std::pair<NodeId, NodeId>, double> quad;

  // one-hot: A * (1 - sum_c x)^2 = A * (1 - sum_c x + 2 sum_{c<c'} x x')
  for (NodeId v = 0; v < g.num_nodes; ++v) {
    constant += penalty_a;
    for (NodeId c = 0; c < k; ++c) linear[coloring_var(v, k, c)] -= penalty_a;
    for (NodeId c = 0; c < k; ++c) {
      for (NodeId c2 = c + 1; c2 < k; ++c2) {
        quad[{coloring_var(v, k, c), coloring_var(v, k, c2)}] += 2.0 * penalty_a;
      }
    }
  }
  // conflicts: A * x_{u,c} x_{v,c} per edge and color
  for (const auto& [u, v] : g.edges) {
    for (NodeId c = 0; c < k; ++c) {
      NodeId a = coloring_var(u, k, c), b = coloring_var(v, k, c);
      quad[{std::min(a, b), std::max(a, b)}] += penalty_a;
    }
  }

  // x_i = (1 - z_i)/2
  double offset = constant;
  std::vector<double> bias(nk, 0.0);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < nk; ++i) {
    offset += linear[i] / 2.0;
    bias[i] -= linear[i] / 2.0;
  }
  for (const auto& [ij, q] : quad) {
    offset += q / 4.0;
    bias[ij.first] -= q / 4.0;
    bias[ij.second] -= q / 4.0;
    if (q / 4.0 != 0.0) edges.push_back({ij.first, ij.second, q / 4.0});
  }
  std::vector<std::pair<NodeId, double>> biases;
  for (NodeId i = 0; i < nk; ++i) {
    if (bias[i] != 0.0) biases.emplace_back(i, bias[i]);
  }
  return IsingModel(nk, edges, biases, offset);
}

/// Spin image of a binary assignment under x = (1 - z)/2.
inline SpinAssignment spin_image(const std::vector<int>& x) {
  std::vector<int> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] ? -1 : 1;
  return SpinAssignment(std::move(z));
}

}  // namespace qmean
