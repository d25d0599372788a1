#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmean/ising.hpp"

namespace qmean {

enum class TermKind { Edge, Node };

/// One summand of the cost operator: w_ij Z_i Z_j or h_k Z_k.
struct TermId {
  TermKind kind = TermKind::Edge;
  NodeId i = 0;
  NodeId j = 0;  // == i for node terms
  double coefficient = 0.0;
};

struct LocalEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 0.0;
};

/// Light-cone subgraph of one term, in local (0..N-1) indices.
///
/// Local indices follow anchor-rooted BFS discovery order (anchors first in
/// ascending-global order, then neighbors in ascending-global FIFO order), so
/// structurally congruent light cones of one instance come out as identical
/// objects and can be deduplicated with bit-exact value reuse.
struct AnchoredSubgraph {
  std::vector<NodeId> global_nodes;                     // position = local index
  std::vector<LocalEdge> edges;                         // u < v, sorted by (u, v)
  std::vector<std::pair<std::uint32_t, double>> biases; // (local index, h), sorted, h != 0
  std::vector<std::uint32_t> anchors;                   // 1 or 2 local indices, ascending
  std::uint32_t depth = 0;

  std::uint32_t num_qubits() const { return static_cast<std::uint32_t>(global_nodes.size()); }
};

namespace detail {

/// Adjacency over nonzero-weight edges, neighbor lists sorted by global id.
struct Adjacency {
  std::vector<std::vector<std::pair<NodeId, double>>> nbrs;

  explicit Adjacency(const IsingModel& model) : nbrs(model.num_nodes()) {
    for (const Edge& e : model.edges()) {
      if (e.weight == 0.0) continue;
      nbrs[e.u].emplace_back(e.v, e.weight);
      nbrs[e.v].emplace_back(e.u, e.weight);
    }
    for (auto& lst : nbrs) std::sort(lst.begin(), lst.end());
  }
};

/// Reusable per-call scratch: epoch-stamped distance labels keep each ball
/// extraction O(ball size) instead of O(n).
struct BallScratch {
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> dist;
  std::vector<std::uint32_t> local;
  std::uint32_t epoch = 0;

  explicit BallScratch(std::size_t n) : stamp(n, 0), dist(n, 0), local(n, 0) {}
};

inline AnchoredSubgraph extract_ball_impl(const IsingModel& model, const Adjacency& adj,
                                          BallScratch& scratch, std::vector<NodeId> anchors,
                                          std::uint32_t p) {
  if (p == 0) throw std::invalid_argument("light-cone depth must be >= 1");
  if (anchors.empty()) throw std::invalid_argument("anchor set must be nonempty");
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  for (NodeId a : anchors) {
    if (a >= model.num_nodes()) {
      throw std::invalid_argument("anchor node " + std::to_string(a) + " out of range");
    }
  }

  ++scratch.epoch;
  const std::uint32_t epoch = scratch.epoch;

  AnchoredSubgraph sub;
  sub.depth = p;
  std::vector<NodeId>& order = sub.global_nodes;  // BFS discovery order = local index
  for (NodeId a : anchors) {
    scratch.stamp[a] = epoch;
    scratch.dist[a] = 0;
    scratch.local[a] = static_cast<std::uint32_t>(order.size());
    order.push_back(a);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    const std::uint32_t du = scratch.dist[u];
    if (du == p) continue;
    for (const auto& [v, w] : adj.nbrs[u]) {
      (void)w;
      if (scratch.stamp[v] == epoch) continue;
      scratch.stamp[v] = epoch;
      scratch.dist[v] = du + 1;
      scratch.local[v] = static_cast<std::uint32_t>(order.size());
      order.push_back(v);
    }
  }

  // Edges with at least one endpoint within distance p-1 of the anchors;
  // biases only on those inner nodes. Gates farther out commute through the
  // anchored observable and cancel.
  const auto& model_biases = model.biases();
  for (std::size_t li = 0; li < order.size(); ++li) {
    const NodeId u = order[li];
    if (scratch.dist[u] > p - 1) continue;
    for (const auto& [v, w] : adj.nbrs[u]) {
      // emit each edge once: from its inner endpoint of smallest local index
      const std::uint32_t lu = static_cast<std::uint32_t>(li);
      const std::uint32_t lv = scratch.local[v];
      const bool v_inner = scratch.dist[v] <= p - 1;
      if (v_inner && lv < lu) continue;
      sub.edges.push_back({std::min(lu, lv), std::max(lu, lv), w});
    }
    if (!model_biases.empty()) {
      auto it = model_biases.find(u);
      if (it != model_biases.end() && it->second != 0.0) {
        sub.biases.emplace_back(static_cast<std::uint32_t>(li), it->second);
      }
    }
  }
  std::sort(sub.edges.begin(), sub.edges.end(), [](const LocalEdge& a, const LocalEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  std::sort(sub.biases.begin(), sub.biases.end());

  sub.anchors.reserve(anchors.size());
  for (NodeId a : anchors) sub.anchors.push_back(scratch.local[a]);
  std::sort(sub.anchors.begin(), sub.anchors.end());
  return sub;
}

}  // namespace detail

/// Radius-p light cone around an anchor set: nodes within distance p in the
/// nonzero-weight edge graph, edges touching the radius-(p-1) ball, biases on
/// the radius-(p-1) ball.
inline AnchoredSubgraph extract_ball(const IsingModel& model, const std::vector<NodeId>& anchors,
                                     std::uint32_t p) {
  detail::Adjacency adj(model);
  detail::BallScratch scratch(model.num_nodes());
  return detail::extract_ball_impl(model, adj, scratch, anchors, p);
}

/// One (term, light cone) pair per nonzero-weight edge and nonzero bias.
/// Order: edge terms in canonical edge order, then node terms by node id.
inline std::vector<std::pair<TermId, AnchoredSubgraph>> decompose(const IsingModel& model,
                                                                  std::uint32_t p) {
  if (p == 0) throw std::invalid_argument("light-cone depth must be >= 1");
  detail::Adjacency adj(model);
  detail::BallScratch scratch(model.num_nodes());
  std::vector<std::pair<TermId, AnchoredSubgraph>> terms;
  for (const Edge& e : model.edges()) {
    if (e.weight == 0.0) continue;
    TermId id{TermKind::Edge, e.u, e.v, e.weight};
    terms.emplace_back(id, detail::extract_ball_impl(model, adj, scratch, {e.u, e.v}, p));
  }
  for (const auto& [k, h] : model.biases()) {
    if (h == 0.0) continue;
    TermId id{TermKind::Node, k, k, h};
    terms.emplace_back(id, detail::extract_ball_impl(model, adj, scratch, {k}, p));
  }
  return terms;
}

/// Opaque label equal across anchored weighted-graph isomorphism classes.
/// Equal keys imply isomorphism only after explicit verification.
using CanonicalKey = std::string;

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t double_bits(double d) {
  std::uint64_t b;
  std::memcpy(&b, &d, sizeof b);
  return b;
}

/// Iterated color refinement. Initial color: (anchor flag, exact bias, sorted
/// incident-weight multiset); refined by hashing sorted neighbor
/// (color, weight) multisets. Label-invariant by construction.
inline std::vector<std::uint64_t> refine_colors(const AnchoredSubgraph& sub) {
  const std::size_t n = sub.global_nodes.size();
  std::vector<std::vector<std::pair<std::uint32_t, double>>> nbrs(n);
  for (const LocalEdge& e : sub.edges) {
    nbrs[e.u].emplace_back(e.v, e.weight);
    nbrs[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<double> bias(n, 0.0);
  for (const auto& [i, h] : sub.biases) bias[i] = h;
  std::vector<bool> is_anchor(n, false);
  for (std::uint32_t a : sub.anchors) is_anchor[a] = true;

  std::vector<std::uint64_t> color(n);
  std::vector<std::uint64_t> scratch;
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t h = hash_combine(0x51ab5e1cULL, is_anchor[v] ? 1 : 0);
    h = hash_combine(h, double_bits(bias[v]));
    scratch.clear();
    for (const auto& [u, w] : nbrs[v]) {
      (void)u;
      scratch.push_back(double_bits(w));
    }
    std::sort(scratch.begin(), scratch.end());
    for (std::uint64_t b : scratch) h = hash_combine(h, b);
    color[v] = h;
  }

  std::vector<std::uint64_t> next(n);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sig;
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      sig.clear();
      for (const auto& [u, w] : nbrs[v]) sig.emplace_back(color[u], double_bits(w));
      std::sort(sig.begin(), sig.end());
      std::uint64_t h = hash_combine(0x9d7f3c2bULL, color[v]);
      for (const auto& [c, w] : sig) h = hash_combine(hash_combine(h, c), w);
      next[v] = h;
    }
    std::swap(color, next);
  }
  return color;
}

inline void append_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace detail

inline CanonicalKey canonical_key(const AnchoredSubgraph& sub) {
  const std::vector<std::uint64_t> color = detail::refine_colors(sub);
  std::vector<std::uint64_t> sorted_colors = color;
  std::sort(sorted_colors.begin(), sorted_colors.end());

  std::vector<std::array<std::uint64_t, 3>> edge_recs;
  edge_recs.reserve(sub.edges.size());
  for (const LocalEdge& e : sub.edges) {
    edge_recs.push_back({std::min(color[e.u], color[e.v]), std::max(color[e.u], color[e.v]),
                         detail::double_bits(e.weight)});
  }
  std::sort(edge_recs.begin(), edge_recs.end());

  CanonicalKey key;
  key.reserve(16 + 8 * sorted_colors.size() + 24 * edge_recs.size());
  key.append("LC1");
  detail::append_u64(key, sub.global_nodes.size());
  detail::append_u64(key, sub.edges.size());
  for (std::uint64_t c : sorted_colors) detail::append_u64(key, c);
  for (const auto& r : edge_recs) {
    detail::append_u64(key, r[0]);
    detail::append_u64(key, r[1]);
    detail::append_u64(key, r[2]);
  }
  return key;
}

/// Exact anchored-isomorphism test: backtracking seeded by refinement color
/// classes. An isomorphism must map anchors onto anchors and preserve edge
/// weights and node biases exactly.
inline bool anchored_isomorphic(const AnchoredSubgraph& a, const AnchoredSubgraph& b) {
  const std::size_t n = a.global_nodes.size();
  if (n != b.global_nodes.size() || a.edges.size() != b.edges.size() ||
      a.biases.size() != b.biases.size() || a.anchors.size() != b.anchors.size()) {
    return false;
  }
  if (n == 0) return true;

  const auto colors_a = detail::refine_colors(a);
  const auto colors_b = detail::refine_colors(b);
  {
    auto sa = colors_a, sb = colors_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  auto build = [n](const AnchoredSubgraph& s, std::vector<double>& wmat, std::vector<bool>& adj,
                   std::vector<double>& bias, std::vector<bool>& anchor,
                   std::vector<std::uint32_t>& deg) {
    wmat.assign(n * n, 0.0);
    adj.assign(n * n, false);
    bias.assign(n, 0.0);
    anchor.assign(n, false);
    deg.assign(n, 0);
    for (const LocalEdge& e : s.edges) {
      wmat[e.u * n + e.v] = wmat[e.v * n + e.u] = e.weight;
      adj[e.u * n + e.v] = adj[e.v * n + e.u] = true;
      ++deg[e.u];
      ++deg[e.v];
    }
    for (const auto& [i, h] : s.biases) bias[i] = h;
    for (std::uint32_t x : s.anchors) anchor[x] = true;
  };
  std::vector<double> wa, wb, ba, bb;
  std::vector<bool> aa, ab, ana, anb;
  std::vector<std::uint32_t> da, db;
  build(a, wa, aa, ba, ana, da);
  build(b, wb, ab, bb, anb, db);

  // candidate targets per source node: equal color, anchor flag, bias, degree
  std::vector<std::vector<std::uint32_t>> candidates(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (colors_a[x] == colors_b[y] && ana[x] == anb[y] && ba[x] == bb[y] && da[x] == db[y]) {
        candidates[x].push_back(static_cast<std::uint32_t>(y));
      }
    }
    if (candidates[x].empty()) return false;
  }

  // most-constrained-first assignment order
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return candidates[x].size() < candidates[y].size();
  });

  std::vector<std::int32_t> map_ab(n, -1), used_b(n, 0);
  auto backtrack = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::uint32_t x = order[depth];
    for (std::uint32_t y : candidates[x]) {
      if (used_b[y]) continue;
      bool ok = true;
      for (std::size_t d2 = 0; d2 < depth; ++d2) {
        const std::uint32_t x2 = order[d2];
        const std::uint32_t y2 = static_cast<std::uint32_t>(map_ab[x2]);
        if (aa[x * n + x2] != ab[y * n + y2] || wa[x * n + x2] != wb[y * n + y2]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map_ab[x] = static_cast<std::int32_t>(y);
      used_b[y] = 1;
      if (self(self, depth + 1)) return true;
      map_ab[x] = -1;
      used_b[y] = 0;
    }
    return false;
  };
  return backtrack(backtrack, 0);
}

/// Bitwise identity of two local forms (same labeled edges, weights, biases,
/// anchors). Identical forms are trivially anchored-isomorphic (identity map)
/// and simulate to bit-identical values.
inline bool same_local_form(const AnchoredSubgraph& a, const AnchoredSubgraph& b) {
  if (a.global_nodes.size() != b.global_nodes.size() || a.anchors != b.anchors ||
      a.edges.size() != b.edges.size() || a.biases.size() != b.biases.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v ||
        a.edges[i].weight != b.edges[i].weight) {
      return false;
    }
  }
  return a.biases == b.biases;
}

}  // namespace qmean
