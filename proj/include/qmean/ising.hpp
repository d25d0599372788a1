#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmean/errors.hpp"

namespace qmean {

using NodeId = std::uint32_t;

/// One quadratic coupling w_uv * z_u * z_v. Stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;
};

/// Spin configuration z with every entry in {+1, -1}.
class SpinAssignment {
 public:
  explicit SpinAssignment(std::vector<int> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] != 1 && values_[i] != -1) {
        throw std::invalid_argument("spin " + std::to_string(i) +
                                    " must be +1 or -1, got " + std::to_string(values_[i]));
      }
    }
  }

  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<int> values_;
};

/// Weighted-graph form of a quadratic spin cost function:
///
///   C(z) = sum_{edges} w_uv z_u z_v + sum_k h_k z_k + offset.
///
/// Construction canonicalizes: edges are stored with u < v, sorted by (u, v),
/// duplicate unordered pairs merged by summing weights; duplicate biases merged
/// the same way. Edges whose merged weight is exactly zero are retained (the
/// topology stays inspectable) but contribute no decomposition terms.
/// Immutable after construction; safe to share across threads.
class IsingModel {
 public:
  IsingModel(NodeId num_nodes, const std::vector<Edge>& edges,
             const std::vector<std::pair<NodeId, double>>& biases, double offset = 0.0)
      : num_nodes_(num_nodes), offset_(offset) {
    std::map<std::pair<NodeId, NodeId>, double> merged;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.u >= num_nodes || e.v >= num_nodes) {
        throw std::invalid_argument("edge " + std::to_string(i) + " (" + std::to_string(e.u) +
                                    "," + std::to_string(e.v) + "): node id out of range (num_nodes " +
                                    std::to_string(num_nodes) + ")");
      }
      if (e.u == e.v) {
        throw std::invalid_argument("edge " + std::to_string(i) + ": self-loop on node " +
                                    std::to_string(e.u));
      }
      merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.weight;
    }
    edges_.reserve(merged.size());
    for (const auto& [uv, w] : merged) edges_.push_back({uv.first, uv.second, w});

    for (std::size_t i = 0; i < biases.size(); ++i) {
      const auto& [k, h] = biases[i];
      if (k >= num_nodes) {
        throw std::invalid_argument("bias " + std::to_string(i) + ": node id " +
                                    std::to_string(k) + " out of range (num_nodes " +
                                    std::to_string(num_nodes) + ")");
      }
      biases_[k] += h;
    }
  }

  NodeId num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::map<NodeId, double>& biases() const { return biases_; }
  double offset() const { return offset_; }

  bool operator==(const IsingModel& other) const {
    if (num_nodes_ != other.num_nodes_ || offset_ != other.offset_ ||
        biases_ != other.biases_ || edges_.size() != other.edges_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge &a = edges_[i], &b = other.edges_[i];
      if (a.u != b.u || a.v != b.v || a.weight != b.weight) return false;
    }
    return true;
  }

 private:
  NodeId num_nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, double> biases_;
  double offset_;
};

/// C(z) for one assignment. Throws on length mismatch.
inline double evaluate_cost(const IsingModel& model, const SpinAssignment& z) {
  if (z.size() != model.num_nodes()) {
    throw std::invalid_argument("assignment length " + std::to_string(z.size()) +
                                " != num_nodes " + std::to_string(model.num_nodes()));
  }
  double cost = 0.0;
  for (const Edge& e : model.edges()) cost += e.weight * z[e.u] * z[e.v];
  for (const auto& [k, h] : model.biases()) cost += h * z[k];
  return cost + model.offset();
}

struct DegreeStats {
  std::size_t max_degree = 0;
  double avg_degree = 0.0;  // nonzero-weight edges / nodes
};

inline DegreeStats degree_stats(const IsingModel& model) {
  std::vector<std::size_t> degree(model.num_nodes(), 0);
  std::size_t nonzero = 0;
  for (const Edge& e : model.edges()) {
    if (e.weight == 0.0) continue;
    ++nonzero;
    ++degree[e.u];
    ++degree[e.v];
  }
  DegreeStats stats;
  for (std::size_t d : degree) stats.max_degree = std::max(stats.max_degree, d);
  if (model.num_nodes() > 0) {
    stats.avg_degree = static_cast<double>(nonzero) / static_cast<double>(model.num_nodes());
  }
  return stats;
}

/// Canonical instance document: {"num_nodes": n, "edges": [[u,v,w],...],
/// "biases": [[k,h],...], "offset": x} with edges sorted by (u,v) and biases
/// by node id. serialize/parse round-trip exactly.
inline std::string serialize(const IsingModel& model) {
  nlohmann::json j;
  j["num_nodes"] = model.num_nodes();
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : model.edges()) j["edges"].push_back({e.u, e.v, e.weight});
  j["biases"] = nlohmann::json::array();
  for (const auto& [k, h] : model.biases()) j["biases"].push_back({k, h});
  j["offset"] = model.offset();
  return j.dump() + "\n";
}

inline IsingModel parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance document must be a JSON object");
  if (!j.contains("num_nodes")) throw ParseError("missing field \"num_nodes\"");
  if (!j["num_nodes"].is_number_unsigned()) {
    throw ParseError("field \"num_nodes\" must be a non-negative integer");
  }
  const NodeId n = j["num_nodes"].get<NodeId>();

  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("field \"edges\" must be an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const auto& e = j["edges"][i];
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned() || !e[2].is_number()) {
        throw ParseError("edges[" + std::to_string(i) + "] must be [u, v, weight] with integer node ids and numeric weight");
      }
      edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<double>()});
    }
  }

  std::vector<std::pair<NodeId, double>> biases;
  if (j.contains("biases")) {
    if (!j["biases"].is_array()) throw ParseError("field \"biases\" must be an array");
    for (std::size_t i = 0; i < j["biases"].size(); ++i) {
      const auto& b = j["biases"][i];
      if (!b.is_array() || b.size() != 2 || !b[0].is_number_unsigned() || !b[1].is_number()) {
        throw ParseError("biases[" + std::to_string(i) + "] must be [node, bias] with integer node id and numeric bias");
      }
      biases.emplace_back(b[0].get<NodeId>(), b[1].get<double>());
    }
  }

  double offset = 0.0;
  if (j.contains("offset")) {
    if (!j["offset"].is_number()) throw ParseError("field \"offset\" must be a number");
    offset = j["offset"].get<double>();
  }

  try {
    return IsingModel(n, edges, biases, offset);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

}  // namespace qmean
