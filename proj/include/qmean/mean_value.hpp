#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmean/errors.hpp"
#include "qmean/ising.hpp"
#include "qmean/lightcone.hpp"
#include "qmean/nelder_mead.hpp"
#include "qmean/statevector.hpp"

namespace qmean {

struct EngineConfig {
  std::uint32_t worker_count = 0;  // 0 = available hardware parallelism
  bool dedup = true;
  std::uint32_t max_subgraph_qubits = kDefaultQubitCap;
  // Reduction order is fixed: sequential left-to-right in decompose order,
  // so energies are bit-identical across worker counts.
  static constexpr std::string_view reduction = "sequential";
};

struct TermResult {
  TermId term;
  double expectation = 0.0;  // in [-1, 1]
  double coefficient = 0.0;
  std::uint32_t subgraph_qubits = 0;
  bool cache_hit = false;
};

struct MeanValueReport {
  double energy = 0.0;  // offset + sum coefficient * expectation
  std::vector<TermResult> terms;
  std::size_t distinct_classes = 0;  // subgraph simulations performed
  double wall_time_s = 0.0;
  std::uint32_t worker_count = 1;
};

namespace detail {

inline std::uint32_t resolve_workers(std::uint32_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Run fn(job) for all jobs on a bounded pool; jobs are pulled from a shared
/// counter so scheduling never affects which work is done, only by whom.
template <typename Fn>
void run_jobs(std::uint32_t workers, std::size_t job_count, Fn&& fn) {
  if (job_count == 0) return;
  const std::uint32_t spawn = static_cast<std::uint32_t>(
      std::min<std::size_t>(workers, job_count));
  if (spawn <= 1) {
    for (std::size_t j = 0; j < job_count; ++j) fn(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < job_count; j = next.fetch_add(1)) fn(j);
  };
  std::vector<std::thread> threads;
  threads.reserve(spawn - 1);
  for (std::uint32_t t = 0; t + 1 < spawn; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
}

}  // namespace detail

/// E_p(gamma, beta) by light-cone decomposition: one small circuit per term,
/// deduplicated via canonical keys (reuse only after verifying the cached
/// subgraph form, so cached values are exact), evaluated on a worker pool,
/// reduced sequentially in decompose order.
inline MeanValueReport expectation(const IsingModel& model, const ParamSchedule& params,
                                   const EngineConfig& config = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  MeanValueReport report;
  report.worker_count = detail::resolve_workers(config.worker_count);

  auto terms = decompose(model, params.depth());
  for (const auto& [term, sub] : terms) {
    if (sub.num_qubits() > config.max_subgraph_qubits) {
      const std::string name = term.kind == TermKind::Edge
                                   ? "edge (" + std::to_string(term.i) + "," + std::to_string(term.j) + ")"
                                   : "node " + std::to_string(term.i);
      throw ResourceError("light cone of " + name + " has " + std::to_string(sub.num_qubits()) +
                          " qubits, above the cap of " + std::to_string(config.max_subgraph_qubits) +
                          " — raise max_subgraph_qubits or reduce p");
    }
  }

  // job list: one simulation per distinct subgraph form when dedup is on,
  // one per term otherwise
  std::vector<std::size_t> class_of_term(terms.size());
  std::vector<std::size_t> job_term;  // representative term per job
  if (config.dedup) {
    std::unordered_map<CanonicalKey, std::vector<std::size_t>> cache;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      auto& candidates = cache[canonical_key(terms[t].second)];
      std::size_t cls = job_term.size();
      for (std::size_t c : candidates) {
        if (same_local_form(terms[t].second, terms[job_term[c]].second)) {
          cls = c;
          break;
        }
      }
      if (cls == job_term.size()) {
        candidates.push_back(cls);
        job_term.push_back(t);
      }
      class_of_term[t] = cls;
    }
  } else {
    job_term.resize(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
      job_term[t] = t;
      class_of_term[t] = t;
    }
  }
  report.distinct_classes = job_term.size();

  // dispatch largest subgraphs first to mitigate stragglers
  std::vector<std::size_t> dispatch(job_term.size());
  for (std::size_t j = 0; j < dispatch.size(); ++j) dispatch[j] = j;
  std::stable_sort(dispatch.begin(), dispatch.end(), [&](std::size_t a, std::size_t b) {
    return terms[job_term[a]].second.num_qubits() > terms[job_term[b]].second.num_qubits();
  });

  std::vector<double> class_value(job_term.size(), 0.0);
  detail::run_jobs(report.worker_count, dispatch.size(), [&](std::size_t d) {
    const std::size_t cls = dispatch[d];
    const AnchoredSubgraph& sub = terms[job_term[cls]].second;
    class_value[cls] = simulate_term(sub, params, config.max_subgraph_qubits);
  });

  report.terms.reserve(terms.size());
  double energy = model.offset();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::size_t cls = class_of_term[t];
    TermResult r;
    r.term = terms[t].first;
    r.expectation = class_value[cls];
    r.coefficient = terms[t].first.coefficient;
    r.subgraph_qubits = terms[t].second.num_qubits();
    r.cache_hit = job_term[cls] != t;
    energy += r.coefficient * r.expectation;
    report.terms.push_back(r);
  }
  report.energy = energy;
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

struct OptimizeConfig {
  std::uint32_t restarts = 8;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 400;
  EngineConfig engine;
};

struct TraceEntry {
  std::vector<double> gammas;
  std::vector<double> betas;
  double energy = 0.0;
};

struct OptimizeResult {
  ParamSchedule best_params;
  double best_energy = 0.0;
  std::vector<TraceEntry> trace;  // every evaluation, in order
};

/// Outer-loop angle optimization: Nelder-Mead multi-started from seeded points
/// in gamma in [0, pi), beta in [0, pi/2). Deterministic per seed.
inline OptimizeResult optimize(const IsingModel& model, std::uint32_t p,
                               const OptimizeConfig& config = {}) {
  if (p == 0) throw std::invalid_argument("optimize needs p >= 1");
  const std::vector<double> zeros(p, 0.0);

  bool has_terms = false;
  for (const Edge& e : model.edges()) has_terms |= (e.weight != 0.0);
  for (const auto& [k, h] : model.biases()) has_terms |= (h != 0.0);
  if (!has_terms) {
    return OptimizeResult{ParamSchedule(zeros, zeros), model.offset(), {}};
  }

  OptimizeResult result{ParamSchedule(zeros, zeros), 0.0, {}};
  bool have_best = false;

  auto energy_at = [&](const std::vector<double>& x) {
    std::vector<double> gammas(x.begin(), x.begin() + p);
    std::vector<double> betas(x.begin() + p, x.end());
    ParamSchedule schedule(gammas, betas);
    const double energy = expectation(model, schedule, config.engine).energy;
    result.trace.push_back({std::move(gammas), std::move(betas), energy});
    return energy;
  };

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> gamma_dist(0.0, 3.14159265358979323846);
  std::uniform_real_distribution<double> beta_dist(0.0, 3.14159265358979323846 / 2.0);
  NelderMeadOptions nm;
  nm.max_iterations = config.max_iterations;

  for (std::uint32_t r = 0; r < std::max<std::uint32_t>(config.restarts, 1); ++r) {
    std::vector<double> x0(2 * p);
    for (std::uint32_t d = 0; d < p; ++d) x0[d] = gamma_dist(rng);
    for (std::uint32_t d = 0; d < p; ++d) x0[p + d] = beta_dist(rng);
    const NelderMeadResult run = nelder_mead(energy_at, x0, nm);
    if (!have_best || run.fx < result.best_energy) {
      have_best = true;
      result.best_energy = run.fx;
      result.best_params = ParamSchedule(
          std::vector<double>(run.x.begin(), run.x.begin() + p),
          std::vector<double>(run.x.begin() + p, run.x.end()));
    }
  }
  return result;
}

/// Inclusive linspace grid over (gamma, beta) for p = 1 landscapes.
struct GridSpec {
  double gamma_min = 0.0;
  double gamma_max = 3.14159265358979323846;
  double beta_min = 0.0;
  double beta_max = 3.14159265358979323846 / 2.0;
  std::size_t gamma_points = 32;
  std::size_t beta_points = 32;
};

struct GridResult {
  std::vector<double> gammas;
  std::vector<double> betas;
  std::vector<double> energies;  // row-major: [gi * betas.size() + bi]
};

inline GridResult grid_scan(const IsingModel& model, std::uint32_t p, const GridSpec& spec,
                            const EngineConfig& config = {}) {
  if (p != 1) throw std::invalid_argument("grid_scan supports p = 1 only");
  if (spec.gamma_points == 0 || spec.beta_points == 0) {
    throw std::invalid_argument("grid needs at least one point per axis");
  }
  auto linspace = [](double lo, double hi, std::size_t count) {
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) {
      pts[i] = count > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1)
                         : lo;
    }
    return pts;
  };
  GridResult grid;
  grid.gammas = linspace(spec.gamma_min, spec.gamma_max, spec.gamma_points);
  grid.betas = linspace(spec.beta_min, spec.beta_max, spec.beta_points);
  grid.energies.reserve(spec.gamma_points * spec.beta_points);
  for (double gamma : grid.gammas) {
    for (double beta : grid.betas) {
      grid.energies.push_back(expectation(model, ParamSchedule({gamma}, {beta}), config).energy);
    }
  }
  return grid;
}

}  // namespace qmean
