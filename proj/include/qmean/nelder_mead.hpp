#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace qmean {

struct NelderMeadOptions {
  std::size_t max_iterations = 400;
  double ftol = 1e-12;        // stop when simplex spread falls below this
  double initial_step = 0.3;  // per-coordinate offset building the start simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free simplex minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Deterministic given the start point.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, const NelderMeadOptions& opt = {}) {
  const std::size_t dim = x0.size();
  NelderMeadResult result;

  std::vector<std::vector<double>> simplex(dim + 1, x0);
  std::vector<double> fvals(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += opt.initial_step;
  for (std::size_t i = 0; i <= dim; ++i) {
    fvals[i] = f(simplex[i]);
    ++result.evaluations;
  }

  std::vector<std::size_t> idx(dim + 1);
  std::vector<double> centroid(dim), candidate(dim);
  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[dim ? dim - 1 : 0];
    if (fvals[worst] - fvals[best] < opt.ftol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double t) {
      for (std::size_t d = 0; d < dim; ++d) {
        candidate[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
      }
    };

    blend(-1.0);  // reflection
    const std::vector<double> reflected = candidate;
    const double f_reflected = f(reflected);
    ++result.evaluations;

    if (f_reflected < fvals[idx[0]]) {
      blend(-2.0);  // expansion
      const double f_expanded = f(candidate);
      ++result.evaluations;
      if (f_expanded < f_reflected) {
        simplex[worst] = candidate;
        fvals[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        fvals[worst] = f_reflected;
      }
    } else if (f_reflected < fvals[second]) {
      simplex[worst] = reflected;
      fvals[worst] = f_reflected;
    } else {
      blend(f_reflected < fvals[worst] ? -0.5 : 0.5);  // contraction
      const double f_contracted = f(candidate);
      ++result.evaluations;
      if (f_contracted < std::min(f_reflected, fvals[worst])) {
        simplex[worst] = candidate;
        fvals[worst] = f_contracted;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {  // shrink toward best
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
          }
          fvals[i] = f(simplex[i]);
          ++result.evaluations;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (fvals[i] < fvals[best]) best = i;
  }
  result.x = simplex[best];
  result.fx = fvals[best];
  return result;
}

}  // namespace qmean
