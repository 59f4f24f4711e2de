#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entbound/bounds.hpp"
#include "entbound/graph.hpp"
#include "entbound/state.hpp"

namespace entbound {

// Tolerance for declaring an integer lower bound to meet an upper bound.
inline constexpr double kExactTol = 1e-9;

// The general optimizer evaluates a 2^n sum per step; cap it where a single
// evaluation is still cheap.
inline constexpr int kMaxOptimizeVertices = 20;

class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Any product state certifies F <= 2^{-E_bi}; an optimizer reporting more
// than that contradicts the certified lower bound and aborts.
inline void enforce_fidelity_ceiling(double fidelity, int lower_ebits) {
  if (fidelity > std::exp2(-lower_ebits) + kExactTol)
    throw consistency_error("optimized fidelity exceeds the certified bipartite ceiling");
}

struct OptimizerConfig {
  int grid_p = 201;
  int grid_phi = 201;
  int starts = 64;
  int max_iters = 2000;
  double step_tol = 1e-12;
  double value_tol = 1e-12;
  std::uint64_t seed = 0;
};

namespace detail {

inline void validate_config(const OptimizerConfig& cfg) {
  if (cfg.grid_p < 1 || cfg.grid_phi < 1 || cfg.starts < 1 || cfg.max_iters < 1)
    throw std::invalid_argument("optimizer counts must be >= 1");
  if (!(cfg.step_tol > 0.0) || !(cfg.value_tol > 0.0))
    throw std::invalid_argument("optimizer tolerances must be > 0");
}

// Uniform double in [0, 1) from the raw engine stream; avoids
// std::uniform_real_distribution, whose output is implementation-defined.
inline double next_unit(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

struct RefineOutcome {
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
};

// Derivative-free coordinate descent with halving steps. Dimension i is
// clamped through clamp(i, v); moves are accepted only on strict improvement,
// so the trajectory is monotone and deterministic.
template <class Eval, class Clamp>
RefineOutcome coordinate_descent(std::vector<double>& x, double start_value, Eval&& eval, Clamp&& clamp,
                                 const OptimizerConfig& cfg) {
  RefineOutcome out;
  out.value = start_value;
  double step = 0.1;
  while (step >= cfg.step_tol) {
    bool moved = true;
    while (moved) {
      if (out.sweeps >= cfg.max_iters) return out;
      ++out.sweeps;
      moved = false;
      const double sweep_start = out.value;
      for (std::size_t i = 0; i < x.size(); ++i) {
        double best_v = out.value;
        double best_xi = x[i];
        const double original = x[i];
        for (double dir : {1.0, -1.0}) {
          const double cand = clamp(i, original + dir * step);
          if (cand == original) continue;
          x[i] = cand;
          const double v = eval(x);
          if (v > best_v) {
            best_v = v;
            best_xi = cand;
          }
        }
        x[i] = best_xi;
        if (best_v > out.value) {
          out.value = best_v;
          moved = true;
        }
      }
      if (out.value - sweep_start <= cfg.value_tol) break;
    }
    step *= 0.5;
  }
  out.converged = true;
  return out;
}

inline double clamp_unit(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace detail

struct SymmetricPoint {
  double p = 0.0;
  double phi = 0.0;
};

struct OptimumResult {
  double fidelity = 0.0;
  double entanglement_bound = 0.0;  // -log2(fidelity)
  ProductState state;
  std::optional<SymmetricPoint> symmetric_point;
  int iterations = 0;
  bool converged = false;
};

// ---------------------------------------------------------------------------
// Two-parameter optimizer over uniform product states (p, phi), driven by the
// integer coefficient polynomial. Grid scan with inclusive p endpoints and a
// half-open phi period, then coordinate-descent refinement from the best
// cell. The strict-improvement scan keeps the first of any exactly tied
// cells, i.e. the smallest p and then the smallest phi.

inline OptimumResult optimize_symmetric(const Graph& g, const OptimizerConfig& cfg = {}) {
  detail::validate_config(cfg);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const CoeffVector coeffs = symmetric_coefficients(g);

  double best_p = 0.5, best_phi = 0.0;
  double best = -1.0;
  for (int i = 0; i < cfg.grid_p; ++i) {
    const double p = (cfg.grid_p == 1) ? 0.5 : static_cast<double>(i) / (cfg.grid_p - 1);
    for (int j = 0; j < cfg.grid_phi; ++j) {
      const double phi = two_pi * j / cfg.grid_phi;
      const double v = symmetric_fidelity(coeffs, p, phi);
      if (v > best) {
        best = v;
        best_p = p;
        best_phi = phi;
      }
    }
  }
  if (best <= 0.0) {  // a coarse grid can sit on a zero; |0...0> never does
    best_p = 1.0;
    best_phi = 0.0;
    best = symmetric_fidelity(coeffs, best_p, best_phi);
  }

  std::vector<double> x = {best_p, best_phi};
  auto eval = [&](const std::vector<double>& q) { return symmetric_fidelity(coeffs, q[0], q[1]); };
  auto clamp = [](std::size_t i, double v) { return i == 0 ? detail::clamp_unit(v) : wrap_phase(v); };
  const auto refined = detail::coordinate_descent(x, best, eval, clamp, cfg);

  OptimumResult res{refined.value,
                    -std::log2(refined.value) + 0.0,
                    ProductState::uniform(g.vertex_count(), x[0], x[1]),
                    SymmetricPoint{x[0], x[1]},
                    refined.sweeps,
                    refined.converged};
  return res;
}

// ---------------------------------------------------------------------------
// General optimizer over all 2n parameters (p_a, phi_a). Multi-start
// coordinate descent: the deterministic starts are the uniform (1/2, 0) state
// and the symmetric optimum; the remaining starts come from a seeded
// mt19937_64 stream. Starts run in a fixed order and the best result wins,
// with exact ties broken by parameter order, so the outcome is a
// deterministic function of (graph, config).

inline OptimumResult optimize_product_fidelity(const Graph& g, const OptimizerConfig& cfg = {}) {
  detail::validate_config(cfg);
  const int n = g.vertex_count();
  if (n > kMaxOptimizeVertices) throw std::invalid_argument("graph too large for the general optimizer");
  constexpr double two_pi = 2.0 * std::numbers::pi;

  const OptimumResult sym = optimize_symmetric(g, cfg);

  // Parameter layout: x[0..n) = p, x[n..2n) = phi.
  auto eval = [&](const std::vector<double>& x) {
    return detail::clamp_fidelity(std::norm(detail::overlap_core(g, x.data(), x.data() + n)));
  };
  auto clamp = [&](std::size_t i, double v) {
    return i < static_cast<std::size_t>(n) ? detail::clamp_unit(v) : wrap_phase(v);
  };

  std::vector<std::vector<double>> starts;
  starts.reserve(static_cast<std::size_t>(cfg.starts) + 2);
  std::vector<double> flat(static_cast<std::size_t>(2 * n), 0.0);
  for (int a = 0; a < n; ++a) flat[static_cast<std::size_t>(a)] = 0.5;
  starts.push_back(flat);
  for (int a = 0; a < n; ++a) {
    flat[static_cast<std::size_t>(a)] = sym.symmetric_point->p;
    flat[static_cast<std::size_t>(n + a)] = sym.symmetric_point->phi;
  }
  starts.push_back(flat);
  std::mt19937_64 eng(cfg.seed);
  for (int s = 0; s < cfg.starts; ++s) {
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    for (int a = 0; a < n; ++a) {
      x[static_cast<std::size_t>(a)] = detail::next_unit(eng);
      x[static_cast<std::size_t>(n + a)] = two_pi * detail::next_unit(eng);
    }
    starts.push_back(std::move(x));
  }

  std::vector<double> best_x;
  double best = -1.0;
  int total_sweeps = 0;
  bool best_converged = false;
  for (auto& x : starts) {
    const auto outcome = detail::coordinate_descent(x, eval(x), eval, clamp, cfg);
    total_sweeps += outcome.sweeps;
    const bool better = outcome.value > best ||
                        (outcome.value == best && std::lexicographical_compare(x.begin(), x.end(),
                                                                               best_x.begin(), best_x.end()));
    if (better) {
      best = outcome.value;
      best_x = x;
      best_converged = outcome.converged;
    }
  }

  std::vector<double> p(best_x.begin(), best_x.begin() + n);
  std::vector<double> phi(best_x.begin() + n, best_x.end());
  return {best,  -std::log2(best) + 0.0, ProductState(std::move(p), std::move(phi)),
          std::nullopt, total_sweeps,    best_converged};
}

// ---------------------------------------------------------------------------
// Combined report: certified integer bounds plus optimizer upper bounds.

struct BoundsReport {
  BipartitionResult lower;
  MisResult mis;
  int mis_upper = 0;
  OptimumResult symmetric;
  std::optional<OptimumResult> general;
  double best_upper = 0.0;
  std::optional<int> entanglement_exact;  // present iff lower meets best_upper
  std::vector<std::string> conjecture_flags;
};

inline BoundsReport entanglement_bounds_report(const Graph& g, const OptimizerConfig& cfg = {}) {
  const int n = g.vertex_count();

  BoundsReport rep{best_bipartite_lower_bound(g),
                   max_independent_set(g),
                   0,
                   optimize_symmetric(g, cfg),
                   std::nullopt,
                   0.0,
                   std::nullopt,
                   {}};
  rep.mis_upper = n - rep.mis.size;
  if (n <= kMaxOptimizeVertices) rep.general = optimize_product_fidelity(g, cfg);

  enforce_fidelity_ceiling(rep.symmetric.fidelity, rep.lower.ebits);
  if (rep.general) enforce_fidelity_ceiling(rep.general->fidelity, rep.lower.ebits);
  if (rep.lower.ebits > rep.mis_upper)
    throw consistency_error("bipartite lower bound exceeds the independent-set upper bound");

  rep.best_upper = std::min(static_cast<double>(rep.mis_upper), rep.symmetric.entanglement_bound);
  if (rep.general) rep.best_upper = std::min(rep.best_upper, rep.general->entanglement_bound);

  if (rep.lower.ebits >= rep.best_upper - kExactTol) {
    rep.entanglement_exact = rep.lower.ebits;
  } else {
    // Not certified: optimizer values are upper bounds whose tightness the
    // report cannot prove.
    if (rep.symmetric.entanglement_bound < rep.mis_upper - kExactTol)
      rep.conjecture_flags.push_back("symmetric_upper_conjecture");
    if (rep.general && rep.general->entanglement_bound < rep.mis_upper + kExactTol)
      rep.conjecture_flags.push_back("general_upper_conjecture");
  }
  return rep;
}

}  // namespace entbound
