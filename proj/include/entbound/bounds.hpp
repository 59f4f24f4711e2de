#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "entbound/gf2.hpp"
#include "entbound/graph.hpp"
#include "entbound/state.hpp"

namespace entbound {

// Exhaustive bipartition enumeration is limited to this vertex count; above
// it the caller must supply candidate sides.
inline constexpr int kMaxExhaustiveBipartitions = 20;

// The Schmidt-rank oracle materializes the full amplitude vector.
inline constexpr int kMaxOracleVertices = 12;

// ---------------------------------------------------------------------------
// Exact maximum independent set.

struct MisResult {
  int size = 0;
  VertexSet witness;  // lexicographically smallest maximum independent set
};

namespace detail {

// Branch and bound on bitmasks: branch on the highest-degree vertex of the
// remaining subgraph, prune when even taking every remaining vertex cannot
// beat the incumbent.
inline void mis_search(const Graph& g, std::uint32_t mask, int current, int& best) {
  if (current + std::popcount(mask) <= best) return;
  if (mask == 0) {
    best = current;
    return;
  }
  int pick = -1, deg = -1;
  for (std::uint32_t m = mask; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    const int d = std::popcount(g.adj_row(v) & mask);
    if (d > deg) {
      deg = d;
      pick = v;
    }
  }
  const std::uint32_t pickbit = 1u << pick;
  mis_search(g, mask & ~(g.adj_row(pick) | pickbit), current + 1, best);  // include
  mis_search(g, mask & ~pickbit, current, best);                          // exclude
}

inline int mis_size(const Graph& g, std::uint32_t mask) {
  int best = 0;
  mis_search(g, mask, 0, best);
  return best;
}

}  // namespace detail

inline MisResult max_independent_set(const Graph& g) {
  const int n = g.vertex_count();
  const std::uint32_t full = VertexSet::all(n).bits;
  const int size = detail::mis_size(g, full);

  // Rebuild the lexicographically smallest witness: take the smallest vertex
  // whose inclusion still admits a completion of maximum size.
  VertexSet witness;
  std::uint32_t candidates = full;
  int need = size;
  for (int v = 0; v < n && need > 0; ++v) {
    if (!((candidates >> v) & 1u)) continue;
    const std::uint32_t after = candidates & ~(g.adj_row(v) | (1u << v)) & ~((1u << (v + 1)) - 1u);
    if (detail::mis_size(g, after) >= need - 1) {
      witness = witness.with(v);
      candidates = after;
      --need;
    } else {
      candidates &= ~(1u << v);
    }
  }
  return {size, witness};
}

// Entanglement upper bound n - |A| from the maximum independent set.
inline int independent_set_upper_bound(const Graph& g) {
  return g.vertex_count() - max_independent_set(g).size;
}

// Product state achieving fidelity 2^{-(n-|A|)}: free (p=1/2, phi=0) qubits
// on the independent set, |0> elsewhere.
inline ProductState witness_product_state(const Graph& g, VertexSet a_set) {
  if (a_set.bits & ~g.vertex_mask().bits) throw std::invalid_argument("vertex set not valid for graph");
  for (int v : a_set.to_vertices())
    if (g.adj_row(v) & a_set.bits) throw std::invalid_argument("witness set is not independent");

  const int n = g.vertex_count();
  std::vector<double> p(static_cast<std::size_t>(n), 1.0);
  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (int v : a_set.to_vertices()) p[static_cast<std::size_t>(v)] = 0.5;
  return ProductState(std::move(p), std::move(phi));
}

// ---------------------------------------------------------------------------
// Bipartite lower bounds: ebits across a cut equal the GF(2) rank of the
// cross-adjacency block.

struct BipartitionResult {
  VertexSet side;
  int ebits = 0;
};

inline BipartitionResult bipartite_entanglement(const Graph& g, VertexSet side) {
  return {side, gf2_rank(cross_block(g, side))};
}

inline BipartitionResult best_bipartite_lower_bound(const Graph& g, std::span<const VertexSet> candidates) {
  BipartitionResult best{VertexSet{}, -1};
  for (VertexSet side : candidates) {
    const int e = gf2_rank(cross_block(g, side));
    if (e > best.ebits || (e == best.ebits && lex_less(side, best.side))) best = {side, e};
  }
  if (best.ebits < 0) return {VertexSet{}, 0};
  return best;
}

// Maximum over all bipartitions, enumerated with vertex 0 pinned to the side
// (bipartitions are unordered). Ties resolve to the lexicographically
// smallest side.
inline BipartitionResult best_bipartite_lower_bound(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kMaxExhaustiveBipartitions)
    throw std::invalid_argument("graph too large for exhaustive bipartition enumeration");
  if (n < 2) return {VertexSet{}, 0};

  BipartitionResult best{VertexSet{}, -1};
  const std::uint32_t half = 1u << (n - 1);
  for (std::uint32_t rest = 0; rest + 1 < half; ++rest) {
    const VertexSet side((rest << 1) | 1u);
    const int e = gf2_rank(cross_block(g, side));
    if (e > best.ebits || (e == best.ebits && lex_less(side, best.side))) best = {side, e};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Schmidt-rank oracle: independent verification route for the GF(2) bound.
// Materializes the 2^n amplitude vector, reshapes it across the cut, and
// counts nonzero singular values via a one-sided Jacobi SVD. Graph-state
// singular values are 0 or 2^{-r/2}, far from the 1e-9 threshold; working on
// the reshaped state directly (not its Gram matrix) keeps the numerical zeros
// at machine scale.

namespace detail {

// Singular values of d vectors of length k (rows of `vecs`), by one-sided
// Jacobi: rotate vector pairs until mutually orthogonal; the norms that
// remain are the singular values.
inline std::vector<double> one_sided_jacobi_singular_values(std::vector<double>& vecs, int d, int k) {
  auto row = [&](int i) { return vecs.data() + static_cast<std::size_t>(i) * k; };
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        double* vi = row(i);
        double* vj = row(j);
        double a = 0.0, b = 0.0, c = 0.0;
        for (int t = 0; t < k; ++t) {
          a += vi[t] * vi[t];
          b += vj[t] * vj[t];
          c += vi[t] * vj[t];
        }
        if (c * c <= 1e-28 * a * b) continue;
        const double tau = (b - a) / (2.0 * c);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        for (int idx = 0; idx < k; ++idx) {
          const double x = vi[idx], y = vj[idx];
          vi[idx] = cs * x - sn * y;
          vj[idx] = sn * x + cs * y;
        }
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double norm2 = 0.0;
    const double* vi = row(i);
    for (int t = 0; t < k; ++t) norm2 += vi[t] * vi[t];
    sv[static_cast<std::size_t>(i)] = std::sqrt(norm2);
  }
  return sv;
}

}  // namespace detail

inline int schmidt_rank_oracle(const Graph& g, VertexSet side) {
  const int n = g.vertex_count();
  if (n > kMaxOracleVertices) throw std::invalid_argument("graph too large for the Schmidt-rank oracle");
  const VertexSet mask = g.vertex_mask();
  if (side.bits & ~mask.bits) throw std::invalid_argument("side not valid for graph");
  const VertexSet comp = side ^ mask;
  if (side.empty() || comp.empty()) throw std::invalid_argument("bipartition must have two non-empty sides");

  const auto rows_of = side.to_vertices();
  const auto cols_of = comp.to_vertices();
  const int nrows = 1 << rows_of.size();
  const int ncols = 1 << cols_of.size();

  std::vector<double> m(static_cast<std::size_t>(nrows) * ncols);
  for (std::uint32_t mu = 0; mu < (1u << n); ++mu) {
    int r = 0, c = 0;
    for (std::size_t i = 0; i < rows_of.size(); ++i) r |= static_cast<int>((mu >> rows_of[i]) & 1u) << i;
    for (std::size_t j = 0; j < cols_of.size(); ++j) c |= static_cast<int>((mu >> cols_of[j]) & 1u) << j;
    m[static_cast<std::size_t>(r) * ncols + c] = amplitude(g, VertexSet(mu));
  }

  // Orthogonalize along the smaller dimension; both orientations share the
  // same singular values.
  const bool by_rows = nrows <= ncols;
  const int d = by_rows ? nrows : ncols;
  const int k = by_rows ? ncols : nrows;
  std::vector<double> vecs(static_cast<std::size_t>(d) * k);
  for (int i = 0; i < d; ++i)
    for (int t = 0; t < k; ++t)
      vecs[static_cast<std::size_t>(i) * k + t] =
          by_rows ? m[static_cast<std::size_t>(i) * ncols + t] : m[static_cast<std::size_t>(t) * ncols + i];

  int rank = 0;
  for (double sv : detail::one_sided_jacobi_singular_values(vecs, d, k))
    if (sv > 1e-9) ++rank;

  const int ebits = static_cast<int>(std::lround(std::log2(static_cast<double>(rank))));
  if (rank <= 0 || (1 << ebits) != rank)
    throw std::logic_error("Schmidt rank of a graph state must be a power of two");
  return ebits;
}

}  // namespace entbound
