#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entbound/graph.hpp"

namespace entbound {

// Dense matrix over GF(2), one 32-bit mask per row.
struct Gf2Matrix {
  std::vector<std::uint32_t> rows;
  int ncols = 0;

  Gf2Matrix() = default;
  Gf2Matrix(std::vector<std::uint32_t> r, int cols) : rows(std::move(r)), ncols(cols) {
    if (cols < 0 || cols > 32) throw std::invalid_argument("column count out of range [0, 32]");
    const std::uint32_t mask = (cols == 32) ? ~0u : ((1u << cols) - 1u);
    for (std::uint32_t row : rows)
      if (row & ~mask) throw std::invalid_argument("row has bits beyond the column count");
  }

  int row_count() const { return static_cast<int>(rows.size()); }
  bool at(int r, int c) const { return (rows[static_cast<std::size_t>(r)] >> c) & 1u; }
};

// Rank over GF(2) by in-place elimination on the row masks.
inline int gf2_rank(Gf2Matrix m) {
  const int nrows = m.row_count();
  int rank = 0;
  for (int c = 0; c < m.ncols && rank < nrows; ++c) {
    int pivot = -1;
    for (int r = rank; r < nrows; ++r) {
      if (m.at(r, c)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m.rows[static_cast<std::size_t>(pivot)], m.rows[static_cast<std::size_t>(rank)]);
    for (int r = 0; r < nrows; ++r)
      if (r != rank && m.at(r, c)) m.rows[static_cast<std::size_t>(r)] ^= m.rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

// Off-diagonal adjacency block for the bipartition (side, complement): rows
// indexed by side vertices ascending, columns by complement ascending.
inline Gf2Matrix cross_block(const Graph& g, VertexSet side) {
  const VertexSet mask = g.vertex_mask();
  if (side.bits & ~mask.bits) throw std::invalid_argument("side not valid for graph");
  const VertexSet comp = side ^ mask;
  if (side.empty() || comp.empty()) throw std::invalid_argument("bipartition must have two non-empty sides");

  const auto cols = comp.to_vertices();
  std::vector<std::uint32_t> rows;
  rows.reserve(static_cast<std::size_t>(side.size()));
  for (int a : side.to_vertices()) {
    std::uint32_t row = 0;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (g.has_edge(a, cols[j])) row |= (1u << j);
    rows.push_back(row);
  }
  return Gf2Matrix(std::move(rows), static_cast<int>(cols.size()));
}

}  // namespace entbound
