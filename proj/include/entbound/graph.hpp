#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace entbound {

// Hard cap on the vertex count. Below this, full 2^n amplitude enumeration
// is tractable and every coefficient sum fits a signed 64-bit integer.
inline constexpr int kMaxVertices = 26;

// ---------------------------------------------------------------------------
// VertexSet: a bitmask over the vertices of a graph. The same value type
// serves as a computational-basis label, an independent set, and one side of
// a bipartition. Vertices are 0-based everywhere in the API; 1-based labels
// appear only in text formats.

struct VertexSet {
  std::uint32_t bits = 0;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint32_t b) : bits(b) {}

  static VertexSet of(std::initializer_list<int> vertices) {
    VertexSet s;
    for (int v : vertices) {
      if (v < 0 || v >= kMaxVertices) throw std::invalid_argument("vertex index out of range");
      s.bits |= (1u << v);
    }
    return s;
  }

  // Accepts the 1-based labels used in text formats and the literature.
  static VertexSet of_1based(std::initializer_list<int> vertices) {
    VertexSet s;
    for (int v : vertices) {
      if (v < 1 || v > kMaxVertices) throw std::invalid_argument("vertex label out of range");
      s.bits |= (1u << (v - 1));
    }
    return s;
  }

  static constexpr VertexSet all(int n) { return VertexSet((n <= 0) ? 0u : ((1u << n) - 1u)); }

  constexpr bool contains(int v) const { return (bits >> v) & 1u; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr VertexSet with(int v) const { return VertexSet(bits | (1u << v)); }
  constexpr VertexSet without(int v) const { return VertexSet(bits & ~(1u << v)); }

  std::vector<int> to_vertices() const {
    std::vector<int> out;
    for (std::uint32_t m = bits; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr bool operator==(VertexSet, VertexSet) = default;
};

constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits & b.bits); }
constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits | b.bits); }
constexpr VertexSet operator^(VertexSet a, VertexSet b) { return VertexSet(a.bits ^ b.bits); }

// Orders sets by their ascending vertex sequences, so {0,2,5} < {1} and a
// proper prefix precedes its extensions. Used for all witness tie-breaks.
inline bool lex_less(VertexSet a, VertexSet b) {
  std::uint32_t x = a.bits, y = b.bits;
  while (x && y) {
    int va = std::countr_zero(x), vb = std::countr_zero(y);
    if (va != vb) return va < vb;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

// Formats as "1,3,6", the 1-based comma form used by the CLI.
inline std::string to_1based_string(VertexSet s) {
  std::string out;
  for (int v : s.to_vertices()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph: simple undirected graph held as per-vertex adjacency bitmasks.
// Immutable after construction; the constructor enforces symmetry, a zero
// diagonal, and the vertex cap.

class Graph {
 public:
  Graph(int n, const std::vector<std::pair<int, int>>& edge_list) : n_(n) {
    if (n < 1 || n > kMaxVertices) throw std::invalid_argument("vertex count must be in [1, 26]");
    adj_.fill(0);
    for (auto [a, b] : edge_list) add_edge(a, b);
  }

  int vertex_count() const { return n_; }
  VertexSet vertex_mask() const { return VertexSet::all(n_); }

  std::uint32_t adj_row(int a) const { return adj_[static_cast<std::size_t>(a)]; }
  VertexSet neighbors(int a) const {
    check_vertex(a);
    return VertexSet(adj_[static_cast<std::size_t>(a)]);
  }

  bool has_edge(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    return (adj_[static_cast<std::size_t>(a)] >> b) & 1u;
  }

  int degree(int a) const { return std::popcount(neighbors(a).bits); }

  int edge_count() const {
    int twice = 0;
    for (int a = 0; a < n_; ++a) twice += std::popcount(adj_[static_cast<std::size_t>(a)]);
    return twice / 2;
  }

  // Sorted 0-based (a, b) pairs with a < b.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a) {
      std::uint32_t upper = adj_[static_cast<std::size_t>(a)] >> (a + 1);
      for (std::uint32_t m = upper; m; m &= m - 1) out.emplace_back(a, a + 1 + std::countr_zero(m));
    }
    return out;
  }

  Graph with_edge_toggled(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("cannot toggle a self-loop");
    Graph g = *this;
    g.adj_[static_cast<std::size_t>(a)] ^= (1u << b);
    g.adj_[static_cast<std::size_t>(b)] ^= (1u << a);
    return g;
  }

 private:
  void add_edge(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    if (has_edge(a, b)) throw std::invalid_argument("duplicate edge");
    adj_[static_cast<std::size_t>(a)] |= (1u << b);
    adj_[static_cast<std::size_t>(b)] |= (1u << a);
  }

  void check_vertex(int a) const {
    if (a < 0 || a >= n_) throw std::invalid_argument("vertex index out of range");
  }

  int n_;
  std::array<std::uint32_t, kMaxVertices> adj_{};
};

// Pure edge flip; applying it twice returns the original graph.
inline Graph toggle_edge(const Graph& g, int a, int b) { return g.with_edge_toggled(a, b); }

// Parity of the number of edges with both endpoints in s. Equals the sign
// exponent of the graph-state amplitude for basis label s.
inline int induced_edge_parity(const Graph& g, VertexSet s) {
  if (s.bits & ~g.vertex_mask().bits) throw std::invalid_argument("vertex set not valid for graph");
  int twice = 0;
  for (std::uint32_t m = s.bits; m; m &= m - 1)
    twice += std::popcount(g.adj_row(std::countr_zero(m)) & s.bits);
  return (twice / 2) & 1;
}

// ---------------------------------------------------------------------------
// Text format: optional '#' comment lines, one "n <count>" header, then
// "e <a> <b>" lines with 1-based endpoints.

enum class ParseErrorKind {
  MalformedLine,
  BadVertexCount,
  VertexOutOfRange,
  SelfLoop,
  DuplicateEdge,
};

class parse_error : public std::runtime_error {
 public:
  parse_error(ParseErrorKind kind, int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline bool parse_int(std::string_view token, int& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  int n = -1;
  std::vector<std::pair<int, int>> edge_list;
  std::array<std::uint32_t, kMaxVertices> seen{};

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto tokens = detail::split_tokens(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    if (tokens[0] == "n") {
      if (n != -1) throw parse_error(ParseErrorKind::MalformedLine, lineno, "repeated header line");
      int count = 0;
      if (tokens.size() != 2 || !detail::parse_int(tokens[1], count))
        throw parse_error(ParseErrorKind::MalformedLine, lineno, "malformed header line");
      if (count < 1 || count > kMaxVertices)
        throw parse_error(ParseErrorKind::BadVertexCount, lineno,
                          "vertex count out of range [1, " + std::to_string(kMaxVertices) + "]");
      n = count;
    } else if (tokens[0] == "e") {
      if (n == -1) throw parse_error(ParseErrorKind::MalformedLine, lineno, "edge before header line");
      int a = 0, b = 0;
      if (tokens.size() != 3 || !detail::parse_int(tokens[1], a) || !detail::parse_int(tokens[2], b))
        throw parse_error(ParseErrorKind::MalformedLine, lineno, "malformed edge line");
      if (a < 1 || a > n || b < 1 || b > n)
        throw parse_error(ParseErrorKind::VertexOutOfRange, lineno,
                          "vertex index out of range: " + std::string(a < 1 || a > n ? tokens[1] : tokens[2]));
      if (a == b) throw parse_error(ParseErrorKind::SelfLoop, lineno, "self-loop on vertex " + std::string(tokens[1]));
      int lo = (a < b ? a : b) - 1, hi = (a < b ? b : a) - 1;
      if ((seen[static_cast<std::size_t>(lo)] >> hi) & 1u)
        throw parse_error(ParseErrorKind::DuplicateEdge, lineno,
                          "duplicate edge (" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + ")");
      seen[static_cast<std::size_t>(lo)] |= (1u << hi);
      edge_list.emplace_back(lo, hi);
    } else {
      throw parse_error(ParseErrorKind::MalformedLine, lineno,
                        "unrecognized line start: " + std::string(tokens[0]));
    }
  }
  if (n == -1) throw parse_error(ParseErrorKind::MalformedLine, lineno, "missing header line");
  return Graph(n, edge_list);
}

inline std::string serialize_graph(const Graph& g) {
  std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
  for (auto [a, b] : g.edges()) out += "e " + std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
  return out;
}

// Named builders: ring:k, star:k, edgeless:k, petersen, code613.
// petersen uses the fixed labeling outer 1..5, inner 6..10, spokes i - i+5,
// inner chords between labels two apart.
inline Graph named_graph(std::string_view name) {
  auto cycle = [](int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    return e;
  };

  if (name == "petersen") {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
      e.emplace_back(i, (i + 1) % 5);          // outer cycle
      e.emplace_back(i, i + 5);                // spoke
      e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner chord
    }
    return Graph(10, e);
  }
  if (name == "code613") {
    return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {4, 5}});
  }

  auto suffix_int = [&](std::string_view prefix, int& k) {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return false;
    return detail::parse_int(name.substr(prefix.size()), k);
  };

  int k = 0;
  if (suffix_int("ring:", k)) {
    if (k < 3 || k > kMaxVertices) throw std::invalid_argument("ring size out of range [3, 26]");
    return Graph(k, cycle(k));
  }
  if (suffix_int("star:", k)) {
    if (k < 2 || k > kMaxVertices) throw std::invalid_argument("star size out of range [2, 26]");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < k; ++i) e.emplace_back(0, i);
    return Graph(k, e);
  }
  if (suffix_int("edgeless:", k)) {
    if (k < 1 || k > kMaxVertices) throw std::invalid_argument("edgeless size out of range [1, 26]");
    return Graph(k, {});
  }
  throw std::invalid_argument("unknown graph name: " + std::string(name));
}

}  // namespace entbound
