#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entbound/graph.hpp"

namespace entbound {

inline double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(phi, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

// ---------------------------------------------------------------------------
// ProductState: pure product state, one (p, phi) pair per qubit. Qubit a is
// sqrt(p_a)|0> + sqrt(1-p_a) e^{i phi_a}|1>. Phases are kept in [0, 2pi).

class ProductState {
 public:
  ProductState(std::vector<double> p, std::vector<double> phi) : p_(std::move(p)), phi_(std::move(phi)) {
    if (p_.size() != phi_.size()) throw std::invalid_argument("p and phi must have equal length");
    if (p_.empty() || p_.size() > static_cast<std::size_t>(kMaxVertices))
      throw std::invalid_argument("qubit count out of range [1, 26]");
    for (double v : p_)
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
    for (double& v : phi_) v = wrap_phase(v);
  }

  static ProductState uniform(int n, double p, double phi) {
    return ProductState(std::vector<double>(static_cast<std::size_t>(n), p),
                        std::vector<double>(static_cast<std::size_t>(n), phi));
  }

  int qubit_count() const { return static_cast<int>(p_.size()); }
  double p(int a) const { return p_[static_cast<std::size_t>(a)]; }
  double phi(int a) const { return phi_[static_cast<std::size_t>(a)]; }

  void set_p(int a, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
    p_[static_cast<std::size_t>(a)] = v;
  }
  void set_phi(int a, double v) { phi_[static_cast<std::size_t>(a)] = wrap_phase(v); }

  const std::vector<double>& probabilities() const { return p_; }
  const std::vector<double>& phases() const { return phi_; }

  friend bool operator==(const ProductState&, const ProductState&) = default;

 private:
  std::vector<double> p_;
  std::vector<double> phi_;
};

// ---------------------------------------------------------------------------
// Graph-state amplitudes. <mu|G> = (-1)^{induced edge parity of mu} 2^{-n/2}.

inline double amplitude(const Graph& g, VertexSet mu) {
  const double mag = std::exp2(-0.5 * g.vertex_count());
  return induced_edge_parity(g, mu) ? -mag : mag;
}

// Amplitude of |mu> in the graph-basis state prod_{a in k} Z_a |G>.
inline double basis_amplitude(const Graph& g, VertexSet k, VertexSet mu) {
  if (k.bits & ~g.vertex_mask().bits) throw std::invalid_argument("vertex set not valid for graph");
  return ((k & mu).size() & 1) ? -amplitude(g, mu) : amplitude(g, mu);
}

// Checks the stabilizer fixed-point identity for X_a prod_{b in N_a} Z_b by
// comparing sign exponents over every basis label. Always true for a valid
// Graph; exists as a self-test of the amplitude convention.
inline bool verify_stabilizer(const Graph& g, int a) {
  const int n = g.vertex_count();
  if (a < 0 || a >= n) throw std::invalid_argument("vertex index out of range");
  const std::uint32_t na = g.adj_row(a);
  const std::uint32_t abit = 1u << a;
  for (std::uint32_t mu = 0; mu < (1u << n); ++mu) {
    const int lhs = induced_edge_parity(g, VertexSet(mu ^ abit)) ^ (std::popcount(mu & na) & 1);
    if (lhs != induced_edge_parity(g, VertexSet(mu))) return false;
  }
  return true;
}

namespace detail {

inline double clamp_fidelity(double f) {
  if (f > 1.0) {
    if (f > 1.0 + 1e-9) throw std::logic_error("fidelity exceeded 1 beyond rounding slack");
    f = 1.0;
  }
  return f;
}

// Full 2^n overlap sum, streamed depth-first over the basis labels in index
// order. Deciding qubits from high to low lets the induced-edge parity be
// updated incrementally: each edge is charged to its lower endpoint, whose
// neighbors above are already fixed. O(2^n) time, O(n) space.
inline std::complex<double> overlap_core(const Graph& g, const double* p, const double* phi) {
  const int n = g.vertex_count();
  double amp0[kMaxVertices];
  std::complex<double> amp1[kMaxVertices];
  for (int a = 0; a < n; ++a) {
    amp0[a] = std::sqrt(p[a]);
    const double r = std::sqrt(1.0 - p[a]);
    amp1[a] = {r * std::cos(phi[a]), r * std::sin(phi[a])};
  }

  std::complex<double> sum = 0.0;
  auto walk = [&](auto&& self, int q, std::uint32_t chosen, int parity, std::complex<double> prod) -> void {
    if (prod.real() == 0.0 && prod.imag() == 0.0) return;  // pinned qubit, whole subtree vanishes
    if (q < 0) {
      sum += parity ? -prod : prod;
      return;
    }
    self(self, q - 1, chosen, parity, prod * amp0[q]);
    const int dpar = std::popcount(g.adj_row(q) & chosen) & 1;
    self(self, q - 1, chosen | (1u << q), parity ^ dpar, prod * amp1[q]);
  };
  walk(walk, n - 1, 0u, 0, std::complex<double>(1.0, 0.0));
  return sum * std::exp2(-0.5 * n);
}

}  // namespace detail

// Exact <G|phi> for a product state phi, summed over all 2^n basis labels.
inline std::complex<double> product_overlap(const Graph& g, const ProductState& s) {
  if (s.qubit_count() != g.vertex_count()) throw std::invalid_argument("qubit count does not match graph");
  return detail::overlap_core(g, s.probabilities().data(), s.phases().data());
}

inline double fidelity(const Graph& g, const ProductState& s) {
  return detail::clamp_fidelity(std::norm(product_overlap(g, s)));
}

// ---------------------------------------------------------------------------
// CoeffVector: integer coefficients of the symmetric-ansatz overlap
// polynomial. c_j sums the amplitude signs over all vertex sets of size j.

class CoeffVector {
 public:
  explicit CoeffVector(std::vector<std::int64_t> values) : c_(std::move(values)) {
    const int n = degree();
    if (n < 1 || n > kMaxVertices) throw std::invalid_argument("coefficient vector degree out of range");
    if (c_[0] != 1) throw std::invalid_argument("c_0 must be 1");
    if (c_[1] != n) throw std::invalid_argument("c_1 must equal the vertex count");
    std::int64_t total = 0;
    for (std::int64_t v : c_) total += (v < 0 ? -v : v);
    if (total > (std::int64_t{1} << n)) throw std::invalid_argument("coefficient mass exceeds 2^n");
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<std::int64_t>& values() const { return c_; }
  std::int64_t operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }

 private:
  std::vector<std::int64_t> c_;
};

inline CoeffVector symmetric_coefficients(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
  auto walk = [&](auto&& self, int q, std::uint32_t chosen, int parity, int count) -> void {
    if (q < 0) {
      c[static_cast<std::size_t>(count)] += parity ? -1 : 1;
      return;
    }
    self(self, q - 1, chosen, parity, count);
    const int dpar = std::popcount(g.adj_row(q) & chosen) & 1;
    self(self, q - 1, chosen | (1u << q), parity ^ dpar, count + 1);
  };
  walk(walk, n - 1, 0u, 0, 0);
  return CoeffVector(std::move(c));
}

// Overlap of the uniform product state (p, phi) with the graph state, through
// the coefficient polynomial: 2^{-n/2} sum_j c_j x^{n-j} y^j with x = sqrt(p),
// y = sqrt(1-p) e^{i phi}.
inline std::complex<double> symmetric_overlap(const CoeffVector& c, double p, double phi) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
  const int n = c.degree();
  const double x = std::sqrt(p);
  const double r = std::sqrt(1.0 - p);
  const std::complex<double> y{r * std::cos(phi), r * std::sin(phi)};

  double xpow[kMaxVertices + 1];
  xpow[0] = 1.0;
  for (int j = 1; j <= n; ++j) xpow[j] = xpow[j - 1] * x;

  std::complex<double> sum = 0.0;
  std::complex<double> ypow = 1.0;
  for (int j = 0; j <= n; ++j) {
    sum += static_cast<double>(c[j]) * xpow[n - j] * ypow;
    ypow *= y;
  }
  return sum * std::exp2(-0.5 * n);
}

inline double symmetric_fidelity(const CoeffVector& c, double p, double phi) {
  return detail::clamp_fidelity(std::norm(symmetric_overlap(c, p, phi)));
}

}  // namespace entbound
