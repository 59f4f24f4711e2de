#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "entbound/graph.hpp"
#include "entbound/state.hpp"
#include "oracles.hpp"

using namespace entbound;

namespace {

constexpr double kPi = std::numbers::pi;

Graph relabeled(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges())
    edges.emplace_back(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
  return Graph(g.vertex_count(), edges);
}

}  // namespace

TEST_CASE("amplitude") {
  const Graph ring5 = named_graph("ring:5");
  const double mag5 = std::exp2(-2.5);
  CHECK(amplitude(ring5, VertexSet{}) == Approx(mag5).margin(1e-15));
  CHECK(amplitude(ring5, VertexSet::of_1based({1, 2})) == Approx(-mag5).margin(1e-15));
  const Graph pet = named_graph("petersen");
  CHECK(amplitude(pet, pet.vertex_mask()) == Approx(-std::exp2(-5.0)).margin(1e-15));
}

TEST_CASE("amplitude normalization on the corpus, n <= 12") {
  for (const auto& [name, g] : oracle::corpus()) {
    if (g.vertex_count() > 12) continue;
    INFO(name);
    double total = 0.0;
    for (std::uint32_t mu = 0; mu < (1u << g.vertex_count()); ++mu) {
      const double a = amplitude(g, VertexSet(mu));
      total += a * a;
    }
    CHECK(total == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("basis_amplitude") {
  const Graph ring5 = named_graph("ring:5");
  SECTION("k = empty set is the plain amplitude") {
    for (std::uint32_t mu = 0; mu < 32; ++mu)
      CHECK(basis_amplitude(ring5, VertexSet{}, VertexSet(mu)) == amplitude(ring5, VertexSet(mu)));
  }
  SECTION("a single Z flips the sign on overlapping labels") {
    CHECK(basis_amplitude(ring5, VertexSet::of_1based({1}), VertexSet::of_1based({1, 2})) ==
          Approx(std::exp2(-2.5)).margin(1e-15));
  }
  SECTION("graph basis is orthonormal, brute force for n <= 4") {
    for (const auto& [name, g] : oracle::corpus()) {
      const int n = g.vertex_count();
      if (n > 4) continue;
      INFO(name);
      for (std::uint32_t k1 = 0; k1 < (1u << n); ++k1) {
        for (std::uint32_t k2 = 0; k2 < (1u << n); ++k2) {
          double dot = 0.0;
          for (std::uint32_t mu = 0; mu < (1u << n); ++mu)
            dot += basis_amplitude(g, VertexSet(k1), VertexSet(mu)) * basis_amplitude(g, VertexSet(k2), VertexSet(mu));
          REQUIRE(dot == Approx(k1 == k2 ? 1.0 : 0.0).margin(1e-12));
        }
      }
    }
  }
}

TEST_CASE("verify_stabilizer holds everywhere") {
  for (const auto& [name, g] : oracle::corpus()) {
    if (g.vertex_count() > 10) continue;
    INFO(name);
    for (int a = 0; a < g.vertex_count(); ++a) REQUIRE(verify_stabilizer(g, a));
  }
  CHECK(verify_stabilizer(named_graph("edgeless:1"), 0));
  for (int i = 0; i < 20; ++i) {
    const Graph g = oracle::random_graph(3000 + static_cast<std::uint64_t>(i), 1 + i % 8);
    for (int a = 0; a < g.vertex_count(); ++a) REQUIRE(verify_stabilizer(g, a));
  }
  CHECK_THROWS_AS(verify_stabilizer(named_graph("ring:3"), 3), std::invalid_argument);
}

TEST_CASE("product_overlap") {
  SECTION("all qubits pinned to |0> leaves the single empty-label term") {
    for (const auto& [name, g] : oracle::corpus()) {
      if (g.vertex_count() > 10) continue;
      INFO(name);
      const auto v = product_overlap(g, ProductState::uniform(g.vertex_count(), 1.0, 0.0));
      CHECK(v.real() == Approx(std::exp2(-0.5 * g.vertex_count())).margin(1e-12));
      CHECK(v.imag() == Approx(0.0).margin(1e-15));
    }
  }
  SECTION("petersen uniform (1/2, pi/2) gives 2^-3 (-1 + i)") {
    const auto v = product_overlap(named_graph("petersen"), ProductState::uniform(10, 0.5, kPi / 2));
    CHECK(v.real() == Approx(-0.125).margin(1e-12));
    CHECK(v.imag() == Approx(0.125).margin(1e-12));
  }
  SECTION("qubit-count mismatch is rejected") {
    CHECK_THROWS_AS(product_overlap(named_graph("ring:5"), ProductState::uniform(4, 0.5, 0.0)), std::invalid_argument);
  }
  SECTION("agrees with the direct per-label enumeration") {
    for (const auto& [name, g] : oracle::corpus()) {
      if (g.vertex_count() > 8) continue;
      INFO(name);
      for (int t = 0; t < 5; ++t) {
        const auto s = oracle::random_state(4000 + static_cast<std::uint64_t>(t), g.vertex_count());
        const auto got = product_overlap(g, s);
        const auto want = oracle::overlap_direct(g, s);
        REQUIRE(std::abs(got - want) < 1e-12);
      }
    }
    for (int i = 0; i < 10; ++i) {
      const Graph g = oracle::random_graph(5000 + static_cast<std::uint64_t>(i), 2 + i % 7);
      for (int t = 0; t < 3; ++t) {
        const auto s = oracle::random_state(6000 + static_cast<std::uint64_t>(10 * i + t), g.vertex_count());
        REQUIRE(std::abs(product_overlap(g, s) - oracle::overlap_direct(g, s)) < 1e-12);
      }
    }
  }
}

TEST_CASE("fidelity") {
  SECTION("pinned state gives 2^-n") {
    const Graph g = named_graph("code613");
    CHECK(fidelity(g, ProductState::uniform(6, 1.0, 0.0)) == Approx(std::exp2(-6.0)).margin(1e-14));
  }
  SECTION("known optimal points") {
    CHECK(fidelity(named_graph("petersen"), ProductState::uniform(10, 0.5, kPi / 2)) ==
          Approx(1.0 / 32.0).margin(1e-12));
    const double popt = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
    CHECK(fidelity(named_graph("ring:5"), ProductState::uniform(5, popt, kPi / 4)) ==
          Approx((3.0 + std::sqrt(3.0)) / 36.0).margin(1e-12));
  }
  SECTION("fidelity is the squared modulus of the overlap") {
    const Graph g = named_graph("ring:5");
    for (int t = 0; t < 10; ++t) {
      const auto s = oracle::random_state(7000 + static_cast<std::uint64_t>(t), 5);
      CHECK(fidelity(g, s) == Approx(std::norm(product_overlap(g, s))).margin(1e-15));
    }
  }
  SECTION("conjugating every phase leaves the fidelity unchanged") {
    for (const auto& [name, g] : oracle::corpus()) {
      if (g.vertex_count() > 9) continue;
      const auto s = oracle::random_state(8000 + static_cast<std::uint64_t>(g.vertex_count()), g.vertex_count());
      std::vector<double> phi_neg;
      for (double v : s.phases()) phi_neg.push_back(-v);
      const ProductState conj(s.probabilities(), phi_neg);
      CHECK(fidelity(g, s) == Approx(fidelity(g, conj)).margin(1e-12));
    }
  }
  SECTION("phases are 2 pi periodic") {
    const Graph g = named_graph("ring:5");
    const auto s = oracle::random_state(900, 5);
    std::vector<double> shifted;
    for (double v : s.phases()) shifted.push_back(v + 2.0 * kPi);
    CHECK(fidelity(g, ProductState(s.probabilities(), shifted)) == Approx(fidelity(g, s)).margin(1e-12));
  }
}

TEST_CASE("symmetric_coefficients") {
  SECTION("petersen") {
    const auto c = symmetric_coefficients(named_graph("petersen"));
    CHECK(c.values() == std::vector<std::int64_t>{1, 10, 15, 0, -50, 108, 50, 0, -15, 10, -1});
  }
  SECTION("five-vertex ring") {
    CHECK(symmetric_coefficients(named_graph("ring:5")).values() == std::vector<std::int64_t>{1, 5, 0, 0, -5, -1});
  }
  SECTION("edgeless graphs give binomials") {
    CHECK(symmetric_coefficients(named_graph("edgeless:3")).values() == std::vector<std::int64_t>{1, 3, 3, 1});
  }
  SECTION("matches the per-label sign sum on the corpus, n <= 10") {
    for (const auto& [name, g] : oracle::corpus()) {
      const int n = g.vertex_count();
      if (n > 10) continue;
      INFO(name);
      std::vector<std::int64_t> want(static_cast<std::size_t>(n) + 1, 0);
      for (std::uint32_t mu = 0; mu < (1u << n); ++mu)
        want[static_cast<std::size_t>(std::popcount(mu))] +=
            oracle::edge_parity_bruteforce(g, VertexSet(mu)) ? -1 : 1;
      REQUIRE(symmetric_coefficients(g).values() == want);
    }
  }
  SECTION("invariants") {
    for (const auto& [name, g] : oracle::corpus()) {
      const auto c = symmetric_coefficients(g);
      CHECK(c[0] == 1);
      CHECK(c[1] == g.vertex_count());
      std::int64_t mass = 0;
      for (auto v : c.values()) mass += std::abs(v);
      CHECK(mass <= (std::int64_t{1} << g.vertex_count()));
    }
  }
  SECTION("invariant under vertex relabeling") {
    const Graph pet = named_graph("petersen");
    const auto base = symmetric_coefficients(pet).values();
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> perm(10);
      for (int i = 0; i < 10; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (int i = 9; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)], perm[eng() % static_cast<std::uint64_t>(i + 1)]);
      CHECK(symmetric_coefficients(relabeled(pet, perm)).values() == base);
    }
  }
}

TEST_CASE("symmetric_overlap") {
  const auto cpet = symmetric_coefficients(named_graph("petersen"));
  SECTION("petersen at (1/2, pi/2)") {
    const auto v = symmetric_overlap(cpet, 0.5, kPi / 2);
    CHECK(v.real() == Approx(-0.125).margin(1e-12));
    CHECK(v.imag() == Approx(0.125).margin(1e-12));
  }
  SECTION("p = 1 keeps only c_0") {
    const auto v = symmetric_overlap(cpet, 1.0, 1.234);
    CHECK(v.real() == Approx(std::exp2(-5.0)).margin(1e-15));
    CHECK(v.imag() == 0.0);
  }
  SECTION("five-ring closed form, random points") {
    const auto c5 = symmetric_coefficients(named_graph("ring:5"));
    std::mt19937_64 eng(11);
    for (int t = 0; t < 20; ++t) {
      const double p = oracle::next_unit(eng);
      const double phi = 2.0 * kPi * oracle::next_unit(eng);
      CHECK(symmetric_fidelity(c5, p, phi) == Approx(oracle::ring5_fidelity_closed_form(p, phi)).margin(1e-12));
    }
  }
  SECTION("agrees with product_overlap on uniform states, corpus n <= 10") {
    std::mt19937_64 eng(12);
    for (const auto& [name, g] : oracle::corpus()) {
      if (g.vertex_count() > 10) continue;
      INFO(name);
      const auto c = symmetric_coefficients(g);
      for (int t = 0; t < 20; ++t) {
        const double p = oracle::next_unit(eng);
        const double phi = 2.0 * kPi * oracle::next_unit(eng);
        const auto via_coeffs = symmetric_overlap(c, p, phi);
        const auto direct = product_overlap(g, ProductState::uniform(g.vertex_count(), p, phi));
        REQUIRE(std::abs(via_coeffs - direct) < 1e-12);
      }
    }
  }
  SECTION("rejects probabilities outside [0,1]") {
    CHECK_THROWS_AS(symmetric_overlap(cpet, 1.5, 0.0), std::invalid_argument);
  }
}

TEST_CASE("CoeffVector validates its invariants") {
  CHECK_THROWS_AS(CoeffVector({2, 1}), std::invalid_argument);        // c_0 != 1
  CHECK_THROWS_AS(CoeffVector({1, 3}), std::invalid_argument);        // c_1 != n
  CHECK_THROWS_AS(CoeffVector({1, 2, 9}), std::invalid_argument);     // mass over 2^n
  CHECK_THROWS_AS(CoeffVector({1}), std::invalid_argument);           // degree 0
  CHECK_NOTHROW(CoeffVector({1, 2, 1}));
}

TEST_CASE("ProductState") {
  SECTION("phases wrap into [0, 2 pi)") {
    const ProductState s({0.5}, {2.0 * kPi + 0.25});
    CHECK(s.phi(0) == Approx(0.25).margin(1e-12));
    const ProductState neg({0.5}, {-0.25});
    CHECK(neg.phi(0) == Approx(2.0 * kPi - 0.25).margin(1e-12));
  }
  SECTION("probabilities validated") {
    CHECK_THROWS_AS(ProductState({1.5}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ProductState({-0.1}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ProductState({0.5, 0.5}, {0.0}), std::invalid_argument);
    ProductState s = ProductState::uniform(3, 0.5, 0.0);
    CHECK_THROWS_AS(s.set_p(0, 2.0), std::invalid_argument);
  }
}
