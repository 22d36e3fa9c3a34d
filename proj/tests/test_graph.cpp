#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <json.hpp>

#include "chiralwalk/error.hpp"
#include "chiralwalk/graph.hpp"

using namespace chiralwalk;

namespace {

constexpr double kPi = std::numbers::pi;

Complex entry(const HermitianMatrix& h, const PhasedGraph& g, SiteId a, SiteId b) {
  return h(static_cast<Eigen::Index>(g.index_of(a)), static_cast<Eigen::Index>(g.index_of(b)));
}

}  // namespace

TEST_CASE("open chain is tridiagonal with unit hoppings") {
  const PhasedGraph g = build_open_chain(6);
  CHECK(g.size() == 6);
  CHECK(g.edges().size() == 5);
  CHECK(g.topology() == Topology::Chain);
  const HermitianMatrix h = assemble_hamiltonian(g);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double expected = std::abs(i - j) == 1 ? 1.0 : 0.0;
      CHECK(h(i, j) == Complex(expected, 0.0));
    }
  }
}

TEST_CASE("chain hoppings and phases land on the bond and its conjugate") {
  const std::vector<double> j{1.0, 2.0, 0.5};
  const std::vector<double> th{0.3, -1.0, 7.0};
  const PhasedGraph g = build_open_chain(4, j, th);
  const HermitianMatrix h = assemble_hamiltonian(g);
  for (int n = 0; n < 3; ++n) {
    const Complex want = std::polar(j[static_cast<std::size_t>(n)], th[static_cast<std::size_t>(n)]);
    CHECK(std::abs(h(n, n + 1) - want) < 1e-15);
    CHECK(std::abs(h(n + 1, n) - std::conj(want)) < 1e-15);
  }
  for (const auto& e : g.edges()) {
    CHECK(e.phase >= 0.0);
    CHECK(e.phase < 2.0 * kPi);
  }
  CHECK_THROWS_AS(build_open_chain(4, std::vector<double>{1.0}), InvalidArgument);
  CHECK_THROWS_AS(build_open_chain(1), InvalidSize);
}

TEST_CASE("Khalique chain bond phases") {
  const PhasedGraph g = build_khalique_chain(4);
  const HermitianMatrix h = assemble_hamiltonian(g);
  CHECK(std::abs(h(0, 1) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(h(1, 2) - std::polar(1.0, kPi / 2.0)) < 1e-15);
  CHECK(std::abs(h(2, 3) - std::polar(1.0, kPi)) < 1e-15);
  CHECK_THROWS_AS(build_khalique_chain(2), InvalidSize);
}

TEST_CASE("Y-junction triangle orientation") {
  const int n = 7;
  const double theta = 0.4;
  const PhasedGraph g = build_y_junction(n, theta);
  CHECK(g.size() == 3 * n);
  CHECK(g.edges().size() == 3 * (n - 1) + 3);
  CHECK(g.chains() == std::vector<int>{1, 2, 3});
  const HermitianMatrix h = assemble_hamiltonian(g);
  const Complex e = std::polar(1.0, theta);
  CHECK(std::abs(entry(h, g, {1, n}, {2, n}) - e) < 1e-15);
  CHECK(std::abs(entry(h, g, {2, n}, {3, n}) - e) < 1e-15);
  CHECK(std::abs(entry(h, g, {3, n}, {1, n}) - e) < 1e-15);
  CHECK(std::abs(entry(h, g, {2, n}, {1, n}) - std::conj(e)) < 1e-15);
  CHECK(h.diagonal().cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(g.junctions().size() == 1);
  CHECK(g.junctions()[0].vertices[0] == SiteId{1, n});
  CHECK(g.chain_indices(2).size() == static_cast<std::size_t>(n));
  CHECK(g.site_at(g.chain_indices(2).back()) == SiteId{2, n});
}

TEST_CASE("Y+ring composite shape") {
  const int n = 9;
  const PhasedGraph g = build_y_ring_composite(n, kPi / 6.0);
  CHECK(g.size() == 4 * n);
  CHECK(g.edges().size() == 4 * n + 2);
  const auto deg = g.degrees();
  CHECK(deg[g.index_of({1, 1})] == 3);
  CHECK(deg[g.index_of({4, 1})] == 3);
  CHECK(deg[g.index_of({4, n})] == 3);
  CHECK(deg[g.index_of({2, 1})] == 1);
  const HermitianMatrix h = assemble_hamiltonian(g);
  const Complex e = std::polar(1.0, kPi / 6.0);
  CHECK(std::abs(entry(h, g, {1, 1}, {4, 1}) - e) < 1e-15);
  CHECK(std::abs(entry(h, g, {4, 1}, {4, n}) - e) < 1e-15);
  CHECK(std::abs(entry(h, g, {4, n}, {1, 1}) - e) < 1e-15);
}

TEST_CASE("binary tree layout") {
  const int n = 5;
  const std::vector<double> th{0.1, 0.2, 0.3};
  const PhasedGraph g = build_binary_tree(2, n, th);
  CHECK(g.chains() == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(g.size() == 7 * n);
  REQUIRE(g.junctions().size() == 3);
  CHECK(g.junctions()[0].vertices == std::array<SiteId, 3>{SiteId{0, n}, SiteId{1, n}, SiteId{2, n}});
  CHECK(g.junctions()[1].vertices == std::array<SiteId, 3>{SiteId{1, 1}, SiteId{3, n}, SiteId{4, n}});
  CHECK(g.junctions()[2].vertices == std::array<SiteId, 3>{SiteId{2, 1}, SiteId{5, n}, SiteId{6, n}});
  CHECK(g.junctions()[2].theta == doctest::Approx(0.3));
  CHECK_THROWS_AS(build_binary_tree(2, n, std::vector<double>{0.1}), InvalidArgument);
  CHECK_THROWS_AS(build_binary_tree(0, n, 0.0), InvalidArgument);

  // Depth one is the Y-junction up to chain labels.
  const HermitianMatrix tree = assemble_hamiltonian(build_binary_tree(1, n, 0.5));
  const HermitianMatrix y = assemble_hamiltonian(build_y_junction(n, 0.5));
  CHECK((tree - y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph validation") {
  const std::vector<SiteId> two{{1, 1}, {1, 2}};
  CHECK_THROWS_AS(PhasedGraph({}, {}, Topology::Custom), InvalidSize);
  CHECK_THROWS_AS(PhasedGraph({{1, 1}, {1, 1}}, {}, Topology::Custom), InvalidArgument);
  CHECK_THROWS_AS(PhasedGraph(two, {{{1, 1}, {1, 3}, 1.0, 0.0}}, Topology::Custom), InvalidArgument);
  CHECK_THROWS_AS(PhasedGraph(two, {{{1, 1}, {1, 1}, 1.0, 0.0}}, Topology::Custom), InvalidArgument);
  CHECK_THROWS_AS(PhasedGraph(two, {{{1, 1}, {1, 2}, 1.0, 0.0}, {{1, 2}, {1, 1}, 1.0, 0.0}},
                              Topology::Custom),
                  InvalidArgument);
  CHECK_THROWS_AS(PhasedGraph(two, {}, Topology::Custom), TopologyError);
  CHECK_THROWS_AS(PhasedGraph(two, {{{1, 1}, {1, 2}, 1.0, std::nan("")}}, Topology::Custom),
                  InvalidArgument);
  const PhasedGraph g(two, {{{1, 1}, {1, 2}, 1.0, -kPi / 2.0}}, Topology::Custom);
  CHECK(g.edges()[0].phase == doctest::Approx(1.5 * kPi));
  CHECK_THROWS_AS(g.index_of({2, 1}), InvalidArgument);
}

TEST_CASE("random phased graphs assemble exactly Hermitian matrices") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phase(-10.0, 10.0), amp(0.1, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial;
    std::vector<SiteId> sites;
    for (int s = 1; s <= n; ++s) sites.push_back({1, s});
    std::vector<PhasedEdge> edges;
    for (int s = 1; s < n; ++s) edges.push_back({{1, s}, {1, s + 1}, amp(rng), phase(rng)});
    edges.push_back({{1, 1}, {1, n}, amp(rng), phase(rng)});
    const HermitianMatrix h = assemble_hamiltonian(PhasedGraph(sites, edges, Topology::Custom));
    CHECK(max_hermiticity_error(h) == 0.0);
  }
}

TEST_CASE("graph JSON schema and round trip") {
  const PhasedGraph g = build_y_junction(4, 0.7);
  const auto j = nlohmann::json::parse(graph_to_json(g));
  CHECK(j.size() == 3);
  CHECK(j.at("topology") == "y-junction");
  CHECK(j.at("sites").size() == 12);
  CHECK(j.at("sites")[0] == nlohmann::json::array({1, 1}));
  REQUIRE(j.at("edges").size() == g.edges().size());
  for (const auto& e : j.at("edges")) {
    CHECK(e.size() == 4);
    CHECK(e[0].is_number_integer());
    CHECK(e[1].is_number_integer());
  }
  const PhasedGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.topology() == Topology::YJunction);
  CHECK((assemble_hamiltonian(back) - assemble_hamiltonian(g)).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(graph_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(graph_from_json(R"({"sites": [[1,1]], "edges": [[0,5,1,0]]})"), InvalidArgument);
  CHECK_THROWS_AS(graph_from_json(R"({"edges": []})"), InvalidArgument);
  CHECK_THROWS_AS(graph_from_json(R"({"sites": [[1,1]], "edges": [], "topology": "moebius"})"),
                  InvalidArgument);
}

TEST_CASE("topology names") {
  for (auto t : {Topology::Chain, Topology::YJunction, Topology::YRing, Topology::BinaryTree,
                 Topology::Custom}) {
    CHECK(topology_from_string(to_string(t)) == t);
  }
}
