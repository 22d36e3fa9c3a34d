#include "chiralwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>

#include <json.hpp>

#include "chiralwalk/error.hpp"

namespace chiralwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

void add_chain(std::vector<SiteId>& sites, std::vector<PhasedEdge>& edges, int chain, int n_sites) {
  for (int n = 1; n <= n_sites; ++n) sites.push_back({chain, n});
  for (int n = 1; n < n_sites; ++n) edges.push_back({{chain, n}, {chain, n + 1}, 1.0, 0.0});
}

void add_triangle(std::vector<PhasedEdge>& edges, std::vector<Junction>& junctions,
                  const std::array<SiteId, 3>& v, double theta) {
  for (int i = 0; i < 3; ++i) edges.push_back({v[i], v[(i + 1) % 3], 1.0, theta});
  junctions.push_back({v, theta});
}

}  // namespace

std::string to_string(Topology t) {
  switch (t) {
    case Topology::Chain: return "chain";
    case Topology::YJunction: return "y-junction";
    case Topology::YRing: return "y-ring";
    case Topology::BinaryTree: return "binary-tree";
    case Topology::Custom: return "custom";
  }
  return "custom";
}

Topology topology_from_string(const std::string& s) {
  if (s == "chain") return Topology::Chain;
  if (s == "y-junction") return Topology::YJunction;
  if (s == "y-ring") return Topology::YRing;
  if (s == "binary-tree") return Topology::BinaryTree;
  if (s == "custom") return Topology::Custom;
  throw InvalidArgument("unknown topology '" + s + "'");
}

PhasedGraph::PhasedGraph(std::vector<SiteId> sites, std::vector<PhasedEdge> edges,
                         Topology topology, std::vector<Junction> junctions)
    : sites_(std::move(sites)),
      edges_(std::move(edges)),
      topology_(topology),
      junctions_(std::move(junctions)) {
  if (sites_.empty()) throw InvalidSize("graph has no sites");
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!index_.emplace(sites_[i], i).second) {
      throw InvalidArgument("duplicate site (" + std::to_string(sites_[i].chain) + "," +
                            std::to_string(sites_[i].site) + ")");
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::vector<std::size_t>> adjacency(sites_.size());
  for (auto& e : edges_) {
    if (!contains(e.from) || !contains(e.to)) throw InvalidArgument("edge references unknown site");
    const std::size_t a = index_of(e.from);
    const std::size_t b = index_of(e.to);
    if (a == b) throw InvalidArgument("self-loop edge");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw InvalidArgument("duplicate edge between flat sites " + std::to_string(a) + " and " +
                            std::to_string(b));
    }
    if (!std::isfinite(e.amplitude) || !std::isfinite(e.phase)) {
      throw InvalidArgument("non-finite edge weight");
    }
    e.phase = wrap_phase(e.phase);
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }

  std::vector<bool> visited(sites_.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  visited[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adjacency[u]) {
      if (!visited[v]) {
        visited[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  if (reached != sites_.size()) throw TopologyError("graph is not connected");

  for (const auto& j : junctions_) {
    for (const auto& v : j.vertices) {
      if (!contains(v)) throw InvalidArgument("junction references unknown site");
    }
  }
}

std::size_t PhasedGraph::index_of(SiteId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InvalidArgument("no site (" + std::to_string(id.chain) + "," + std::to_string(id.site) +
                          ")");
  }
  return it->second;
}

std::vector<int> PhasedGraph::chains() const {
  std::set<int> labels;
  for (const auto& s : sites_) labels.insert(s.chain);
  return {labels.begin(), labels.end()};
}

std::vector<std::size_t> PhasedGraph::chain_indices(int chain) const {
  std::vector<std::size_t> out;
  for (auto it = index_.lower_bound({chain, std::numeric_limits<int>::min()});
       it != index_.end() && it->first.chain == chain; ++it) {
    out.push_back(it->second);
  }
  return out;
}

int PhasedGraph::chain_length(int chain) const {
  return static_cast<int>(chain_indices(chain).size());
}

std::vector<std::size_t> PhasedGraph::degrees() const {
  std::vector<std::size_t> deg(sites_.size(), 0);
  for (const auto& e : edges_) {
    ++deg[index_of(e.from)];
    ++deg[index_of(e.to)];
  }
  return deg;
}

PhasedGraph build_open_chain(int n_sites, std::span<const double> hoppings,
                             std::span<const double> phases) {
  if (n_sites < 2) throw InvalidSize("open chain needs N >= 2, got " + std::to_string(n_sites));
  const auto bonds = static_cast<std::size_t>(n_sites - 1);
  if (!hoppings.empty() && hoppings.size() != bonds) {
    throw InvalidArgument("hopping list has " + std::to_string(hoppings.size()) +
                          " entries, expected " + std::to_string(bonds));
  }
  if (!phases.empty() && phases.size() != bonds) {
    throw InvalidArgument("phase list has " + std::to_string(phases.size()) +
                          " entries, expected " + std::to_string(bonds));
  }
  std::vector<SiteId> sites;
  std::vector<PhasedEdge> edges;
  add_chain(sites, edges, 1, n_sites);
  for (std::size_t b = 0; b < bonds; ++b) {
    if (!hoppings.empty()) edges[b].amplitude = hoppings[b];
    if (!phases.empty()) edges[b].phase = phases[b];
  }
  return PhasedGraph(std::move(sites), std::move(edges), Topology::Chain);
}

PhasedGraph build_khalique_chain(int n_sites) {
  if (n_sites < 3) throw InvalidSize("Khalique chain needs N >= 3, got " + std::to_string(n_sites));
  std::vector<double> phases(static_cast<std::size_t>(n_sites - 1));
  for (int n = 2; n < n_sites; ++n) {
    phases[static_cast<std::size_t>(n - 1)] = (n - 1) * std::numbers::pi / (n_sites - 2);
  }
  return build_open_chain(n_sites, {}, phases);
}

PhasedGraph build_y_junction(int n_sites, double theta) {
  if (n_sites < 2) throw InvalidSize("Y-junction needs N >= 2, got " + std::to_string(n_sites));
  std::vector<SiteId> sites;
  std::vector<PhasedEdge> edges;
  std::vector<Junction> junctions;
  for (int l = 1; l <= 3; ++l) add_chain(sites, edges, l, n_sites);
  add_triangle(edges, junctions, {SiteId{1, n_sites}, SiteId{2, n_sites}, SiteId{3, n_sites}},
               theta);
  return PhasedGraph(std::move(sites), std::move(edges), Topology::YJunction, std::move(junctions));
}

PhasedGraph build_y_ring_composite(int n_sites, double theta) {
  if (n_sites < 3) throw InvalidSize("Y-ring composite needs N >= 3, got " + std::to_string(n_sites));
  std::vector<SiteId> sites;
  std::vector<PhasedEdge> edges;
  std::vector<Junction> junctions;
  for (int l = 1; l <= 4; ++l) add_chain(sites, edges, l, n_sites);
  add_triangle(edges, junctions, {SiteId{1, n_sites}, SiteId{2, n_sites}, SiteId{3, n_sites}},
               theta);
  // The ring's closing bond doubles as the second triangle's (4,1)->(4,N) edge.
  add_triangle(edges, junctions, {SiteId{1, 1}, SiteId{4, 1}, SiteId{4, n_sites}}, theta);
  return PhasedGraph(std::move(sites), std::move(edges), Topology::YRing, std::move(junctions));
}

PhasedGraph build_binary_tree(int depth, int n_sites, std::span<const double> junction_thetas) {
  if (depth < 1) throw InvalidSize("binary tree needs depth >= 1, got " + std::to_string(depth));
  if (n_sites < 2) throw InvalidSize("binary tree needs N >= 2, got " + std::to_string(n_sites));
  if (depth > 12) throw InvalidSize("binary tree depth " + std::to_string(depth) + " too large");
  const int n_junctions = (1 << depth) - 1;
  const int n_chains = (1 << (depth + 1)) - 1;
  if (static_cast<int>(junction_thetas.size()) != n_junctions) {
    throw InvalidArgument("binary tree of depth " + std::to_string(depth) + " needs " +
                          std::to_string(n_junctions) + " junction phases, got " +
                          std::to_string(junction_thetas.size()));
  }
  std::vector<SiteId> sites;
  std::vector<PhasedEdge> edges;
  std::vector<Junction> junctions;
  for (int c = 0; c < n_chains; ++c) add_chain(sites, edges, c, n_sites);
  for (int parent = 0; parent < n_junctions; ++parent) {
    // The root meets its junction at site N; deeper parents meet their lower junction at site 1.
    const SiteId top{parent, parent == 0 ? n_sites : 1};
    add_triangle(edges, junctions,
                 {top, SiteId{2 * parent + 1, n_sites}, SiteId{2 * parent + 2, n_sites}},
                 junction_thetas[static_cast<std::size_t>(parent)]);
  }
  return PhasedGraph(std::move(sites), std::move(edges), Topology::BinaryTree,
                     std::move(junctions));
}

PhasedGraph build_binary_tree(int depth, int n_sites, double theta) {
  if (depth < 1) throw InvalidSize("binary tree needs depth >= 1, got " + std::to_string(depth));
  if (depth > 12) throw InvalidSize("binary tree depth " + std::to_string(depth) + " too large");
  std::vector<double> thetas(static_cast<std::size_t>((1 << depth) - 1), theta);
  return build_binary_tree(depth, n_sites, thetas);
}

HermitianMatrix assemble_hamiltonian(const PhasedGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  HermitianMatrix h = HermitianMatrix::Zero(n, n);
  for (const auto& e : graph.edges()) {
    const auto a = static_cast<Eigen::Index>(graph.index_of(e.from));
    const auto b = static_cast<Eigen::Index>(graph.index_of(e.to));
    const Complex w = std::polar(e.amplitude, e.phase);
    h(a, b) = w;
    h(b, a) = std::conj(w);
  }
  if (max_hermiticity_error(h) > 1e-14) throw NumericalError("assembled Hamiltonian not Hermitian");
  return h;
}

double max_hermiticity_error(const HermitianMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

std::string graph_to_json(const PhasedGraph& graph, int indent) {
  nlohmann::json j;
  j["topology"] = to_string(graph.topology());
  auto& sites = j["sites"] = nlohmann::json::array();
  for (const auto& s : graph.sites()) sites.push_back({s.chain, s.site});
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({graph.index_of(e.from), graph.index_of(e.to), e.amplitude, e.phase});
  }
  return j.dump(indent);
}

PhasedGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidArgument(std::string("graph JSON: ") + err.what());
  }
  try {
    std::vector<SiteId> sites;
    for (const auto& s : j.at("sites")) sites.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    std::vector<PhasedEdge> edges;
    for (const auto& e : j.at("edges")) {
      const auto from = e.at(0).get<std::size_t>();
      const auto to = e.at(1).get<std::size_t>();
      if (from >= sites.size() || to >= sites.size()) {
        throw InvalidArgument("graph JSON: edge index out of range");
      }
      edges.push_back({sites[from], sites[to], e.at(2).get<double>(), e.at(3).get<double>()});
    }
    const auto topology = topology_from_string(j.value("topology", std::string("custom")));
    return PhasedGraph(std::move(sites), std::move(edges), topology);
  } catch (const nlohmann::json::exception& err) {
    throw InvalidArgument(std::string("graph JSON: ") + err.what());
  }
}

}  // namespace chiralwalk
