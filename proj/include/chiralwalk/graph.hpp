#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chiralwalk {

using Complex = std::complex<double>;

// Dense complex operator; Hermiticity is checked where it matters (assembly, eigensolve).
using HermitianMatrix = Eigen::MatrixXcd;

// Wannier-basis label |chain, site>, sites counted from 1.
struct SiteId {
  int chain = 1;
  int site = 1;

  auto operator<=>(const SiteId&) const = default;
};

// One undirected bond. H[from, to] = amplitude * e^{i phase}; the partner entry is the conjugate.
struct PhasedEdge {
  SiteId from;
  SiteId to;
  double amplitude = 1.0;
  double phase = 0.0;  // reduced to [0, 2pi)
};

enum class Topology { Chain, YJunction, YRing, BinaryTree, Custom };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

// Phased triangle joining three leg ends; orientation vertices[0] -> [1] -> [2] -> [0] carries +theta.
struct Junction {
  std::array<SiteId, 3> vertices;
  double theta = 0.0;
};

// Immutable phased graph. Flat indices follow the order of `sites`; builders lay sites out in
// contiguous per-chain blocks so (l, n) on an N-site chain block maps to block_start + n - 1.
class PhasedGraph {
 public:
  PhasedGraph(std::vector<SiteId> sites, std::vector<PhasedEdge> edges, Topology topology,
              std::vector<Junction> junctions = {});

  std::size_t size() const { return sites_.size(); }
  const std::vector<SiteId>& sites() const { return sites_; }
  const std::vector<PhasedEdge>& edges() const { return edges_; }
  const std::vector<Junction>& junctions() const { return junctions_; }
  Topology topology() const { return topology_; }

  std::size_t index_of(SiteId id) const;
  bool contains(SiteId id) const { return index_.count(id) != 0; }
  const SiteId& site_at(std::size_t flat) const { return sites_.at(flat); }

  // Chain labels in ascending order.
  std::vector<int> chains() const;
  // Flat indices of a chain's sites, ordered by site number.
  std::vector<std::size_t> chain_indices(int chain) const;
  int chain_length(int chain) const;

  std::vector<std::size_t> degrees() const;

 private:
  std::vector<SiteId> sites_;
  std::vector<PhasedEdge> edges_;
  Topology topology_;
  std::vector<Junction> junctions_;
  std::map<SiteId, std::size_t> index_;
};

using GraphPtr = std::shared_ptr<const PhasedGraph>;

// Open chain on sites (1,1)..(1,N); bond n carries hoppings[n-1] * e^{i phases[n-1]}.
// Empty lists mean J = 1, theta = 0.
PhasedGraph build_open_chain(int n_sites, std::span<const double> hoppings = {},
                             std::span<const double> phases = {});

// Chain whose bond n (joining n and n+1) has phase 0 for n = 1 and (n-1) pi / (N-2) otherwise.
PhasedGraph build_khalique_chain(int n_sites);

// Three N-site chains (labels 1..3) whose site-N ends form a triangle
// (1,N)->(2,N)->(3,N)->(1,N), each bond J e^{i theta}.
PhasedGraph build_y_junction(int n_sites, double theta);

// Y-junction plus an N-site ring (chain 4). Site (1,1) and ring sites (4,1), (4,N) form a second
// triangle with the same orientation convention; the ring bond (4,1)-(4,N) is that triangle's edge.
PhasedGraph build_y_ring_composite(int n_sites, double theta);

// Rooted binary tree of N-site chains. Chains are numbered breadth-first from 0 (root); chain c has
// children 2c+1 and 2c+2. The root and every child join their upper junction at site N, children join
// their own lower junction at site 1. `junction_thetas` is indexed by the parent chain of each junction
// (breadth-first) and must hold 2^depth - 1 values.
PhasedGraph build_binary_tree(int depth, int n_sites, std::span<const double> junction_thetas);
PhasedGraph build_binary_tree(int depth, int n_sites, double theta);

// Dense Hamiltonian with zero diagonal; asserts Hermiticity to 1e-14.
HermitianMatrix assemble_hamiltonian(const PhasedGraph& graph);

double max_hermiticity_error(const HermitianMatrix& h);

// {"sites": [[chain,site],...], "edges": [[from,to,J,theta],...], "topology": "..."}
std::string graph_to_json(const PhasedGraph& graph, int indent = -1);
PhasedGraph graph_from_json(const std::string& text);

}  // namespace chiralwalk
