#pragma once

// Directed transport through phased junctions: analytic chain densities, the complete-transport
// condition, theta sweeps, measurement timing and multi-junction routing.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chiralwalk/evolution.hpp"

namespace chiralwalk {

using ChainTriple = std::array<double, 3>;

struct TransportRecord {
  double theta = 0.0;
  double k0 = 0.0;
  std::optional<ChainTriple> numeric;
  std::optional<ChainTriple> analytic;
  double t_measure = 0.0;  // 0 for analytic-only records
};

// n_l = |sum_nu sigma^{nu (l-1)} e^{i delta_nu} / 3|^2, l = 1, 2, 3.
ChainTriple analytic_chain_densities(double k0, double theta);

// theta = (pi - k0 + 2 pi m) / 3 in [0, 2 pi), m = 0, 1, 2. Throws ConditionInapplicable for k0
// within 0.05 of 0 or pi (mod 2 pi).
std::array<double, 3> complete_transport_thetas(double k0);

// True when 3 theta + k0 = pi (mod 2 pi) within tol; the mirror case uses -theta.
bool satisfies_transport_condition(double k0, double theta, double tol = 1e-9);

// t = (N - n0 + 3 sigma) / v_g. Throws InvalidArgument when k0 is not in (0, pi) or when the
// packet cannot sit clear of the far end at that time: 3 sigma (1 + 1/sqrt 2) > N.
double first_collision_window(int n_sites, double n0, double sigma, double k0);
// Gaussian packets use the rule above; square packets use (N - lo + w/2) / v_g, w = hi - lo.
double first_collision_window(int n_sites, const WavePacketSpec& packet);

// Numeric Y-junction densities of chains 1..3 at the first-collision window.
ChainTriple numeric_chain_densities(int n_sites, double theta, const WavePacketSpec& packet);

enum class SweepMode { Numeric, Analytic, Both };

SweepMode sweep_mode_from_string(const std::string& s);

// Records in grid order. Numeric points are independent and run on up to `jobs` threads.
std::vector<TransportRecord> sweep_theta(int n_sites, const WavePacketSpec& packet,
                                         std::span<const double> theta_grid, SweepMode mode,
                                         int jobs = 1);

// n points spanning [lo, hi] inclusive.
std::vector<double> linear_grid(double lo, double hi, int n);

// ---- routing ------------------------------------------------------------------------------

// A packet travelling along `chain` toward site N (heading +1) or site 1 (heading -1).
struct RouteLeg {
  int chain = 0;
  int heading = 1;
  friend bool operator==(const RouteLeg&, const RouteLeg&) = default;
};

struct JunctionPassage {
  int junction = -1;  // index into PhasedGraph::junctions(), -1 for a free-end reflection
  SiteId arrival;
  SiteId departure;
  double arrival_time = 0.0;
};

// Deterministic route under complete transport at every junction. A free chain end reflects.
// Throws ConditionInapplicable at a junction whose phase satisfies neither orientation.
std::vector<RouteLeg> predict_route(const PhasedGraph& graph, RouteLeg start, double k0, int hops,
                                    std::vector<JunctionPassage>* passages = nullptr);

struct RouteCheckpoint {
  double t = 0.0;
  std::optional<int> predicted_chain;
  std::map<int, double> densities;
  bool followed = false;  // density on the predicted chain >= threshold
};

struct RoutingReport {
  std::string topology;
  int n_sites = 0;
  double k0 = 0.0;
  double threshold = 0.95;
  std::string path;
  std::optional<int> target_chain;
  bool condition_satisfied = true;
  bool breadth_first = false;  // theta = 0 tree: the split is the intended outcome
  std::vector<RouteCheckpoint> checkpoints;
  std::vector<JunctionPassage> passages;
  std::vector<std::string> warnings;

  bool success() const;  // every checkpoint followed (false when no route was predicted)
};

// Launches `packet` (heading toward site N of its chain) and samples the full evolution at
// t_k = (sum of traversed chain lengths) / v_g, k = 0..hops, i.e. with the packet mid-chain.
RoutingReport simulate_route(GraphPtr graph, const WavePacketSpec& packet, int hops,
                             double threshold = 0.95);

// Binary tree of the given depth; junction phases are +theta for L and -theta for R along
// `path`, +theta elsewhere. theta = 0 gives the breadth-first split.
RoutingReport tree_route_demo(int depth, int n_sites, double theta, double k0,
                              const std::string& path, double threshold = 0.95);

// Y+ring composite, packet launched on chain 3.
RoutingReport ring_route_demo(int n_sites, double theta, double k0, int hops = 7,
                              double threshold = 0.95);

std::string routing_report_to_json(const RoutingReport& report, int indent = 2);

}  // namespace chiralwalk
