#include <cmath>
#include <numbers>

#include <json.hpp>

#include "chiralwalk/error.hpp"
#include "chiralwalk/transport.hpp"

namespace chiralwalk {

namespace {

SiteId leg_end(const PhasedGraph& g, const RouteLeg& leg) {
  return {leg.chain, leg.heading > 0 ? g.chain_length(leg.chain) : 1};
}

// Leg leaving from a chain end site, heading into the chain.
RouteLeg leg_from(const PhasedGraph& g, SiteId s) {
  const int len = g.chain_length(s.chain);
  if (s.site == 1) return {s.chain, +1};
  if (s.site == len) return {s.chain, -1};
  throw TopologyError("routing: junction vertex is not a chain end");
}

std::optional<std::pair<int, int>> find_vertex(const PhasedGraph& g, SiteId s) {
  const auto& js = g.junctions();
  for (std::size_t j = 0; j < js.size(); ++j) {
    for (int v = 0; v < 3; ++v) {
      if (js[j].vertices[static_cast<std::size_t>(v)] == s) return std::pair{static_cast<int>(j), v};
    }
  }
  return std::nullopt;
}

std::string json_site(const SiteId& s) {
  return std::to_string(s.chain) + ":" + std::to_string(s.site);
}

}  // namespace

std::vector<RouteLeg> predict_route(const PhasedGraph& g, RouteLeg start, double k0, int hops,
                                    std::vector<JunctionPassage>* passages) {
  if (hops < 0) throw InvalidArgument("predict_route: hops must be >= 0");
  if (start.heading != 1 && start.heading != -1) {
    throw InvalidArgument("predict_route: heading must be +1 or -1");
  }
  g.chain_length(start.chain);  // throws for an unknown chain
  std::vector<RouteLeg> legs{start};
  for (int h = 0; h < hops; ++h) {
    const RouteLeg& cur = legs.back();
    const SiteId end = leg_end(g, cur);
    JunctionPassage pass;
    pass.arrival = end;
    const auto hit = find_vertex(g, end);
    if (!hit) {
      pass.departure = end;
      legs.push_back({cur.chain, -cur.heading});
    } else {
      const Junction& j = g.junctions()[static_cast<std::size_t>(hit->first)];
      int step = 0;
      if (satisfies_transport_condition(k0, j.theta)) step = 1;
      else if (satisfies_transport_condition(k0, -j.theta)) step = 2;
      else throw ConditionInapplicable("predict_route: junction phase does not give complete transport");
      const SiteId next = j.vertices[static_cast<std::size_t>((hit->second + step) % 3)];
      pass.junction = hit->first;
      pass.departure = next;
      legs.push_back(leg_from(g, next));
    }
    if (passages) passages->push_back(pass);
  }
  return legs;
}

bool RoutingReport::success() const {
  if (!condition_satisfied || checkpoints.empty()) return false;
  for (const auto& c : checkpoints) {
    if (!c.followed) return false;
  }
  return true;
}

RoutingReport simulate_route(GraphPtr graph, const WavePacketSpec& packet, int hops,
                             double threshold) {
  if (hops < 0) throw InvalidArgument("simulate_route: hops must be >= 0");
  const PhasedGraph& g = *graph;
  const double vg = dispersion(packet.k0).group_velocity;
  if (!(vg > 0.0)) throw InvalidArgument("simulate_route: k0 must lie in (0, pi)");

  RoutingReport report;
  report.topology = to_string(g.topology());
  report.n_sites = g.chain_length(packet.chain);
  report.k0 = packet.k0;
  report.threshold = threshold;

  std::vector<RouteLeg> legs;
  try {
    legs = predict_route(g, {packet.chain, +1}, packet.k0, hops, &report.passages);
  } catch (const ConditionInapplicable& e) {
    report.condition_satisfied = false;
    report.passages.clear();
    report.warnings.emplace_back(e.what());
  }

  // Checkpoint k sits one full chain length of travel after checkpoint k-1.
  std::vector<double> times{0.0};
  for (int k = 1; k <= hops; ++k) {
    const int chain = legs.empty() ? packet.chain : legs[static_cast<std::size_t>(k - 1)].chain;
    times.push_back(times.back() + g.chain_length(chain) / vg);
  }
  const double centre = packet.kind == PacketKind::Gaussian
                            ? packet.n0
                            : 0.5 * (packet.support_lo + packet.support_hi);
  const double first_leg = g.chain_length(packet.chain) - centre;
  for (std::size_t p = 0; p < report.passages.size(); ++p) {
    report.passages[p].arrival_time = times[p] + first_leg / vg;
  }

  const QuantumState psi0 = make_packet(graph, packet);
  const EigenSystem es = eig_hermitian(assemble_hamiltonian(g));
  const std::vector<QuantumState> states = evolve_many(es, psi0, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    RouteCheckpoint cp;
    cp.t = times[k];
    cp.densities = chain_densities(states[k]);
    if (!legs.empty()) {
      cp.predicted_chain = legs[k].chain;
      cp.followed = cp.densities.at(legs[k].chain) >= threshold;
    }
    report.checkpoints.push_back(std::move(cp));
  }
  if (!report.condition_satisfied) {
    report.warnings.emplace_back("no directed route; reporting split densities");
  }
  return report;
}

RoutingReport tree_route_demo(int depth, int n_sites, double theta, double k0,
                              const std::string& path, double threshold) {
  if (depth < 1) throw InvalidSize("tree_route_demo: depth must be >= 1");
  if (static_cast<int>(path.size()) > depth) {
    throw InvalidArgument("tree_route_demo: path longer than the tree depth");
  }
  std::vector<double> thetas(static_cast<std::size_t>((1 << depth) - 1), theta);
  int node = 0;
  for (char c : path) {
    if (c != 'L' && c != 'R') throw InvalidArgument("tree_route_demo: path must use L and R");
    thetas[static_cast<std::size_t>(node)] = c == 'L' ? theta : -theta;
    node = 2 * node + (c == 'L' ? 1 : 2);
  }
  auto graph = std::make_shared<const PhasedGraph>(build_binary_tree(depth, n_sites, thetas));
  WavePacketSpec packet = WavePacketSpec::gaussian_default(n_sites, 0);
  packet.k0 = k0;
  RoutingReport report = simulate_route(graph, packet, static_cast<int>(path.size()), threshold);
  report.path = path;
  if (report.condition_satisfied) report.target_chain = node;
  if (theta == 0.0) {
    report.breadth_first = true;
    report.warnings.clear();
  }
  return report;
}

RoutingReport ring_route_demo(int n_sites, double theta, double k0, int hops, double threshold) {
  auto graph = std::make_shared<const PhasedGraph>(build_y_ring_composite(n_sites, theta));
  WavePacketSpec packet = WavePacketSpec::gaussian_default(n_sites, 3);
  packet.k0 = k0;
  RoutingReport report = simulate_route(graph, packet, hops, threshold);
  if (report.condition_satisfied && !report.checkpoints.empty()) {
    report.target_chain = report.checkpoints.back().predicted_chain;
  }
  return report;
}

std::string routing_report_to_json(const RoutingReport& r, int indent) {
  using nlohmann::json;
  json j;
  j["topology"] = r.topology;
  j["n_sites"] = r.n_sites;
  j["k0"] = r.k0;
  j["threshold"] = r.threshold;
  j["path"] = r.path;
  j["target_chain"] = r.target_chain ? json(*r.target_chain) : json(nullptr);
  j["condition_satisfied"] = r.condition_satisfied;
  j["mode"] = r.breadth_first ? "breadth-first" : r.condition_satisfied ? "directed" : "split";
  j["success"] = r.success();
  auto& cps = j["checkpoints"] = json::array();
  for (const auto& c : r.checkpoints) {
    json d = json::object();
    for (const auto& [chain, n] : c.densities) d[std::to_string(chain)] = n;
    cps.push_back({{"t", c.t},
                   {"predicted_chain", c.predicted_chain ? json(*c.predicted_chain) : json(nullptr)},
                   {"followed", c.followed},
                   {"densities", d}});
  }
  auto& js = j["junctions"] = json::array();
  for (std::size_t p = 0; p < r.passages.size(); ++p) {
    const auto& pass = r.passages[p];
    json branch = json::object();
    if (p + 1 < r.checkpoints.size()) {
      for (const auto& [chain, n] : r.checkpoints[p + 1].densities) branch[std::to_string(chain)] = n;
    }
    js.push_back({{"junction", pass.junction},
                  {"arrival", json_site(pass.arrival)},
                  {"departure", json_site(pass.departure)},
                  {"arrival_time", pass.arrival_time},
                  {"branch_densities", branch}});
  }
  j["warnings"] = r.warnings;
  return j.dump(indent);
}

}  // namespace chiralwalk
