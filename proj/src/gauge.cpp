#include "chiralwalk/gauge.hpp"

#include <cmath>
#include <numbers>

#include "chiralwalk/error.hpp"

namespace chiralwalk {

namespace {

double reduce_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace

GaugeVector GaugeVector::inverse() const {
  GaugeVector g{alphas};
  for (auto& a : g.alphas) a = reduce_angle(-a);
  return g;
}

GaugeVector gauge_phases_for_chain(const PhasedGraph& graph) {
  const std::size_t n = graph.size();
  if (graph.edges().size() + 1 != n) {
    throw TopologyError("gauge: graph with " + std::to_string(n) + " sites and " +
                        std::to_string(graph.edges().size()) + " edges is not a path");
  }
  // Connectivity is a graph invariant, so n-1 edges and max degree 2 make it a path.
  struct Link {
    std::size_t other;
    double phase;  // phase of H[self, other]
  };
  std::vector<std::vector<Link>> adjacency(n);
  for (const auto& e : graph.edges()) {
    const std::size_t a = graph.index_of(e.from);
    const std::size_t b = graph.index_of(e.to);
    adjacency[a].push_back({b, e.phase});
    adjacency[b].push_back({a, -e.phase});
  }
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency[i].size() > 2) throw TopologyError("gauge: site of degree > 2, not a path");
    if (adjacency[i].size() <= 1 && start == n) start = i;
  }
  if (start == n) throw TopologyError("gauge: no path endpoint");

  GaugeVector g{std::vector<double>(n, 0.0)};
  std::vector<bool> seen(n, false);
  std::size_t current = start;
  seen[current] = true;
  double alpha = 0.0;
  for (std::size_t step = 1; step < n; ++step) {
    const Link* next = nullptr;
    for (const auto& link : adjacency[current]) {
      if (!seen[link.other]) next = &link;
    }
    if (!next) throw TopologyError("gauge: path walk stalled");
    alpha = reduce_angle(alpha - next->phase);
    current = next->other;
    seen[current] = true;
    g.alphas[current] = alpha;
  }
  return g;
}

HermitianMatrix apply_gauge(const HermitianMatrix& target, const GaugeVector& gauge) {
  const auto n = static_cast<std::size_t>(target.rows());
  if (target.cols() != target.rows() || gauge.size() != n) {
    throw InvalidArgument("apply_gauge: dimension mismatch");
  }
  Eigen::VectorXcd c(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) c(static_cast<Eigen::Index>(i)) = std::polar(1.0, -gauge.alphas[i]);
  return c.asDiagonal() * target * c.conjugate().asDiagonal();
}

QuantumState apply_gauge(const QuantumState& target, const GaugeVector& gauge) {
  if (gauge.size() != target.size()) throw InvalidArgument("apply_gauge: dimension mismatch");
  Eigen::VectorXcd out = target.amplitudes();
  for (std::size_t i = 0; i < gauge.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) *= std::polar(1.0, -gauge.alphas[i]);
  }
  return QuantumState(target.graph_ptr(), std::move(out));
}

}  // namespace chiralwalk
