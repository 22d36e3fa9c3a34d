#pragma once

#include <vector>

#include "chiralwalk/evolution.hpp"
#include "chiralwalk/graph.hpp"

namespace chiralwalk {

// Per-site phases alpha_n defining the diagonal unitary C = diag(e^{-i alpha_n}).
// Defined up to a global constant; entries are reported in (-pi, pi].
struct GaugeVector {
  std::vector<double> alphas;  // flat-index order

  std::size_t size() const { return alphas.size(); }
  GaugeVector inverse() const;
};

// Gauge that removes every bond phase of a path graph: alpha at the first path site is 0 and
// alpha_{n+1} = alpha_n - theta_n along the path. Throws TopologyError for anything but a path.
GaugeVector gauge_phases_for_chain(const PhasedGraph& graph);

// C A C^H: entry (m, n) picks up e^{-i(alpha_m - alpha_n)}.
HermitianMatrix apply_gauge(const HermitianMatrix& target, const GaugeVector& gauge);
// C psi: amplitude n picks up e^{-i alpha_n}. Local densities are unchanged.
QuantumState apply_gauge(const QuantumState& target, const GaugeVector& gauge);

}  // namespace chiralwalk
