#pragma once

// Closed-form structure of the Y-junction: the Z3 reduction of the triangle, the boundary root
// equation sin((N+1) zeta) / sin(N zeta) = omega, eigenstates, and the split of the full evolution
// into three effective-chain evolutions.

#include <array>
#include <optional>
#include <vector>

#include "chiralwalk/evolution.hpp"
#include "chiralwalk/graph.hpp"

namespace chiralwalk {

// sigma^k with sigma = e^{2 pi i / 3}, as exact constants (k taken mod 3).
Complex unity_root(int k);

struct JunctionEigen {
  double theta = 0.0;
  std::array<double, 3> omegas{};  // omega_nu = 2 cos(2 pi nu / 3 + theta), nu = 1, 2, 3

  double omega(int nu) const { return omegas.at(static_cast<std::size_t>(nu - 1)); }
  // Junction eigenvector component on chain l: e^{2 pi i nu l / 3} / sqrt(3).
  static Complex eigenvector_component(int nu, int l);
};

JunctionEigen junction_eigenvalues(double theta);

struct RootSolution {
  int n_sites = 0;
  double omega = 0.0;
  // zetas[eta-1] lies in ((eta-1) pi / N, eta pi / N) when real. A localized root replaces the
  // first interval (zeta = i mu, omega > 0) or the last one (zeta = pi + i mu, omega < 0).
  std::vector<Complex> zetas;
  std::vector<double> energies;  // 2 cos zeta
  int localized_index = -1;      // 0-based position of the non-real root, -1 if none
  bool marginal = false;         // |omega| within 1e-8 of (N+1)/N

  int real_root_count() const;
};

RootSolution solve_zeta_roots(int n_sites, double omega);

// Open N-site chain with unit hoppings and diagonal omega on site N.
HermitianMatrix build_effective_chain(int n_sites, double omega);

struct AnalyticEigenstate {
  int nu = 0;  // 0 for a bare effective chain
  int eta = 0;
  Complex zeta;
  double energy = 0.0;
  bool localized = false;
  Eigen::VectorXcd amplitudes;  // unit norm; N entries for a chain, 3N for the Y-junction
};

// Eigenstate eta (1-based) of build_effective_chain(N, omega), amplitudes proportional to sin(n zeta).
AnalyticEigenstate effective_chain_eigenstate(int n_sites, double omega, int eta);
// Full Y-junction eigenstate phi_{l,n} = sigma^{nu l} chi_n / sqrt(3), flat order (l-1) N + n - 1.
AnalyticEigenstate yjunction_eigenstate(int n_sites, double theta, int nu, int eta);
// The localized boundary state, present iff |omega| > (N+1)/N.
std::optional<AnalyticEigenstate> detect_edge_state(int n_sites, double omega);

// Precomputed effective-chain propagators for one (N, theta).
class JunctionDecomposition {
 public:
  JunctionDecomposition(int n_sites, double theta);

  int n_sites() const { return n_sites_; }
  const JunctionEigen& junction() const { return junction_; }
  const EigenSystem& effective(int nu) const { return effective_.at(static_cast<std::size_t>(nu - 1)); }

  // psi(t) = sum_l P_l sum_nu sigma^{nu (l-1)} chi^nu(t) / 3 for psi0 = P_1 chi0.
  QuantumState evolve(const QuantumState& psi0, double t) const;

 private:
  int n_sites_;
  JunctionEigen junction_;
  std::vector<EigenSystem> effective_;
};

QuantumState decompose_evolution(const QuantumState& psi0, double t, int n_sites, double theta);

// Sorted union of the three effective-chain spectra (from the analytic roots).
std::vector<double> analytic_yjunction_spectrum(int n_sites, double theta);

struct SpectrumRow {
  double theta;
  int nu;
  int eta;
  double energy;
  bool is_edge_state;
};
std::vector<SpectrumRow> spectrum_rows(int n_sites, std::span<const double> thetas);

}  // namespace chiralwalk
