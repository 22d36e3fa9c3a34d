#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chiralwalk/graph.hpp"

namespace chiralwalk {

// Full spectral decomposition H = V diag(values) V^H, eigenvalues ascending.
// Keeps a planar copy of V for the SIMD propagator kernels. Immutable and shareable.
class EigenSystem {
 public:
  EigenSystem(Eigen::VectorXd values, Eigen::MatrixXcd vectors);

  std::size_t dimension() const { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }

  // c = V^H psi
  Eigen::VectorXcd project(const Eigen::VectorXcd& psi) const;
  // V diag(e^{-i eps t}) c
  Eigen::VectorXcd propagate(const Eigen::VectorXcd& coefficients, double t) const;
  // e^{-iHt} psi
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double t) const;

  double max_residual(const HermitianMatrix& h) const;  // max_k ||H v_k - eps_k v_k||_inf
  double orthonormality_error() const;                  // max |V^H V - I|

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
  std::vector<double> planar_re_;
  std::vector<double> planar_im_;
};

// Dense Hermitian eigensolver. Throws InvalidArgument for non-square or non-Hermitian input
// (entrywise |H - H^H| above 1e-12 relative to max |H|), NumericalError if the solver fails.
EigenSystem eig_hermitian(const HermitianMatrix& h);

// Unit-norm amplitude vector over a graph's flat site index.
class QuantumState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Throws InvalidArgument on a dimension mismatch or if the norm is off by more than 1e-12.
  QuantumState(GraphPtr graph, Eigen::VectorXcd amplitudes);
  // Divides by the computed norm first.
  static QuantumState normalized(GraphPtr graph, Eigen::VectorXcd amplitudes);

  const PhasedGraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }

  Complex amplitude(SiteId id) const { return amplitudes_(static_cast<Eigen::Index>(graph_->index_of(id))); }
  double norm() const;
  Eigen::VectorXd densities() const;
  // Amplitudes of one chain in site order.
  Eigen::VectorXcd chain_amplitudes(int chain) const;

 private:
  GraphPtr graph_;
  Eigen::VectorXcd amplitudes_;
};

enum class PacketKind { Gaussian, Square };

// Initial wave packet on one chain: envelope times the ramp e^{-i k0 n}, so k0 in (0, pi) travels
// toward increasing site index with group velocity 2 sin k0.
struct WavePacketSpec {
  PacketKind kind = PacketKind::Gaussian;
  int chain = 1;
  double n0 = 100.0;     // Gaussian centre
  double sigma = 35.0;   // Gaussian width in sites
  int support_lo = 1;    // Square support, inclusive
  int support_hi = 1;
  double k0 = 1.5707963267948966;

  // Defaults used throughout: n0 = N/2, sigma = N/sqrt(32), k0 = pi/2, on chain `chain`.
  static WavePacketSpec gaussian_default(int n_sites, int chain = 1);
  // Square packet on n0 +/- N/4 with the same ramp.
  static WavePacketSpec square_default(int n_sites, int chain = 1);
};

QuantumState make_packet(GraphPtr graph, const WavePacketSpec& spec);

// e^{-iHt} psi0 using the spectral decomposition.
QuantumState evolve(const EigenSystem& es, const QuantumState& psi0, double t);

// States at several times, evaluated in parallel (jobs <= 0 means hardware concurrency).
std::vector<QuantumState> evolve_many(const EigenSystem& es, const QuantumState& psi0,
                                      std::span<const double> times, int jobs = 1);

// n_l = sum_n |phi_{l,n}|^2; throws InvalidArgument for an unknown chain.
double chain_density(const QuantumState& psi, int chain);
std::map<int, double> chain_densities(const QuantumState& psi);

// Density-weighted mean site and standard deviation on one chain.
struct ChainMoments {
  double weight = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};
ChainMoments chain_moments(const QuantumState& psi, int chain);

struct Dispersion {
  double energy;          // 2 cos k
  double group_velocity;  // 2 sin k, toward increasing site index
  double curvature;       // -2 cos k
};
Dispersion dispersion(double k);

}  // namespace chiralwalk
