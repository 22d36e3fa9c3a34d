#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "chiralwalk/cli.hpp"
#include "chiralwalk/gauge.hpp"
#include "chiralwalk/junction.hpp"
#include "chiralwalk/scattering.hpp"

namespace chiralwalk::cli {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult finish(std::string name, double residual, double tol) {
  return {std::move(name), residual <= tol, residual, tol};
}

CheckResult gauge_covariance(int n, int samples) {
  auto chiral = std::make_shared<const PhasedGraph>(build_khalique_chain(n));
  auto plain = std::make_shared<const PhasedGraph>(build_open_chain(n));
  const GaugeVector gauge = gauge_phases_for_chain(*chiral);
  const QuantumState psi0 = make_packet(chiral, WavePacketSpec::gaussian_default(n));
  const QuantumState phi0(plain, apply_gauge(psi0, gauge).amplitudes());
  const EigenSystem es_chiral = eig_hermitian(assemble_hamiltonian(*chiral));
  const EigenSystem es_plain = eig_hermitian(assemble_hamiltonian(*plain));
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = 4.0 * n * k / samples;
    const Eigen::VectorXd a = evolve(es_chiral, psi0, t).densities();
    const Eigen::VectorXd b = evolve(es_plain, phi0, t).densities();
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  return finish("gauge-covariance N=" + std::to_string(n), worst, 1e-12);
}

CheckResult spectral_union(int n, double theta, bool corrupt) {
  HermitianMatrix h = assemble_hamiltonian(build_y_junction(n, theta));
  if (corrupt) h(0, 0) += 1e-3;
  const Eigen::VectorXd full = eig_hermitian(h).values();
  const std::vector<double> joined = analytic_yjunction_spectrum(n, theta);
  double worst = 0.0;
  for (std::size_t i = 0; i < joined.size(); ++i) {
    worst = std::max(worst, std::abs(full(static_cast<Eigen::Index>(i)) - joined[i]));
  }
  return finish("spectral-union N=" + std::to_string(n) + " theta=" + std::to_string(theta), worst,
                1e-9);
}

CheckResult decomposition_identity(int n, double theta, std::uint64_t seed) {
  auto graph = std::make_shared<const PhasedGraph>(build_y_junction(n, theta));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(3 * n);
  for (std::size_t idx : graph->chain_indices(1)) {
    amps(static_cast<Eigen::Index>(idx)) = Complex(gauss(rng), gauss(rng));
  }
  const QuantumState psi0 = QuantumState::normalized(graph, std::move(amps));
  const EigenSystem es = eig_hermitian(assemble_hamiltonian(*graph));
  const JunctionDecomposition dec(n, theta);
  double worst = 0.0;
  for (double t : {5.0, 37.0, 120.0}) {
    const Eigen::VectorXcd diff = evolve(es, psi0, t).amplitudes() - dec.evolve(psi0, t).amplitudes();
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return finish("decomposition-identity N=" + std::to_string(n), worst, 1e-10);
}

CheckResult delta_beta_identity() {
  double worst = 0.0;
  for (int i = 1; i < 20; ++i) {
    const double k0 = 0.1 + (kPi - 0.2) * i / 20.0;
    for (int j = 0; j <= 20; ++j) {
      ScatteringParams p;
      p.k0 = k0;
      p.omega = -3.0 + 0.3 * j;
      const double r = std::remainder(p.delta() + 2.0 * p.beta(), 2.0 * kPi);
      worst = std::max(worst, std::abs(r));
    }
  }
  return finish("delta=-2beta", worst, 1e-12);
}

CheckResult quasi_periodicity(int n) {
  const ScatteringParams p = ScatteringParams::defaults(n, std::sqrt(3.0));
  const Complex shift = std::polar(1.0, p.delta());
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double T = 0.3 + 0.7 * i;
    worst = std::max(worst, std::abs(greens_analytic(T + 2.0 * kPi, p) / shift - greens_analytic(T, p)));
  }
  return finish("quasi-periodicity N=" + std::to_string(n), worst, 1e-10);
}

}  // namespace

std::vector<CheckResult> selftest(const SelftestOptions& o) {
  std::vector<CheckResult> out;
  const int n = o.quick ? 60 : 200;
  out.push_back(gauge_covariance(n, o.quick ? 10 : 50));
  const std::vector<int> sizes = o.quick ? std::vector<int>{60} : std::vector<int>{50, 200};
  for (int size : sizes) {
    for (double theta : {0.0, kPi / 6.0, 0.7}) out.push_back(spectral_union(size, theta, o.corrupt_hamiltonian));
  }
  out.push_back(decomposition_identity(60, 0.7, o.seed));
  out.push_back(delta_beta_identity());
  out.push_back(quasi_periodicity(n));
  return out;
}

}  // namespace chiralwalk::cli
