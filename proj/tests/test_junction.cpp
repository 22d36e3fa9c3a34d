#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "chiralwalk/error.hpp"
#include "chiralwalk/junction.hpp"

using namespace chiralwalk;

namespace {

constexpr double kPi = std::numbers::pi;

HermitianMatrix triangle(double theta) {
  HermitianMatrix m = HermitianMatrix::Zero(3, 3);
  const Complex e = std::polar(1.0, theta);
  m(0, 1) = m(1, 2) = m(2, 0) = e;
  m(1, 0) = m(2, 1) = m(0, 2) = std::conj(e);
  return m;
}

double root_residual(int n, double omega, Complex zeta) {
  const Complex lhs = std::sin(static_cast<double>(n + 1) * zeta) - omega * std::sin(static_cast<double>(n) * zeta);
  return std::abs(lhs) / std::max(1.0, std::abs(std::sin(static_cast<double>(n) * zeta)));
}

}  // namespace

TEST_CASE("unity roots") {
  CHECK(unity_root(0) == Complex(1.0, 0.0));
  CHECK(unity_root(3) == Complex(1.0, 0.0));
  CHECK(unity_root(-1) == unity_root(2));
  CHECK(std::abs(unity_root(1) - std::polar(1.0, 2.0 * kPi / 3.0)) < 1e-15);
  CHECK(std::abs(unity_root(1) + unity_root(2) + unity_root(3)) < 1e-15);
}

TEST_CASE("junction eigenvalues against the 3x3 triangle") {
  for (double theta : {0.0, kPi / 6.0, 0.7, -2.0, 3.0}) {
    const JunctionEigen je = junction_eigenvalues(theta);
    std::vector<double> omegas(je.omegas.begin(), je.omegas.end());
    std::sort(omegas.begin(), omegas.end());
    const Eigen::VectorXd ev = eig_hermitian(triangle(theta)).values();
    for (int i = 0; i < 3; ++i) CHECK(ev(i) == doctest::Approx(omegas[static_cast<std::size_t>(i)]).epsilon(1e-12));
    for (int nu = 1; nu <= 3; ++nu) {
      Eigen::VectorXcd v(3);
      for (int l = 1; l <= 3; ++l) v(l - 1) = JunctionEigen::eigenvector_component(nu, l);
      CHECK((triangle(theta) * v - je.omega(nu) * v).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  const JunctionEigen pi6 = junction_eigenvalues(kPi / 6.0);
  CHECK(pi6.omega(1) == doctest::Approx(-std::sqrt(3.0)));
  CHECK(pi6.omega(2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(pi6.omega(3) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("boundary roots solve the root equation and match the effective-chain spectrum") {
  for (int n : {2, 3, 10, 57}) {
    const double thr = (n + 1.0) / n;
    for (double omega : {0.0, 0.5, 1.0, thr - 1e-3, thr + 1e-3, std::sqrt(3.0), -std::sqrt(3.0), -3.0, 7.0}) {
      const RootSolution r = solve_zeta_roots(n, omega);
      REQUIRE(r.zetas.size() == static_cast<std::size_t>(n));
      std::vector<double> energies = r.energies;
      for (std::size_t i = 0; i < r.zetas.size(); ++i) {
        const Complex z = r.zetas[i];
        CHECK(root_residual(n, omega, z) < 1e-9);
        CHECK(r.energies[i] == doctest::Approx((2.0 * std::cos(z)).real()).epsilon(1e-12));
        if (static_cast<int>(i) != r.localized_index) {
          CHECK(z.imag() == 0.0);
          CHECK(z.real() > kPi * static_cast<double>(i) / n);
          CHECK(z.real() < kPi * static_cast<double>(i + 1) / n);
        }
      }
      std::sort(energies.begin(), energies.end());
      const Eigen::VectorXd ev = eig_hermitian(build_effective_chain(n, omega)).values();
      for (int i = 0; i < n; ++i) CHECK(ev(i) == doctest::Approx(energies[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }
  }
}

TEST_CASE("edge-state threshold") {
  for (int n : {10, 50, 200}) {
    const double thr = (n + 1.0) / n;
    for (double omega : {thr * 0.999, -thr * 0.999, thr * 1.001, -thr * 1.001, 0.2, 2.5}) {
      const RootSolution r = solve_zeta_roots(n, omega);
      const bool beyond = std::abs(omega) > thr;
      CHECK(r.real_root_count() == (beyond ? n - 1 : n));
      CHECK((r.localized_index >= 0) == beyond);
      if (beyond) CHECK(r.localized_index == (omega > 0 ? 0 : n - 1));
    }
    const RootSolution edge = solve_zeta_roots(n, thr);
    CHECK(edge.marginal);
    CHECK(edge.real_root_count() == n);
    CHECK(edge.energies[0] == doctest::Approx(2.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(solve_zeta_roots(1, 0.3), InvalidSize);
}

TEST_CASE("analytic eigenstates satisfy the eigen-equation") {
  for (int n : {5, 40}) {
    for (double omega : {0.0, 0.9, (n + 1.0) / n, std::sqrt(3.0), -2.2, 25.0}) {
      const HermitianMatrix h = build_effective_chain(n, omega);
      for (int eta = 1; eta <= n; ++eta) {
        const AnalyticEigenstate s = effective_chain_eigenstate(n, omega, eta);
        CHECK(s.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((h * s.amplitudes - s.energy * s.amplitudes).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(effective_chain_eigenstate(5, 0.0, 0), InvalidArgument);
  CHECK_THROWS_AS(effective_chain_eigenstate(5, 0.0, 6), InvalidArgument);
}

TEST_CASE("Y-junction eigenstates from the Z3 reduction") {
  const int n = 12;
  for (double theta : {0.0, kPi / 6.0, 0.7}) {
    const HermitianMatrix h = assemble_hamiltonian(build_y_junction(n, theta));
    for (int nu = 1; nu <= 3; ++nu) {
      for (int eta : {1, 5, n}) {
        const AnalyticEigenstate s = yjunction_eigenstate(n, theta, nu, eta);
        REQUIRE(s.amplitudes.size() == 3 * n);
        CHECK((h * s.amplitudes - s.energy * s.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("edge state detection") {
  CHECK_FALSE(detect_edge_state(30, 1.0).has_value());
  const auto s = detect_edge_state(30, std::sqrt(3.0));
  REQUIRE(s.has_value());
  CHECK(s->localized);
  CHECK(s->energy == doctest::Approx(std::sqrt(3.0) + 1.0 / std::sqrt(3.0)).epsilon(1e-9));
  // Weight sits at the junction end.
  CHECK(std::norm(s->amplitudes(29)) > 0.5);
  CHECK(std::norm(s->amplitudes(0)) < 1e-12);
  const auto neg = detect_edge_state(30, -std::sqrt(3.0));
  REQUIRE(neg.has_value());
  CHECK(neg->energy < -2.0);
}

TEST_CASE("spectral union and decomposition on small sizes") {
  for (int n : {4, 25}) {
    for (double theta : {0.0, kPi / 6.0, 0.7}) {
      const Eigen::VectorXd full = eig_hermitian(assemble_hamiltonian(build_y_junction(n, theta))).values();
      const std::vector<double> joined = analytic_yjunction_spectrum(n, theta);
      REQUIRE(joined.size() == static_cast<std::size_t>(3 * n));
      for (int i = 0; i < 3 * n; ++i) CHECK(full(i) == doctest::Approx(joined[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }
  }
  const int n = 30;
  auto g = std::make_shared<const PhasedGraph>(build_y_junction(n, 0.7));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3 * n);
  for (std::size_t i : g->chain_indices(1)) v(static_cast<Eigen::Index>(i)) = Complex(nd(rng), nd(rng));
  const QuantumState psi0 = QuantumState::normalized(g, v);
  const EigenSystem es = eig_hermitian(assemble_hamiltonian(*g));
  for (double t : {0.0, 3.0, 41.0}) {
    const QuantumState a = decompose_evolution(psi0, t, n, 0.7);
    CHECK((a.amplitudes() - evolve(es, psi0, t).amplitudes()).cwiseAbs().maxCoeff() < 1e-11);
  }
  Eigen::VectorXcd off = v;
  off(static_cast<Eigen::Index>(g->index_of({2, 3}))) = 1.0;
  CHECK_THROWS_AS(decompose_evolution(QuantumState::normalized(g, off), 1.0, n, 0.7), InvalidArgument);
  CHECK_THROWS_AS(decompose_evolution(psi0, 1.0, n + 1, 0.7), InvalidArgument);
}

TEST_CASE("spectrum rows") {
  const std::vector<double> thetas{-kPi, 0.0, kPi / 6.0};
  const auto rows = spectrum_rows(20, thetas);
  CHECK(rows.size() == 3u * 60u);
  std::size_t edges = 0;
  for (const auto& r : rows) {
    if (r.is_edge_state) {
      ++edges;
      CHECK(std::abs(r.energy) > 2.0);
    }
  }
  // theta = pi/6 has |omega| = sqrt 3 on two branches; theta = 0 and -pi have omega = 2 on one.
  CHECK(edges == 4);
}
