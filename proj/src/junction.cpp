#include "chiralwalk/junction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "chiralwalk/error.hpp"

namespace chiralwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMarginalBand = 1e-8;

// sin((N+1) z) / sin(N z) - omega, strictly decreasing on each interval between poles.
double boundary_residual(int n, double omega, double zeta) {
  return std::sin((n + 1) * zeta) / std::sin(n * zeta) - omega;
}

// Bisection down to adjacent doubles on a decreasing function with f(lo) > 0 > f(hi).
template <class F>
double bisect_decreasing(F f, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// mu > 0 with sinh((N+1) mu) / sinh(N mu) = a, for a > (N+1)/N.
double solve_localized_mu(int n, double a) {
  auto ratio = [n](double mu) { return std::cosh(mu) + std::sinh(mu) / std::tanh(n * mu); };
  // 2 cosh(mu) = |eps| <= |omega| + 1 bounds the root; widen if rounding leaves it short.
  double hi = std::acosh(std::max(1.0, 0.5 * (a + 1.0))) + 1e-3;
  for (int k = 0; ratio(hi) < a; ++k) {
    if (k > 60) throw NumericalError("localized root: no bracket for omega = " + std::to_string(a));
    hi *= 2.0;
  }
  // Increasing in mu, so bisect the negated residual.
  return bisect_decreasing([&](double mu) { return a - ratio(mu); }, 0.0, hi);
}

}  // namespace

Complex unity_root(int k) {
  static const Complex roots[3] = {
      {1.0, 0.0}, {-0.5, std::numbers::sqrt3 / 2.0}, {-0.5, -std::numbers::sqrt3 / 2.0}};
  return roots[((k % 3) + 3) % 3];
}

Complex JunctionEigen::eigenvector_component(int nu, int l) {
  return unity_root(nu * l) / std::numbers::sqrt3;
}

JunctionEigen junction_eigenvalues(double theta) {
  JunctionEigen j;
  j.theta = theta;
  for (int nu = 1; nu <= 3; ++nu) {
    j.omegas[static_cast<std::size_t>(nu - 1)] = 2.0 * std::cos(2.0 * kPi * nu / 3.0 + theta);
  }
  return j;
}

int RootSolution::real_root_count() const {
  return static_cast<int>(zetas.size()) - (localized_index >= 0 ? 1 : 0);
}

RootSolution solve_zeta_roots(int n, double omega) {
  if (n < 2) throw InvalidSize("solve_zeta_roots: N must be >= 2");
  if (!std::isfinite(omega)) throw InvalidArgument("solve_zeta_roots: omega must be finite");
  RootSolution sol;
  sol.n_sites = n;
  sol.omega = omega;
  sol.zetas.resize(static_cast<std::size_t>(n));
  sol.energies.resize(static_cast<std::size_t>(n));
  const double threshold = (n + 1.0) / n;
  sol.marginal = std::abs(std::abs(omega) - threshold) < kMarginalBand;

  auto f = [n, omega](double z) { return boundary_residual(n, omega, z); };
  for (int m = 1; m <= n; ++m) {
    const auto slot = static_cast<std::size_t>(m - 1);
    const double lo = (m - 1) * kPi / n;
    const double hi = m * kPi / n;
    Complex zeta;
    if (m == 1 && omega >= threshold) {
      // Ratio tends to (N+1)/N at 0+, so no real root here; the state is localized.
      const double mu = omega > threshold ? solve_localized_mu(n, omega) : 0.0;
      zeta = {0.0, mu};
      sol.energies[slot] = 2.0 * std::cosh(mu);
      if (mu > 0.0) sol.localized_index = 0;
    } else if (m == n && omega <= -threshold) {
      const double mu = omega < -threshold ? solve_localized_mu(n, -omega) : 0.0;
      zeta = {kPi, mu};
      sol.energies[slot] = -2.0 * std::cosh(mu);
      if (mu > 0.0) sol.localized_index = n - 1;
    } else {
      const double z = bisect_decreasing(f, std::nextafter(lo, hi), std::nextafter(hi, lo));
      zeta = {z, 0.0};
      sol.energies[slot] = 2.0 * std::cos(z);
    }
    sol.zetas[slot] = zeta;
  }
  return sol;
}

HermitianMatrix build_effective_chain(int n, double omega) {
  if (n < 2) throw InvalidSize("build_effective_chain: N must be >= 2");
  HermitianMatrix h = HermitianMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = 1.0;
    h(i + 1, i) = 1.0;
  }
  h(n - 1, n - 1) = omega;
  return h;
}

AnalyticEigenstate effective_chain_eigenstate(int n, double omega, int eta) {
  if (eta < 1 || eta > n) throw InvalidArgument("effective_chain_eigenstate: eta out of range");
  const RootSolution roots = solve_zeta_roots(n, omega);
  const auto slot = static_cast<std::size_t>(eta - 1);
  AnalyticEigenstate st;
  st.eta = eta;
  st.zeta = roots.zetas[slot];
  st.energy = roots.energies[slot];
  st.localized = roots.localized_index == eta - 1;
  st.amplitudes.resize(n);
  const double mu = st.zeta.imag();
  for (int k = 1; k <= n; ++k) {
    double a;
    if (st.localized) {
      // sinh(k mu) / sinh(N mu), written to avoid overflow.
      a = std::exp(mu * (k - n)) * (-std::expm1(-2.0 * mu * k)) / (-std::expm1(-2.0 * mu * n));
      if (st.zeta.real() > 0.5 * kPi && (k % 2 != n % 2)) a = -a;
    } else if (mu == 0.0 && st.zeta.real() == 0.0) {
      a = k;  // marginal omega = (N+1)/N: linear profile
    } else if (mu == 0.0 && st.zeta.real() == kPi && roots.marginal) {
      a = (k % 2 == 0) ? k : -k;
    } else {
      a = std::sin(k * st.zeta.real());
    }
    st.amplitudes(k - 1) = a;
  }
  st.amplitudes.normalize();
  return st;
}

AnalyticEigenstate yjunction_eigenstate(int n, double theta, int nu, int eta) {
  if (nu < 1 || nu > 3) throw InvalidArgument("yjunction_eigenstate: nu must be 1, 2 or 3");
  const JunctionEigen j = junction_eigenvalues(theta);
  AnalyticEigenstate chain = effective_chain_eigenstate(n, j.omega(nu), eta);
  AnalyticEigenstate st = chain;
  st.nu = nu;
  st.amplitudes.resize(3 * n);
  for (int l = 1; l <= 3; ++l) {
    st.amplitudes.segment((l - 1) * n, n) = JunctionEigen::eigenvector_component(nu, l) * chain.amplitudes;
  }
  return st;
}

std::optional<AnalyticEigenstate> detect_edge_state(int n, double omega) {
  const RootSolution roots = solve_zeta_roots(n, omega);
  if (roots.localized_index < 0) return std::nullopt;
  return effective_chain_eigenstate(n, omega, roots.localized_index + 1);
}

JunctionDecomposition::JunctionDecomposition(int n, double theta)
    : n_sites_(n), junction_(junction_eigenvalues(theta)) {
  if (n < 2) throw InvalidSize("JunctionDecomposition: N must be >= 2");
  std::vector<std::optional<EigenSystem>> slots(3);
  {
    std::vector<std::jthread> workers;
    for (int nu = 1; nu <= 3; ++nu) {
      workers.emplace_back([&, nu] {
        slots[static_cast<std::size_t>(nu - 1)].emplace(
            eig_hermitian(build_effective_chain(n, junction_.omega(nu))));
      });
    }
  }
  for (auto& s : slots) effective_.push_back(std::move(*s));
}

QuantumState JunctionDecomposition::evolve(const QuantumState& psi0, double t) const {
  const PhasedGraph& g = psi0.graph();
  if (g.size() != static_cast<std::size_t>(3 * n_sites_) || g.chain_length(1) != n_sites_ ||
      g.chain_length(2) != n_sites_ || g.chain_length(3) != n_sites_) {
    throw InvalidArgument("decompose_evolution: state does not live on an N-site Y-junction");
  }
  for (int l = 2; l <= 3; ++l) {
    if (psi0.chain_amplitudes(l).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidArgument("decompose_evolution: initial state leaks off chain 1");
    }
  }
  const Eigen::VectorXcd chi0 = psi0.chain_amplitudes(1);
  std::array<Eigen::VectorXcd, 3> chi;
  for (int nu = 1; nu <= 3; ++nu) chi[static_cast<std::size_t>(nu - 1)] = effective(nu).apply(chi0, t);

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(3 * n_sites_);
  for (int l = 1; l <= 3; ++l) {
    Eigen::VectorXcd block = Eigen::VectorXcd::Zero(n_sites_);
    for (int nu = 1; nu <= 3; ++nu) block += unity_root(nu * (l - 1)) * chi[static_cast<std::size_t>(nu - 1)];
    block /= 3.0;
    const auto idx = g.chain_indices(l);
    for (int k = 0; k < n_sites_; ++k) out(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)])) = block(k);
  }
  return QuantumState(psi0.graph_ptr(), std::move(out));
}

QuantumState decompose_evolution(const QuantumState& psi0, double t, int n, double theta) {
  return JunctionDecomposition(n, theta).evolve(psi0, t);
}

std::vector<double> analytic_yjunction_spectrum(int n, double theta) {
  const JunctionEigen j = junction_eigenvalues(theta);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(3 * n));
  for (int nu = 1; nu <= 3; ++nu) {
    const auto roots = solve_zeta_roots(n, j.omega(nu));
    out.insert(out.end(), roots.energies.begin(), roots.energies.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SpectrumRow> spectrum_rows(int n, std::span<const double> thetas) {
  std::vector<SpectrumRow> rows;
  rows.reserve(thetas.size() * static_cast<std::size_t>(3 * n));
  for (double theta : thetas) {
    const JunctionEigen j = junction_eigenvalues(theta);
    for (int nu = 1; nu <= 3; ++nu) {
      const auto roots = solve_zeta_roots(n, j.omega(nu));
      for (int eta = 1; eta <= n; ++eta) {
        rows.push_back({theta, nu, eta, roots.energies[static_cast<std::size_t>(eta - 1)],
                        roots.localized_index == eta - 1});
      }
    }
  }
  return rows;
}

}  // namespace chiralwalk
