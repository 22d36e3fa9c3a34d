#include "chiralwalk/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "chiralwalk/error.hpp"
#include "chiralwalk/junction.hpp"
#include "chiralwalk/scattering.hpp"

namespace chiralwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEndpointGuard = 0.05;

double wrap_to_pi(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

void require_inner_momentum(double k0, const char* who) {
  const double r = std::abs(wrap_to_pi(k0));
  if (!(r > kEndpointGuard && r < kPi - kEndpointGuard)) {
    throw ConditionInapplicable(std::string(who) + ": k0 too close to 0 or pi");
  }
}

int resolve_jobs(int jobs, std::size_t work) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(work, 1)));
}

}  // namespace

ChainTriple analytic_chain_densities(double k0, double theta) {
  if (!(k0 > 0.0 && k0 < kPi)) {
    throw InvalidArgument("analytic_chain_densities: k0 must lie in (0, pi)");
  }
  const JunctionEigen je = junction_eigenvalues(theta);
  std::array<Complex, 3> phases{};
  for (int nu = 1; nu <= 3; ++nu) {
    phases[static_cast<std::size_t>(nu - 1)] = std::polar(1.0, phase_shift(k0, je.omega(nu)));
  }
  ChainTriple n{};
  for (int l = 1; l <= 3; ++l) {
    Complex amp = 0.0;
    for (int nu = 1; nu <= 3; ++nu) {
      amp += unity_root(nu * (l - 1)) * phases[static_cast<std::size_t>(nu - 1)];
    }
    n[static_cast<std::size_t>(l - 1)] = std::norm(amp / 3.0);
  }
  return n;
}

std::array<double, 3> complete_transport_thetas(double k0) {
  require_inner_momentum(k0, "complete_transport_thetas");
  std::array<double, 3> out{};
  for (int m = 0; m < 3; ++m) {
    double th = std::fmod((kPi - k0 + kTwoPi * m) / 3.0, kTwoPi);
    if (th < 0.0) th += kTwoPi;
    out[static_cast<std::size_t>(m)] = th;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool satisfies_transport_condition(double k0, double theta, double tol) {
  return std::abs(wrap_to_pi(3.0 * theta + k0 - kPi)) <= tol;
}

double first_collision_window(int n_sites, double n0, double sigma, double k0) {
  if (n_sites < 2) throw InvalidSize("first_collision_window: N must be >= 2");
  if (!(k0 > 0.0 && k0 < kPi)) {
    throw InvalidArgument("first_collision_window: k0 must lie in (0, pi)");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("first_collision_window: sigma must be positive");
  if (3.0 * sigma * (1.0 + 1.0 / std::numbers::sqrt2) > n_sites) {
    throw InvalidArgument("first_collision_window: packet too wide for the chain length");
  }
  return (n_sites - n0 + 3.0 * sigma) / dispersion(k0).group_velocity;
}

double first_collision_window(int n_sites, const WavePacketSpec& packet) {
  if (packet.kind == PacketKind::Gaussian) {
    return first_collision_window(n_sites, packet.n0, packet.sigma, packet.k0);
  }
  if (!(packet.k0 > 0.0 && packet.k0 < kPi)) {
    throw InvalidArgument("first_collision_window: k0 must lie in (0, pi)");
  }
  const double w = packet.support_hi - packet.support_lo;
  return (n_sites - packet.support_lo + w / 2.0) / dispersion(packet.k0).group_velocity;
}

ChainTriple numeric_chain_densities(int n_sites, double theta, const WavePacketSpec& packet) {
  auto graph = std::make_shared<const PhasedGraph>(build_y_junction(n_sites, theta));
  const QuantumState psi0 = make_packet(graph, packet);
  const EigenSystem es = eig_hermitian(assemble_hamiltonian(*graph));
  const QuantumState psi = evolve(es, psi0, first_collision_window(n_sites, packet));
  return {chain_density(psi, 1), chain_density(psi, 2), chain_density(psi, 3)};
}

SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "numeric") return SweepMode::Numeric;
  if (s == "analytic") return SweepMode::Analytic;
  if (s == "both") return SweepMode::Both;
  throw InvalidArgument("unknown sweep mode '" + s + "'");
}

std::vector<TransportRecord> sweep_theta(int n_sites, const WavePacketSpec& packet,
                                         std::span<const double> grid, SweepMode mode, int jobs) {
  for (double th : grid) {
    if (!(th >= -kPi - 1e-12 && th <= kPi + 1e-12)) {
      throw InvalidArgument("sweep_theta: grid must lie within [-pi, pi]");
    }
  }
  std::vector<TransportRecord> records(grid.size());
  const bool numeric = mode != SweepMode::Analytic;
  const double t_measure = numeric ? first_collision_window(n_sites, packet) : 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    records[i].theta = grid[i];
    records[i].k0 = packet.k0;
    if (mode != SweepMode::Numeric) records[i].analytic = analytic_chain_densities(packet.k0, grid[i]);
  }
  if (!numeric) return records;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size() && !failed; i = next++) {
      try {
        records[i].numeric = numeric_chain_densities(n_sites, grid[i], packet);
        records[i].t_measure = t_measure;
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int n = resolve_jobs(jobs, grid.size());
    for (int w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw InvalidArgument("linear_grid: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

}  // namespace chiralwalk
