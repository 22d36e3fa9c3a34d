#include "chiralwalk/evolution.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>

#include "chiralwalk/error.hpp"
#include "chiralwalk/kernels.hpp"

namespace chiralwalk {

namespace {

double plain_norm(const Eigen::VectorXcd& v) {
  const auto n = static_cast<std::size_t>(v.size());
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = v(static_cast<Eigen::Index>(i)).real();
    im[i] = v(static_cast<Eigen::Index>(i)).imag();
  }
  return std::sqrt(kernels::sum_abs2({re, im}));
}

}  // namespace

QuantumState::QuantumState(GraphPtr graph, Eigen::VectorXcd amplitudes)
    : graph_(std::move(graph)), amplitudes_(std::move(amplitudes)) {
  if (!graph_) throw InvalidArgument("QuantumState: null graph");
  if (static_cast<std::size_t>(amplitudes_.size()) != graph_->size()) {
    throw InvalidArgument("QuantumState: " + std::to_string(amplitudes_.size()) +
                          " amplitudes for a graph with " + std::to_string(graph_->size()) +
                          " sites");
  }
  const double n = norm();
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw InvalidArgument("QuantumState: norm " + std::to_string(n) + " is not 1");
  }
}

QuantumState QuantumState::normalized(GraphPtr graph, Eigen::VectorXcd amplitudes) {
  const double n = plain_norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("QuantumState: zero or non-finite vector");
  amplitudes /= n;
  return QuantumState(std::move(graph), std::move(amplitudes));
}

double QuantumState::norm() const { return plain_norm(amplitudes_); }

Eigen::VectorXd QuantumState::densities() const {
  const std::size_t n = size();
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = amplitudes_(static_cast<Eigen::Index>(i)).real();
    im[i] = amplitudes_(static_cast<Eigen::Index>(i)).imag();
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  kernels::abs2({re, im}, std::span<double>(out.data(), n));
  return out;
}

Eigen::VectorXcd QuantumState::chain_amplitudes(int chain) const {
  const auto idx = graph_->chain_indices(chain);
  if (idx.empty()) throw InvalidArgument("no chain " + std::to_string(chain));
  Eigen::VectorXcd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = amplitudes_(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

WavePacketSpec WavePacketSpec::gaussian_default(int n_sites, int chain) {
  WavePacketSpec spec;
  spec.kind = PacketKind::Gaussian;
  spec.chain = chain;
  spec.n0 = n_sites / 2.0;
  spec.sigma = n_sites / std::sqrt(32.0);
  spec.k0 = std::numbers::pi / 2.0;
  return spec;
}

WavePacketSpec WavePacketSpec::square_default(int n_sites, int chain) {
  WavePacketSpec spec;
  spec.kind = PacketKind::Square;
  spec.chain = chain;
  spec.support_lo = n_sites / 2 - n_sites / 4;
  spec.support_hi = n_sites / 2 + n_sites / 4;
  spec.n0 = 0.5 * (spec.support_lo + spec.support_hi);
  spec.k0 = std::numbers::pi / 2.0;
  return spec;
}

QuantumState make_packet(GraphPtr graph, const WavePacketSpec& spec) {
  if (!graph) throw InvalidArgument("make_packet: null graph");
  const auto idx = graph->chain_indices(spec.chain);
  if (idx.empty()) throw InvalidArgument("make_packet: no chain " + std::to_string(spec.chain));
  const int length = static_cast<int>(idx.size());
  if (!std::isfinite(spec.k0) || spec.k0 <= -std::numbers::pi || spec.k0 > std::numbers::pi) {
    throw InvalidArgument("make_packet: k0 must lie in (-pi, pi]");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(graph->size()));
  if (spec.kind == PacketKind::Gaussian) {
    if (!(spec.sigma > 0.0)) throw InvalidArgument("make_packet: sigma must be positive");
    if (!(spec.n0 >= 1.0 && spec.n0 <= length)) {
      throw InvalidArgument("make_packet: centre outside chain");
    }
    for (int n = 1; n <= length; ++n) {
      const double x = (n - spec.n0) / spec.sigma;
      amps(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(n - 1)])) =
          std::polar(std::exp(-0.5 * x * x), -spec.k0 * n);
    }
  } else {
    if (spec.support_lo < 1 || spec.support_hi > length || spec.support_lo > spec.support_hi) {
      throw InvalidArgument("make_packet: square support outside chain");
    }
    for (int n = spec.support_lo; n <= spec.support_hi; ++n) {
      amps(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(n - 1)])) =
          std::polar(1.0, -spec.k0 * n);
    }
  }
  return QuantumState::normalized(std::move(graph), std::move(amps));
}

QuantumState evolve(const EigenSystem& es, const QuantumState& psi0, double t) {
  if (es.dimension() != psi0.size()) {
    throw InvalidArgument("evolve: eigensystem dimension " + std::to_string(es.dimension()) +
                          " does not match state dimension " + std::to_string(psi0.size()));
  }
  return QuantumState(psi0.graph_ptr(), es.apply(psi0.amplitudes(), t));
}

std::vector<QuantumState> evolve_many(const EigenSystem& es, const QuantumState& psi0,
                                      std::span<const double> times, int jobs) {
  if (es.dimension() != psi0.size()) throw InvalidArgument("evolve_many: dimension mismatch");
  const Eigen::VectorXcd coeffs = es.project(psi0.amplitudes());
  std::vector<std::optional<QuantumState>> slots(times.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < times.size(); i = next++) {
      slots[i].emplace(psi0.graph_ptr(), es.propagate(coeffs, times[i]));
    }
  };
  unsigned n_threads = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(times.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }
  std::vector<QuantumState> out;
  out.reserve(times.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double chain_density(const QuantumState& psi, int chain) {
  const auto idx = psi.graph().chain_indices(chain);
  if (idx.empty()) throw InvalidArgument("chain_density: no chain " + std::to_string(chain));
  const Eigen::VectorXd d = psi.densities();
  double s = 0.0;
  for (std::size_t i : idx) s += d(static_cast<Eigen::Index>(i));
  return s;
}

std::map<int, double> chain_densities(const QuantumState& psi) {
  const Eigen::VectorXd d = psi.densities();
  std::map<int, double> out;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    out[psi.graph().site_at(i).chain] += d(static_cast<Eigen::Index>(i));
  }
  return out;
}

ChainMoments chain_moments(const QuantumState& psi, int chain) {
  const auto idx = psi.graph().chain_indices(chain);
  if (idx.empty()) throw InvalidArgument("chain_moments: no chain " + std::to_string(chain));
  const Eigen::VectorXd d = psi.densities();
  ChainMoments m;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double w = d(static_cast<Eigen::Index>(idx[i]));
    const double n = static_cast<double>(i + 1);
    m.weight += w;
    s1 += w * n;
    s2 += w * n * n;
  }
  if (m.weight > 0.0) {
    m.mean = s1 / m.weight;
    m.stddev = std::sqrt(std::max(0.0, s2 / m.weight - m.mean * m.mean));
  }
  return m;
}

Dispersion dispersion(double k) {
  return {2.0 * std::cos(k), 2.0 * std::sin(k), -2.0 * std::cos(k)};
}

}  // namespace chiralwalk
