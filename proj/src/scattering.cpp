#include "chiralwalk/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chiralwalk/error.hpp"
#include "chiralwalk/junction.hpp"

namespace chiralwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEndpointGuard = 0.05;

double wrap_to_pi(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

void require_open_momentum(double x, const char* who) {
  if (!(x > 0.0 && x < kPi)) {
    throw InvalidArgument(std::string(who) + ": momentum must lie in (0, pi)");
  }
}

}  // namespace

double theta3_series(double z, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("theta3: nome must satisfy 0 <= q < 1");
  double sum = 0.0;
  for (long n = 1;; ++n) {
    const double term = std::pow(q, static_cast<double>(n * n));
    if (term == 0.0 || term < 1e-18 * (1.0 + std::abs(sum))) break;
    sum += term * std::cos(2.0 * n * z);
    if (n > 100000000) break;
  }
  return 1.0 + 2.0 * sum;
}

double theta3_modular(double z, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("theta3_modular: nome must satisfy 0 < q < 1");
  // q = e^{-pi s}: theta3(z, q) = s^{-1/2} sum_n exp(-(z - n pi)^2 / (pi s)).
  const double s = -std::log(q) / kPi;
  const double zr = z - kPi * std::round(z / kPi);  // period pi in z
  double sum = 0.0;
  for (long n = 0;; ++n) {
    double term = std::exp(-(zr - n * kPi) * (zr - n * kPi) / (kPi * s));
    if (n > 0) term += std::exp(-(zr + n * kPi) * (zr + n * kPi) / (kPi * s));
    sum += term;
    if (n > 0 && term < 1e-18 * sum) break;
  }
  return sum / std::sqrt(s);
}

double theta3(double z, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("theta3: nome must satisfy 0 <= q < 1");
  return q > 0.5 ? theta3_modular(z, q) : theta3_series(z, q);
}

double f_shift(double x, double omega) {
  require_open_momentum(x, "f_shift");
  return kPi / 2.0 - std::atan((omega - std::cos(x)) / std::sin(x));
}

double phase_shift(double k0, double omega) {
  require_open_momentum(k0, "phase_shift");
  return wrap_to_pi(2.0 * k0 - 2.0 * std::atan((omega - std::cos(k0)) / std::sin(k0)) - kPi);
}

void ScatteringParams::validate() const {
  if (n_sites < 2) throw InvalidSize("scattering: N must be >= 2");
  if (!(sigma > 0.0)) throw InvalidArgument("scattering: sigma must be positive");
  if (!(k0 > kEndpointGuard && k0 < kPi - kEndpointGuard)) {
    throw ConditionInapplicable("scattering: k0 must stay 0.05 away from 0 and pi");
  }
}

double ScatteringParams::beta() const { return f_shift(k0, 0.0) - f_shift(k0, omega); }

double ScatteringParams::delta() const { return phase_shift(k0, omega); }

double ScatteringParams::normalization() const {
  return std::sqrt(theta3(0.0, std::exp(-1.0 / (sigma * sigma))));
}

double ScatteringParams::group_velocity() const { return dispersion(k0).group_velocity; }

ScatteringParams ScatteringParams::defaults(int n_sites, double omega) {
  ScatteringParams p;
  p.n_sites = n_sites;
  p.n0 = n_sites / 2.0;
  p.sigma = n_sites / std::sqrt(32.0);
  p.k0 = kPi / 2.0;
  p.omega = omega;
  return p;
}

QuantumState double_chain_map(const QuantumState& psi) {
  const PhasedGraph& g = psi.graph();
  if (g.edges().size() + 1 != g.size() || g.chains().size() != 1) {
    throw TopologyError("double_chain_map: input must live on a single open chain");
  }
  const int n = static_cast<int>(g.size());
  const Eigen::VectorXcd src = psi.chain_amplitudes(g.chains().front());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n + 1);
  for (int k = 0; k < n; ++k) {
    out(k) = src(k);
    out(2 * n - k) = -src(k);
  }
  auto doubled = std::make_shared<const PhasedGraph>(build_open_chain(2 * n + 1));
  return QuantumState::normalized(std::move(doubled), std::move(out));
}

GreensFunction::GreensFunction(int n_sites, double omega, const WavePacketSpec& packet)
    : chain_(std::make_shared<const PhasedGraph>(build_open_chain(n_sites))),
      psi0_(make_packet(chain_, packet)),
      free_(eig_hermitian(build_effective_chain(n_sites, 0.0))),
      shifted_(eig_hermitian(build_effective_chain(n_sites, omega))),
      free_coeffs_(free_.project(psi0_.amplitudes())),
      shifted_coeffs_(shifted_.project(psi0_.amplitudes())) {}

Complex GreensFunction::operator()(double t) const {
  const Eigen::VectorXcd a = free_.propagate(free_coeffs_, t);
  const Eigen::VectorXcd b = shifted_.propagate(shifted_coeffs_, t);
  return a.dot(b);  // conjugates the left operand
}

Complex greens_numeric(int n_sites, double omega, const WavePacketSpec& packet, double t) {
  return GreensFunction(n_sites, omega, packet)(t);
}

double rescale_time(double t, const ScatteringParams& p) {
  return kPi + p.n0 * kPi / p.n_sites + 2.0 * kPi * t * std::sin(p.k0) / p.n_sites;
}

SumWindow greens_sum_window(const ScatteringParams& p) {
  const double a = kPi * kPi * p.sigma * p.sigma / (2.0 * p.n_sites * p.n_sites);
  const double from_rule = std::ceil(6.0 * p.n_sites / (kPi * p.sigma)) + 8.0;
  const double from_tail = std::ceil(std::sqrt(28.0 / a)) + 8.0;  // e^{-28} < 1e-12
  return {std::lround(p.n_sites * p.k0 / kPi), static_cast<long>(std::max(from_rule, from_tail))};
}

Complex greens_analytic(double T, const ScatteringParams& p) {
  p.validate();
  if (p.omega == 0.0) return {1.0, 0.0};
  const double beta = p.beta();
  const double b = beta / kPi;
  const double a = kPi * kPi * p.sigma * p.sigma / (2.0 * p.n_sites * p.n_sites);
  const double nrm2 = theta3(0.0, std::exp(-1.0 / (p.sigma * p.sigma)));
  const Complex prefactor = p.sigma * p.sigma * (1.0 - std::polar(1.0, 2.0 * beta)) /
                            (Complex(0.0, 2.0) * nrm2 * static_cast<double>(p.n_sites));
  const SumWindow w = greens_sum_window(p);
  const long span = 2 * w.half_width + 1;
  std::vector<double> weight(static_cast<std::size_t>(span));
  for (long j = -w.half_width; j <= w.half_width; ++j) {
    weight[static_cast<std::size_t>(j + w.half_width)] = std::exp(-a * static_cast<double>(j * j));
  }
  // Terms depend on q - p only through d = q - p; accumulate the weight product per d.
  Complex sum = 0.0;
  for (long d = -(span - 1); d <= span - 1; ++d) {
    double pair_weight = 0.0;
    for (long i = std::max(0L, d); i < std::min(span, span + d); ++i) {
      pair_weight += weight[static_cast<std::size_t>(i)] * weight[static_cast<std::size_t>(i - d)];
    }
    const double x = static_cast<double>(d) - b;
    sum += pair_weight / x * std::polar(1.0, x * T);
  }
  return prefactor * sum;
}

Complex greens_analytic_derivative(double T, const ScatteringParams& p) {
  p.validate();
  if (p.omega == 0.0) return {0.0, 0.0};
  const double beta = p.beta();
  const double a = kPi * kPi * p.sigma * p.sigma / (2.0 * p.n_sites * p.n_sites);
  const double nrm2 = theta3(0.0, std::exp(-1.0 / (p.sigma * p.sigma)));
  const double th = theta3(T / 2.0, std::exp(-a));
  return p.sigma * p.sigma * (1.0 - std::polar(1.0, 2.0 * beta)) /
         (2.0 * nrm2 * static_cast<double>(p.n_sites)) * std::polar(1.0, -T * beta / kPi) * th * th;
}

GreensTrace greens_trace(const ScatteringParams& p, std::span<const double> times,
                         GreensSource source) {
  p.validate();
  GreensTrace trace;
  trace.times.assign(times.begin(), times.end());
  for (double t : times) trace.rescaled.push_back(rescale_time(t, p));
  if (source == GreensSource::Numeric) {
    WavePacketSpec packet;
    packet.kind = PacketKind::Gaussian;
    packet.chain = 1;
    packet.n0 = p.n0;
    packet.sigma = p.sigma;
    packet.k0 = p.k0;
    const GreensFunction y(p.n_sites, p.omega, packet);
    for (double t : times) trace.values.push_back(y(t));
  } else {
    for (double T : trace.rescaled) trace.values.push_back(greens_analytic(T, p));
  }
  return trace;
}

}  // namespace chiralwalk
