#pragma once

// Lattice scattering off a potential-shifted chain boundary: chain doubling, the finite-time
// Green's function Y(t) = <psi0| e^{iH0 t} e^{-iH_eff t} |psi0>, and its closed-form asymptotics
// built on the Jacobi theta function.

#include <vector>

#include "chiralwalk/evolution.hpp"

namespace chiralwalk {

// theta3(z, q) = 1 + 2 sum_{n>=1} q^{n^2} cos(2 n z), 0 <= q < 1.
// q > 0.5 is evaluated through the modular transformation.
double theta3(double z, double q);
// Direct series only (used for cross-checks near the switch-over).
double theta3_series(double z, double q);
double theta3_modular(double z, double q);

// f(x, omega) = pi/2 - atan((omega - cos x) / sin x), x in (0, pi).
double f_shift(double x, double omega);

// delta = 2 k0 - 2 atan((omega - cos k0)/sin k0) - pi, reduced to (-pi, pi].
double phase_shift(double k0, double omega);

struct ScatteringParams {
  int n_sites = 200;
  double n0 = 100.0;
  double sigma = 35.35533905932738;
  double k0 = 1.5707963267948966;
  double omega = 1.7320508075688772;

  // Throws ConditionInapplicable when k0 is not in (0.05, pi - 0.05).
  void validate() const;
  double beta() const;           // f(k0, 0) - f(k0, omega)
  double delta() const;          // phase_shift(k0, omega) == -2 beta (mod 2 pi)
  double normalization() const;  // sqrt(theta3(0, e^{-1/sigma^2}))
  double group_velocity() const;

  static ScatteringParams defaults(int n_sites, double omega);
};

// Odd extension onto 2N+1 sites: psi, then 0, then the negated mirror image; renormalized.
QuantumState double_chain_map(const QuantumState& psi);

// Exact Y(t) for a packet on a single N-site chain, via two spectral evolutions.
class GreensFunction {
 public:
  GreensFunction(int n_sites, double omega, const WavePacketSpec& packet);

  Complex operator()(double t) const;
  const QuantumState& initial_state() const { return psi0_; }

 private:
  GraphPtr chain_;
  QuantumState psi0_;
  EigenSystem free_;
  EigenSystem shifted_;
  Eigen::VectorXcd free_coeffs_;
  Eigen::VectorXcd shifted_coeffs_;
};

Complex greens_numeric(int n_sites, double omega, const WavePacketSpec& packet, double t);

// T(t) = pi + n0 pi / N + 2 pi t sin k0 / N
double rescale_time(double t, const ScatteringParams& params);

// Truncated (q, p) double sum for Yhat(T); identically 1 for omega = 0.
Complex greens_analytic(double T, const ScatteringParams& params);
// d Yhat / dT = sigma^2 (1 - e^{2i beta}) / (2 Nrm^2 N) e^{-i T beta/pi} theta3(T/2, e^{-pi^2 sigma^2 / 2N^2})^2
Complex greens_analytic_derivative(double T, const ScatteringParams& params);

// Index window used by greens_analytic: centre round(N k0 / pi), half-width W.
struct SumWindow {
  long centre;
  long half_width;
};
SumWindow greens_sum_window(const ScatteringParams& params);

struct GreensTrace {
  std::vector<double> times;
  std::vector<double> rescaled;  // T(t)
  std::vector<Complex> values;
};

enum class GreensSource { Numeric, Analytic };

GreensTrace greens_trace(const ScatteringParams& params, std::span<const double> times,
                         GreensSource source);

}  // namespace chiralwalk
