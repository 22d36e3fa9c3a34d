#include <algorithm>

#include <Eigen/Eigenvalues>

#include "chiralwalk/error.hpp"
#include "chiralwalk/evolution.hpp"
#include "chiralwalk/kernels.hpp"

namespace chiralwalk {

EigenSystem::EigenSystem(Eigen::VectorXd values, Eigen::MatrixXcd vectors)
    : values_(std::move(values)), vectors_(std::move(vectors)) {
  if (vectors_.rows() != values_.size() || vectors_.cols() != values_.size()) {
    throw InvalidArgument("EigenSystem: vectors must be square with one column per eigenvalue");
  }
  const auto n = static_cast<std::size_t>(vectors_.size());
  planar_re_.resize(n);
  planar_im_.resize(n);
  const Complex* src = vectors_.data();
  for (std::size_t i = 0; i < n; ++i) {
    planar_re_[i] = src[i].real();
    planar_im_[i] = src[i].imag();
  }
}

Eigen::VectorXcd EigenSystem::project(const Eigen::VectorXcd& psi) const {
  const std::size_t n = dimension();
  if (static_cast<std::size_t>(psi.size()) != n) throw InvalidArgument("project: dimension mismatch");
  std::vector<double> xr(n), xi(n), yr(n), yi(n);
  for (std::size_t i = 0; i < n; ++i) {
    xr[i] = psi(static_cast<Eigen::Index>(i)).real();
    xi[i] = psi(static_cast<Eigen::Index>(i)).imag();
  }
  kernels::gemv_adjoint({planar_re_, planar_im_, n, n}, {xr, xi}, {yr, yi});
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = {yr[i], yi[i]};
  return out;
}

Eigen::VectorXcd EigenSystem::propagate(const Eigen::VectorXcd& coefficients, double t) const {
  const std::size_t n = dimension();
  if (static_cast<std::size_t>(coefficients.size()) != n) {
    throw InvalidArgument("propagate: dimension mismatch");
  }
  std::vector<double> xr(n), xi(n), yr(n), yi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    const Complex c = coefficients(idx) * std::polar(1.0, -values_(idx) * t);
    xr[k] = c.real();
    xi[k] = c.imag();
  }
  kernels::gemv({planar_re_, planar_im_, n, n}, {xr, xi}, {yr, yi});
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = {yr[i], yi[i]};
  return out;
}

Eigen::VectorXcd EigenSystem::apply(const Eigen::VectorXcd& psi, double t) const {
  return propagate(project(psi), t);
}

double EigenSystem::max_residual(const HermitianMatrix& h) const {
  if (h.rows() != values_.size() || h.cols() != values_.size()) {
    throw InvalidArgument("max_residual: dimension mismatch");
  }
  const Eigen::MatrixXcd r = h * vectors_ - vectors_ * values_.cast<Complex>().asDiagonal();
  return r.cwiseAbs().maxCoeff();
}

double EigenSystem::orthonormality_error() const {
  const auto n = values_.size();
  return (vectors_.adjoint() * vectors_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

EigenSystem eig_hermitian(const HermitianMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgument("eig_hermitian: matrix is not square");
  const auto n = h.rows();
  if (n == 0) throw InvalidArgument("eig_hermitian: empty matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (max_hermiticity_error(h) > 1e-12 * scale) {
    throw InvalidArgument("eig_hermitian: matrix is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("eig_hermitian: eigensolver did not converge");
  return EigenSystem(solver.eigenvalues(), solver.eigenvectors());
}

}  // namespace chiralwalk
