#include "kernels_internal.hpp"

namespace chiralwalk::kernels::detail {

namespace {

void gemv_scalar(const double* a_re, const double* a_im, std::size_t rows, std::size_t cols,
                 const double* x_re, const double* x_im, double* y_re, double* y_im) {
  for (std::size_t i = 0; i < rows; ++i) {
    y_re[i] = 0.0;
    y_im[i] = 0.0;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    const double xr = x_re[j];
    const double xi = x_im[j];
    const double* cr = a_re + j * rows;
    const double* ci = a_im + j * rows;
    for (std::size_t i = 0; i < rows; ++i) {
      y_re[i] += cr[i] * xr - ci[i] * xi;
      y_im[i] += cr[i] * xi + ci[i] * xr;
    }
  }
}

void gemv_adjoint_scalar(const double* a_re, const double* a_im, std::size_t rows,
                         std::size_t cols, const double* x_re, const double* x_im, double* y_re,
                         double* y_im) {
  for (std::size_t j = 0; j < cols; ++j) {
    const double* cr = a_re + j * rows;
    const double* ci = a_im + j * rows;
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      sr += cr[i] * x_re[i] + ci[i] * x_im[i];
      si += cr[i] * x_im[i] - ci[i] * x_re[i];
    }
    y_re[j] = sr;
    y_im[j] = si;
  }
}

void abs2_scalar(const double* re, const double* im, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

double sum_abs2_scalar(const double* re, const double* im, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
  return s;
}

}  // namespace

const KernelTable kScalarTable{"scalar", gemv_scalar, gemv_adjoint_scalar, abs2_scalar,
                               sum_abs2_scalar};

}  // namespace chiralwalk::kernels::detail
