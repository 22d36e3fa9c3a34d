#pragma once

// Data-parallel inner loops of the spectral propagator. Complex data is stored planar
// (separate real and imaginary arrays); matrices are column-major with `rows` as leading dimension.
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA variant chosen at run time.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chiralwalk::kernels {

struct PlanarMatrixView {
  std::span<const double> re;
  std::span<const double> im;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct PlanarVectorView {
  std::span<const double> re;
  std::span<const double> im;
};

struct PlanarVectorSpan {
  std::span<double> re;
  std::span<double> im;
};

struct KernelTable {
  const char* name;
  // y = A x (y overwritten)
  void (*gemv)(const double* a_re, const double* a_im, std::size_t rows, std::size_t cols,
               const double* x_re, const double* x_im, double* y_re, double* y_im);
  // y = A^H x (y overwritten)
  void (*gemv_adjoint)(const double* a_re, const double* a_im, std::size_t rows, std::size_t cols,
                       const double* x_re, const double* x_im, double* y_re, double* y_im);
  // out[i] = re[i]^2 + im[i]^2
  void (*abs2)(const double* re, const double* im, std::size_t n, double* out);
  // sum_i re[i]^2 + im[i]^2
  double (*sum_abs2)(const double* re, const double* im, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// Table used by the library. Initialised from CHIRALWALK_SIMD (auto|scalar|avx2), default auto.
const KernelTable& active();
// Select by name; returns false (leaving the selection unchanged) if unavailable.
bool select(std::string_view name);
std::vector<std::string> available();

// Checked wrappers over the active table.
void gemv(const PlanarMatrixView& a, PlanarVectorView x, PlanarVectorSpan y);
void gemv_adjoint(const PlanarMatrixView& a, PlanarVectorView x, PlanarVectorSpan y);
void abs2(PlanarVectorView x, std::span<double> out);
double sum_abs2(PlanarVectorView x);

}  // namespace chiralwalk::kernels
