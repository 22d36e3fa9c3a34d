#include <atomic>
#include <cstdlib>

#include "chiralwalk/error.hpp"
#include "kernels_internal.hpp"

namespace chiralwalk::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(CHIRALWALK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const KernelTable* best = avx2_table();
  if (const char* env = std::getenv("CHIRALWALK_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && best) return best;
  }
  return best ? best : &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return detail::kScalarTable; }

const KernelTable* avx2_table() {
#if defined(CHIRALWALK_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (name == "avx2" || name == "auto") {
    if (const KernelTable* t = avx2_table()) {
      current().store(t, std::memory_order_release);
      return true;
    }
    if (name == "auto") {
      current().store(&scalar_table(), std::memory_order_release);
      return true;
    }
  }
  return false;
}

std::vector<std::string> available() {
  std::vector<std::string> names{"scalar"};
  if (avx2_table()) names.emplace_back("avx2");
  return names;
}

void gemv(const PlanarMatrixView& a, PlanarVectorView x, PlanarVectorSpan y) {
  if (a.re.size() != a.rows * a.cols || a.im.size() != a.re.size() || x.re.size() != a.cols ||
      x.im.size() != a.cols || y.re.size() != a.rows || y.im.size() != a.rows) {
    throw InvalidArgument("gemv: dimension mismatch");
  }
  active().gemv(a.re.data(), a.im.data(), a.rows, a.cols, x.re.data(), x.im.data(), y.re.data(),
                y.im.data());
}

void gemv_adjoint(const PlanarMatrixView& a, PlanarVectorView x, PlanarVectorSpan y) {
  if (a.re.size() != a.rows * a.cols || a.im.size() != a.re.size() || x.re.size() != a.rows ||
      x.im.size() != a.rows || y.re.size() != a.cols || y.im.size() != a.cols) {
    throw InvalidArgument("gemv_adjoint: dimension mismatch");
  }
  active().gemv_adjoint(a.re.data(), a.im.data(), a.rows, a.cols, x.re.data(), x.im.data(),
                        y.re.data(), y.im.data());
}

void abs2(PlanarVectorView x, std::span<double> out) {
  if (x.im.size() != x.re.size() || out.size() != x.re.size()) {
    throw InvalidArgument("abs2: dimension mismatch");
  }
  active().abs2(x.re.data(), x.im.data(), x.re.size(), out.data());
}

double sum_abs2(PlanarVectorView x) {
  if (x.im.size() != x.re.size()) throw InvalidArgument("sum_abs2: dimension mismatch");
  return active().sum_abs2(x.re.data(), x.im.data(), x.re.size());
}

}  // namespace chiralwalk::kernels
