#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "chiralwalk/error.hpp"
#include "chiralwalk/kernels.hpp"

using namespace chiralwalk::kernels;
using C = std::complex<double>;

namespace {

struct Planar {
  std::vector<double> re, im;
  explicit Planar(std::size_t n) : re(n), im(n) {}
  C at(std::size_t i) const { return {re[i], im[i]}; }
};

Planar random_planar(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Planar p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.re[i] = g(rng);
    p.im[i] = g(rng);
  }
  return p;
}

// Plain complex loops, column-major.
std::vector<C> naive_gemv(const Planar& a, std::size_t rows, std::size_t cols, const Planar& x,
                          bool adjoint) {
  std::vector<C> y(adjoint ? cols : rows, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      const C aij = a.at(j * rows + i);
      if (adjoint) y[j] += std::conj(aij) * x.at(i);
      else y[i] += aij * x.at(j);
    }
  }
  return y;
}

void check_table(const KernelTable& t, std::mt19937_64& rng) {
  for (std::size_t rows : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 33u, 64u}) {
    for (std::size_t cols : {1u, 3u, 4u, 9u, 31u}) {
      const Planar a = random_planar(rows * cols, rng);
      const Planar x = random_planar(cols, rng);
      const Planar xa = random_planar(rows, rng);
      Planar y(rows), ya(cols);
      t.gemv(a.re.data(), a.im.data(), rows, cols, x.re.data(), x.im.data(), y.re.data(), y.im.data());
      t.gemv_adjoint(a.re.data(), a.im.data(), rows, cols, xa.re.data(), xa.im.data(), ya.re.data(),
                     ya.im.data());
      const auto ref = naive_gemv(a, rows, cols, x, false);
      const auto refa = naive_gemv(a, rows, cols, xa, true);
      for (std::size_t i = 0; i < rows; ++i) CHECK(std::abs(y.at(i) - ref[i]) < 1e-12 * (1.0 + cols));
      for (std::size_t j = 0; j < cols; ++j) CHECK(std::abs(ya.at(j) - refa[j]) < 1e-12 * (1.0 + rows));
    }
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 100u}) {
    const Planar x = random_planar(n, rng);
    std::vector<double> out(n);
    t.abs2(x.re.data(), x.im.data(), n, out.data());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(out[i] == doctest::Approx(std::norm(x.at(i))).epsilon(1e-15));
      total += std::norm(x.at(i));
    }
    CHECK(t.sum_abs2(x.re.data(), x.im.data(), n) == doctest::Approx(total).epsilon(1e-14));
  }
}

}  // namespace

TEST_CASE("scalar kernels match naive complex loops") {
  std::mt19937_64 rng(1);
  check_table(scalar_table(), rng);
}

TEST_CASE("AVX2 kernels match naive complex loops") {
  const KernelTable* t = avx2_table();
  if (!t) {
    MESSAGE("AVX2 variant unavailable on this build or CPU");
    return;
  }
  std::mt19937_64 rng(2);
  check_table(*t, rng);
}

TEST_CASE("AVX2 and scalar variants agree to rounding") {
  const KernelTable* v = avx2_table();
  if (!v) return;
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 6u, 61u, 200u}) {
    const Planar a = random_planar(n * n, rng);
    const Planar x = random_planar(n, rng);
    Planar y1(n), y2(n);
    s.gemv(a.re.data(), a.im.data(), n, n, x.re.data(), x.im.data(), y1.re.data(), y1.im.data());
    v->gemv(a.re.data(), a.im.data(), n, n, x.re.data(), x.im.data(), y2.re.data(), y2.im.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1.at(i) - y2.at(i)) < 1e-13 * n);
    s.gemv_adjoint(a.re.data(), a.im.data(), n, n, x.re.data(), x.im.data(), y1.re.data(), y1.im.data());
    v->gemv_adjoint(a.re.data(), a.im.data(), n, n, x.re.data(), x.im.data(), y2.re.data(), y2.im.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1.at(i) - y2.at(i)) < 1e-13 * n);
  }
}

TEST_CASE("runtime selection") {
  const std::string before = active().name;
  CHECK(select("scalar"));
  CHECK(std::string(active().name) == "scalar");
  CHECK_FALSE(select("sse9"));
  CHECK(std::string(active().name) == "scalar");
  const auto names = available();
  CHECK(std::find(names.begin(), names.end(), "scalar") != names.end());
  if (avx2_table()) {
    CHECK(select("avx2"));
    CHECK(std::string(active().name) == "avx2");
  }
  select(before);
}

TEST_CASE("checked wrappers reject mismatched shapes") {
  std::vector<double> a(6), x(3), y(2), z(4);
  const PlanarMatrixView m{a, a, 2, 3};
  CHECK_NOTHROW(gemv(m, {x, x}, {y, y}));
  CHECK_THROWS_AS(gemv(m, {y, y}, {y, y}), chiralwalk::InvalidArgument);
  CHECK_THROWS_AS(gemv_adjoint(m, {x, x}, {x, x}), chiralwalk::InvalidArgument);
  CHECK_THROWS_AS(gemv({a, a, 4, 3}, {x, x}, {z, z}), chiralwalk::InvalidArgument);
  CHECK_THROWS_AS(abs2({x, y}, z), chiralwalk::InvalidArgument);
}
