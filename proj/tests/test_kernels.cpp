#include <doctest.h>

#include <cmath>
#include <random>

#include "radgas/kernels.hpp"

using namespace radgas;
using namespace radgas::kernels;

TEST_CASE("Simpson segment weights integrate constants exactly") {
  for (std::size_t m = 1; m <= 9; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k <= m; ++k) s += segment_weight(m, k);
    CHECK(s == doctest::Approx(static_cast<double>(m)).epsilon(1e-14));
  }
  CHECK(segment_weight(2, 1) == doctest::Approx(4.0 / 3.0));
  CHECK(segment_weight(3, 0) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("flux divergence") {
  const auto f = Flux({0, 0, 0.5});
  const auto grid = HalfLineGrid::make(1001, 50.0);
  SUBCASE("constant state has zero divergence") {
    std::vector<double> u(grid.n, 0.4), out;
    flux_divergence(u, grid.h, f, Exec::serial, out);
    for (double v : out) CHECK(v == 0.0);
  }
  SUBCASE("serial and parallel agree bitwise") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    std::vector<double> u(grid.n), a, b;
    for (std::size_t i = 0; i < grid.n; ++i) u[i] = 0.5 + 0.3 * std::tanh(grid.x(i) - 20) + noise(rng);
    flux_divergence(u, grid.h, f, Exec::serial, a);
    flux_divergence(u, grid.h, f, Exec::parallel, b);
    CHECK(a == b);
  }
  SUBCASE("second order on smooth monotone data") {
    auto err = [&](std::size_t n) {
      const auto g = HalfLineGrid::make(n, 40.0);
      std::vector<double> u(g.n), out;
      for (std::size_t i = 0; i < g.n; ++i) u[i] = 0.5 + 0.3 * std::tanh((g.x(i) - 20) / 4);
      flux_divergence(u, g.h, f, Exec::serial, out);
      double e = 0.0;
      for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (x < 12 || x > 28) continue;
        const double s = 1.0 / std::cosh((x - 20) / 4);
        e = std::max(e, std::abs(out[i] - u[i] * 0.3 / 4 * s * s));
      }
      return e;
    };
    CHECK(std::log2(err(401) / err(801)) > 1.7);
  }
  SUBCASE("2D planar data reproduce the line divergence") {
    const auto g2 = HalfPlaneGrid::make(201, 8, 20.0, 4.0);
    std::vector<double> u(g2.size()), line(g2.nx), out2, out1;
    for (std::size_t i = 0; i < g2.nx; ++i) {
      line[i] = 0.2 + 0.1 * std::tanh(g2.x(i) - 10);
      for (std::size_t j = 0; j < g2.ny; ++j) u[g2.index(i, j)] = line[i];
    }
    flux_divergence_2d(u, g2, f, f, Exec::parallel, out2);
    flux_divergence(line, g2.hx, f, Exec::serial, out1);
    for (std::size_t i = 0; i < g2.nx; ++i)
      for (std::size_t j = 0; j < g2.ny; ++j) CHECK(out2[g2.index(i, j)] == out1[i]);
  }
}

TEST_CASE("image kernel: direct and recursive sums") {
  const auto grid = HalfLineGrid::make(1201, 60.0);
  std::vector<double> f(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) f[i] = std::sin(grid.x(i)) * std::exp(-grid.x(i) / 7) + 0.3;
  for (double sign : {-1.0, 1.0}) {
    std::vector<double> serial, parallel, rec;
    image_kernel_apply(f, grid, sign, 0.3, Exec::serial, serial);
    image_kernel_apply(f, grid, sign, 0.3, Exec::parallel, parallel);
    image_kernel_apply_recursive(f, grid, sign, 0.3, rec);
    CHECK(serial == parallel);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) worst = std::max(worst, std::abs(serial[i] - rec[i]));
    CHECK(worst < 1e-12);
  }
  CHECK(max_speed({-2.0, 0.5, 1.5}, Flux({0, 0, 0.5})) == 2.0);
}
