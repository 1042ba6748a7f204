#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radgas/elliptic.hpp"
#include "radgas/errors.hpp"

using namespace radgas;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// 1/2 int_0^inf (e^{-|x-y|} + sign e^{-(x+y)}) f(y) dy by adaptive quadrature.
template <class F>
double kernel_quadrature(F f, double x, double sign) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto k = [&](double y) { return 0.5 * (std::exp(-std::abs(x - y)) + sign * std::exp(-(x + y))) * f(y); };
  double v = Quad::integrate(k, 0.0, x, 15, 1e-14);
  v += Quad::integrate(k, x, x + 60.0, 15, 1e-14);
  return v;
}

std::vector<double> sample(const HalfLineGrid& g, double (*fn)(double)) {
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = fn(g.x(i));
  return v;
}

double smooth_f(double y) { return std::sin(y) * std::exp(-y / 5) + 0.2 * std::exp(-0.1 * (y - 3) * (y - 3)); }

}  // namespace

// The quadrature is fourth order away from x = 0 and x = L, where single
// trapezoid segments leave an O(h^3) local error.
TEST_CASE("Dirichlet kernel closed forms") {
  const auto grid = HalfLineGrid::make(4001, 40.0);
  const auto one = k_dirichlet(std::vector<double>(grid.n, 1.0), grid, Exec::parallel, 1.0);
  const auto ex = k_dirichlet(sample(grid, [](double y) { return std::exp(-y); }), grid);
  CHECK(one[0] == 0.0);
  CHECK(ex[0] == 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    CHECK(std::abs(one[i] - (1 - std::exp(-x))) < 1e-6);
    CHECK(std::abs(ex[i] - 0.5 * x * std::exp(-x)) < 1e-6);
  }
  // The quadrature oracle agrees with the closed forms.
  CHECK(kernel_quadrature([](double y) { return std::exp(-y); }, 1.7, -1.0) ==
        doctest::Approx(0.5 * 1.7 * std::exp(-1.7)).epsilon(1e-12));
}

TEST_CASE("Neumann kernel closed forms") {
  const auto grid = HalfLineGrid::make(4001, 40.0);
  const auto one = k_neumann(std::vector<double>(grid.n, 1.0), grid, Exec::parallel, 1.0);
  const auto ex = k_neumann(sample(grid, [](double y) { return std::exp(-y); }), grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    CHECK(std::abs(one[i] - 1.0) < 1e-6);
    CHECK(std::abs(ex[i] - 0.5 * (x + 1) * std::exp(-x)) < 1e-6);
  }
  CHECK(kernel_quadrature([](double y) { return std::exp(-y); }, 0.4, 1.0) ==
        doctest::Approx(0.5 * 1.4 * std::exp(-0.4)).epsilon(1e-12));
}

TEST_CASE("kernels against quadrature on a generic function") {
  const auto grid = HalfLineGrid::make(6001, 60.0);
  const auto f = sample(grid, smooth_f);
  const auto gd = k_dirichlet(f, grid);
  const auto gn = k_neumann(f, grid);
  for (double x : {0.0, 0.5, 3.0, 7.25, 20.0}) {
    const auto i = static_cast<std::size_t>(std::lround(x / grid.h));
    CHECK(std::abs(gd[i] - kernel_quadrature(smooth_f, x, -1.0)) < 1e-8);
    CHECK(std::abs(gn[i] - kernel_quadrature(smooth_f, x, 1.0)) < 1e-8);
  }
}

TEST_CASE("Neumann kernel has zero slope at the boundary") {
  // Fourth-order one-sided difference; the slope shrinks with the quadrature error.
  auto slope = [](std::size_t n) {
    const auto grid = HalfLineGrid::make(n, 60.0);
    const auto g = k_neumann(sample(grid, smooth_f), grid);
    return (-25 * g[0] + 48 * g[1] - 36 * g[2] + 16 * g[3] - 3 * g[4]) / (12 * grid.h);
  };
  const double a = std::abs(slope(3001)), b = std::abs(slope(6001));
  CHECK(a < 1e-4);
  CHECK(b < a / 3);
}

TEST_CASE("recursive and direct kernels agree; serial equals parallel") {
  const auto grid = HalfLineGrid::make(3001, 60.0);
  const auto f = sample(grid, smooth_f);
  CHECK(max_abs_diff(k_dirichlet(f, grid, Exec::serial), k_dirichlet_recursive(f, grid)) < 1e-12);
  CHECK(max_abs_diff(k_neumann(f, grid, Exec::serial, 0.5), k_neumann_recursive(f, grid, 0.5)) < 1e-12);
  CHECK(k_dirichlet(f, grid, Exec::serial) == k_dirichlet(f, grid, Exec::parallel));
  CHECK(k_neumann(f, grid, Exec::serial) == k_neumann(f, grid, Exec::parallel));
  CHECK(kernel_truncation_estimate({0.0, 1.0, -4.0}) == 2.0);
}

TEST_CASE("tridiagonal solve matches dense elimination") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 12;
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = i ? u(rng) : 0.0;
    up[i] = i + 1 < n ? u(rng) : 0.0;
    di[i] = 3.0 + u(rng);
    rhs[i] = u(rng);
  }
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i) a[i][i - 1] = lo[i];
    a[i][i] = di[i];
    if (i + 1 < n) a[i][i + 1] = up[i];
    a[i][n] = rhs[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= m * a[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = a[i][n];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  solve_tridiagonal(lo, di, up, rhs);
  CHECK(max_abs_diff(rhs, x) < 1e-13);
}

TEST_CASE("half-line Q solve") {
  SUBCASE("constant U gives Q = 0") {
    const auto grid = HalfLineGrid::make(101, 10.0);
    const auto Q = solve_Q_1d(std::vector<double>(grid.n, 0.7), grid);
    for (double q : Q) CHECK(q == 0.0);
  }
  SUBCASE("closed form with U_x = e^{-x}, second order") {
    std::vector<double> err;
    for (std::size_t n : {401, 801, 1601}) {
      const auto grid = HalfLineGrid::make(n, 40.0);
      const auto Q = solve_Q_1d(sample(grid, [](double y) { return 1 - std::exp(-y); }), grid);
      double e = 0.0;
      for (std::size_t i = 0; i < grid.n; ++i)
        e = std::max(e, std::abs(Q[i] + 0.5 * (grid.x(i) + 1) * std::exp(-grid.x(i))));
      err.push_back(e);
    }
    CHECK(err[2] < 1e-4);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(std::log2(err[k] / err[k + 1]) - 2.0) <= 0.3);
  }
  SUBCASE("two routes converge at second order") {
    std::vector<double> gap;
    for (std::size_t n : {401, 801, 1601}) {
      const auto grid = HalfLineGrid::make(n, 40.0);
      const auto U = sample(grid, [](double y) { return 0.3 + 0.2 * std::tanh(y - 8); });
      std::vector<double> minus_ux(grid.n);
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double s = 1.0 / std::cosh(grid.x(i) - 8);
        minus_ux[i] = -0.2 * s * s;
      }
      gap.push_back(max_abs_diff(k_neumann(minus_ux, grid), solve_Q_1d(U, grid)));
    }
    for (int k = 0; k < 2; ++k) CHECK(std::abs(std::log2(gap[k] / gap[k + 1]) - 2.0) <= 0.3);
  }
  SUBCASE("discrete residual and boundary rows are exact") {
    const auto grid = HalfLineGrid::make(501, 50.0);
    const auto U = sample(grid, [](double y) { return 0.1 + 0.5 * std::tanh(y / 3) + 0.05 * std::sin(y); });
    const auto Q = solve_Q_1d(U, grid);
    const double h = grid.h;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < grid.n; ++i) {
      const double r = -(Q[i + 1] - 2 * Q[i] + Q[i - 1]) / (h * h) + Q[i] + (U[i + 1] - U[i - 1]) / (2 * h);
      worst = std::max(worst, std::abs(r));
    }
    CHECK(worst < 1e-10);
    // Ghost node Q_{-1} = Q_1 at x = 0.
    CHECK(std::abs(-2 * (Q[1] - Q[0]) / (h * h) + Q[0] + (U[1] - U[0]) / h) < 1e-10);
    CHECK(Q.back() == 0.0);
  }
  SUBCASE("nondecreasing data give Q <= 0") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> amp(0.0, 1.0), ctr(0.0, 40.0), wid(0.3, 8.0);
    const auto grid = HalfLineGrid::make(801, 80.0);
    double worst = -1.0;
    for (int c = 0; c < 50; ++c) {
      std::vector<double> U(grid.n, 0.0);
      for (int m = 0; m < 4; ++m) {
        const double a = amp(rng), x0 = ctr(rng), w = wid(rng);
        for (std::size_t i = 0; i < grid.n; ++i) U[i] += a * std::tanh((grid.x(i) - x0) / w);
      }
      const auto Q = solve_Q_1d(U, grid);
      worst = std::max(worst, *std::max_element(Q.begin(), Q.end()));
    }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("shape and grid errors") {
    const auto grid = HalfLineGrid::make(101, 10.0);
    CHECK_THROWS_AS(solve_Q_1d(std::vector<double>(50, 0.0), grid), ShapeError);
    CHECK_THROWS_AS(HalfLineGrid::make(8, 1.0), ConfigError);
    CHECK_THROWS_AS(HalfLineGrid::make(100, -1.0), ConfigError);
    CHECK_THROWS_AS(HalfPlaneGrid::make(101, 6, 10.0, 1.0), ConfigError);
  }
}

TEST_CASE("half-plane div p solve") {
  SUBCASE("y-independent data reduce to the half-line solve") {
    const auto grid = HalfPlaneGrid::make(401, 16, 40.0, 8.0);
    std::vector<double> v(grid.size()), line(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
      line[i] = 0.2 * std::tanh(grid.x(i) - 5);
      for (std::size_t j = 0; j < grid.ny; ++j) v[grid.index(i, j)] = line[i];
    }
    const auto p = solve_divp_2d(v, grid);
    const auto Q = solve_Q_1d(line, grid.line());
    for (std::size_t i = 0; i < grid.nx; ++i)
      for (std::size_t j = 0; j < grid.ny; ++j) {
        CHECK(p.p1[grid.index(i, j)] == Q[i]);
        CHECK(p.p2[grid.index(i, j)] == 0.0);
      }
    for (std::size_t j = 0; j < grid.ny; ++j) CHECK(p.s[grid.index(0, j)] == 0.0);
  }
  SUBCASE("single Fourier mode against its closed form") {
    // v = (1 - e^{-x}) sin(y) on Ly = 2 pi; s = sigma(x) sin(y) with
    // (1 + lambda) sigma - sigma'' = lambda a - a'', lambda the discrete y eigenvalue.
    const std::size_t ny = 8;
    const double lx = 20.0, ly = 2 * M_PI;
    const auto grid = HalfPlaneGrid::make(8001, ny, lx, ly);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) v[grid.index(i, j)] = (1 - std::exp(-grid.x(i))) * std::sin(grid.y(j));
    const auto p = solve_divp_2d(v, grid);
    const double sn = std::sin(M_PI / ny);
    const double lambda = 4 * sn * sn / (grid.hy * grid.hy);
    const double mu = std::sqrt(1 + lambda);
    const double c = (1 - lambda) / lambda;
    const double A = -lambda / (mu * mu) - c;
    const double B = -lambda / (mu * mu);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double sigma = lambda / (mu * mu) + c * std::exp(-x) + A * std::exp(-mu * x) + B * std::exp(mu * (x - lx));
      for (std::size_t j = 0; j < ny; ++j)
        worst = std::max(worst, std::abs(p.s[grid.index(i, j)] - sigma * std::sin(grid.y(j))));
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("curl of p: exact for matched stencils, second order otherwise") {
    auto run = [](std::size_t nx, std::size_t ny) {
      const auto grid = HalfPlaneGrid::make(nx, ny, 20.0, 10.0);
      std::vector<double> v(grid.size());
      for (std::size_t i = 0; i < grid.nx; ++i)
        for (std::size_t j = 0; j < grid.ny; ++j) {
          const double x = grid.x(i), y = grid.y(j);
          v[grid.index(i, j)] = x * std::exp(-x) * (std::sin(2 * M_PI * y / 10.0) + 0.5 * std::cos(4 * M_PI * y / 10.0));
        }
      const auto p = solve_divp_2d(v, grid);
      return std::pair{curl_residual(p, grid), curl_residual_fourth_order(p, grid)};
    };
    const auto [m1, c1] = run(201, 32);
    const auto [m2, c2] = run(401, 64);
    const auto [m3, c3] = run(801, 128);
    CHECK(std::max({m1, m2, m3}) < 1e-12);
    CHECK(std::log2(c1 / c2) >= 1.7);
    CHECK(std::log2(c2 / c3) >= 1.7);
  }
  SUBCASE("serial and parallel solves agree bitwise") {
    const auto grid = HalfPlaneGrid::make(301, 32, 30.0, 6.0);
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(0.01 * static_cast<double>(k)) * 0.1;
    DivpSolver a(grid, Exec::serial), b(grid, Exec::parallel);
    DivpFields pa, pb;
    a.solve(v, pa);
    b.solve(v, pb);
    CHECK(pa.s == pb.s);
    CHECK(pa.p1 == pb.p1);
    CHECK(pa.p2 == pb.p2);
  }
}
