#include "radgas/elliptic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "radgas/errors.hpp"
#include "radgas/kernels.hpp"

namespace radgas {

HalfLineGrid HalfLineGrid::make(std::size_t n, double length) {
  if (n < 16) throw ConfigError("half-line grid needs n >= 16");
  if (!(length > 0.0)) throw ConfigError("half-line grid needs L > 0");
  return HalfLineGrid{n, length / static_cast<double>(n - 1)};
}

HalfLineGrid HalfLineGrid::with_spacing(double h, double length) {
  if (!(h > 0.0) || !(length > 0.0)) throw ConfigError("half-line grid needs h > 0 and L > 0");
  const auto n = static_cast<std::size_t>(std::ceil(length / h - 1e-9)) + 1;
  return make(n, static_cast<double>(n - 1) * h);
}

HalfPlaneGrid HalfPlaneGrid::make(std::size_t nx, std::size_t ny, double lx, double ly) {
  if (nx < 16) throw ConfigError("half-plane grid needs nx >= 16");
  if (ny < 4 || (ny & (ny - 1)) != 0) throw ConfigError("ny must be a power of two (>= 4)");
  if (!(lx > 0.0) || !(ly > 0.0)) throw ConfigError("half-plane grid needs Lx, Ly > 0");
  return HalfPlaneGrid{nx, ny, lx / static_cast<double>(nx - 1), ly / static_cast<double>(ny)};
}

std::vector<double> k_dirichlet(const std::vector<double>& f, const HalfLineGrid& grid,
                                Exec exec, double far_value) {
  std::vector<double> out;
  kernels::image_kernel_apply(f, grid, -1.0, far_value, exec, out);
  out[0] = 0.0;
  return out;
}

std::vector<double> k_neumann(const std::vector<double>& f, const HalfLineGrid& grid,
                              Exec exec, double far_value) {
  std::vector<double> out;
  kernels::image_kernel_apply(f, grid, 1.0, far_value, exec, out);
  return out;
}

std::vector<double> k_dirichlet_recursive(const std::vector<double>& f, const HalfLineGrid& grid,
                                          double far_value) {
  std::vector<double> out;
  kernels::image_kernel_apply_recursive(f, grid, -1.0, far_value, out);
  out[0] = 0.0;
  return out;
}

std::vector<double> k_neumann_recursive(const std::vector<double>& f, const HalfLineGrid& grid,
                                        double far_value) {
  std::vector<double> out;
  kernels::image_kernel_apply_recursive(f, grid, 1.0, far_value, out);
  return out;
}

double kernel_truncation_estimate(const std::vector<double>& f) {
  return f.empty() ? 0.0 : 0.5 * std::abs(f.back());
}

void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n)
    throw ShapeError("solve_tridiagonal: band sizes differ");
  std::vector<double> c(n);
  double beta = diag[0];
  rhs[0] /= beta;
  for (std::size_t i = 1; i < n; ++i) {
    c[i - 1] = upper[i - 1] / beta;
    beta = diag[i] - lower[i] * c[i - 1];
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

std::vector<double> centered_difference(const std::vector<double>& u, double h) {
  const std::size_t n = u.size();
  if (n < 3) throw ShapeError("centered_difference needs 3 nodes");
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> solve_Q_1d(const std::vector<double>& U, const HalfLineGrid& grid) {
  const std::size_t n = grid.n;
  if (U.size() != n) throw ShapeError("solve_Q_1d: U does not match grid");
  const double h = grid.h;
  const double ih2 = 1.0 / (h * h);
  // Unknowns Q_0 .. Q_{n-2}; Q_{n-1} = 0.
  const std::size_t m = n - 1;
  std::vector<double> lo(m, -ih2), di(m, 1.0 + 2.0 * ih2), up(m, -ih2), rhs(m);
  lo[0] = 0.0;
  up[0] = -2.0 * ih2;
  up[m - 1] = 0.0;
  rhs[0] = -(U[1] - U[0]) / h;
  for (std::size_t i = 1; i < m; ++i) rhs[i] = -(U[i + 1] - U[i - 1]) / (2.0 * h);
  solve_tridiagonal(lo, di, up, rhs);
  rhs.push_back(0.0);
  return rhs;
}

// ------------------------------------------------------------- 2D solve ----

DivpSolver::DivpSolver(const HalfPlaneGrid& grid, Exec exec)
    : grid_(grid), exec_(exec), modes_(grid.ny / 2 + 1) {
  if (grid.ny < 4 || (grid.ny & (grid.ny - 1)) != 0)
    throw ConfigError("ny must be a power of two (>= 4)");
  real_buf_ = fftw_alloc_real(grid.size());
  auto* spec = fftw_alloc_complex(grid.nx * modes_);
  spec_buf_ = spec;
  const int n[1] = {static_cast<int>(grid.ny)};
  const int howmany = static_cast<int>(grid.nx);
  forward_ = fftw_plan_many_dft_r2c(1, n, howmany, real_buf_, nullptr, 1, static_cast<int>(grid.ny),
                                    spec, nullptr, 1, static_cast<int>(modes_), FFTW_ESTIMATE);
  backward_ = fftw_plan_many_dft_c2r(1, n, howmany, spec, nullptr, 1, static_cast<int>(modes_),
                                     real_buf_, nullptr, 1, static_cast<int>(grid.ny), FFTW_ESTIMATE);
}

DivpSolver::~DivpSolver() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  fftw_free(real_buf_);
  fftw_free(spec_buf_);
}

namespace {

// (1 - D_xx + lambda) s = (lambda - D_xx) v on interior nodes, s = 0 at both ends.
// v and s are interleaved (re, im) pairs with the given stride in pairs.
void solve_mode(const double* v, std::size_t nx, std::size_t stride, double hx,
                double lambda, fftw_complex* s) {
  const std::size_t m = nx - 2;
  const double ih2 = 1.0 / (hx * hx);
  std::vector<double> lo(m, -ih2), di(m, 1.0 + 2.0 * ih2 + lambda), up(m, -ih2);
  lo[0] = 0.0;
  up[m - 1] = 0.0;
  for (int part = 0; part < 2; ++part) {
    std::vector<double> rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = k + 1;
      const double vm = v[2 * (i - 1) * stride + part];
      const double v0 = v[2 * i * stride + part];
      const double vp = v[2 * (i + 1) * stride + part];
      rhs[k] = lambda * v0 - (vm - 2.0 * v0 + vp) * ih2;
    }
    solve_tridiagonal(lo, di, up, rhs);
    s[0][part] = 0.0;
    s[(nx - 1) * stride][part] = 0.0;
    for (std::size_t k = 0; k < m; ++k) s[(k + 1) * stride][part] = rhs[k];
  }
}

}  // namespace

void DivpSolver::solve(const std::vector<double>& v, DivpFields& out) {
  const std::size_t nx = grid_.nx;
  const std::size_t ny = grid_.ny;
  if (v.size() != grid_.size()) throw ShapeError("solve_divp_2d: field size mismatch");

  // y-mean and the fluctuation part.
  std::vector<double> mean(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    double acc = 0.0;
    bool flat = true;
    for (std::size_t j = 0; j < ny; ++j) {
      acc += v[i * ny + j];
      flat = flat && v[i * ny + j] == v[i * ny];
    }
    // A flat row must reproduce its value exactly (planar data stay planar).
    mean[i] = flat ? v[i * ny] : acc / static_cast<double>(ny);
  }
  const std::vector<double> q_mean = solve_Q_1d(mean, grid_.line());
  std::vector<double> s_mean = centered_difference(q_mean, grid_.hx);
  s_mean[0] = 0.0;

  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) real_buf_[i * ny + j] = v[i * ny + j] - mean[i];
  fftw_execute(static_cast<fftw_plan>(forward_));
  auto* spec = static_cast<fftw_complex*>(spec_buf_);
  std::vector<double> vhat(2 * nx * modes_);
  std::memcpy(vhat.data(), spec, vhat.size() * sizeof(double));

  const double hy = grid_.hy;
  const auto mcount = static_cast<long>(modes_);
  auto body = [&](long mm) {
    const auto m = static_cast<std::size_t>(mm);
    if (m == 0) {
      for (std::size_t i = 0; i < nx; ++i) spec[i * modes_][0] = spec[i * modes_][1] = 0.0;
      return;
    }
    const double sn = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(ny));
    const double lambda = 4.0 * sn * sn / (hy * hy);
    solve_mode(vhat.data() + 2 * m, nx, modes_, grid_.hx, lambda, spec + m);
  };
  if (exec_ == Exec::serial) {
    for (long m = 0; m < mcount; ++m) body(m);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long m = 0; m < mcount; ++m) body(m);
  }
  fftw_execute(static_cast<fftw_plan>(backward_));

  const std::size_t total = grid_.size();
  out.s.resize(total);
  out.p1.resize(total);
  out.p2.resize(total);
  // phi = s' - v' (fluctuations only); s = s_mean + s'.
  std::vector<double> phi(total);
  const double norm = 1.0 / static_cast<double>(ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t k = i * ny + j;
      const double s_fluct = real_buf_[k] * norm;
      out.s[k] = s_mean[i] + s_fluct;
      phi[k] = s_fluct - (v[k] - mean[i]);
    }
  const double hx = grid_.hx;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t k = i * ny + j;
      double dx;
      if (i == 0) dx = (-3.0 * phi[k] + 4.0 * phi[k + ny] - phi[k + 2 * ny]) / (2.0 * hx);
      else if (i == nx - 1) dx = (3.0 * phi[k] - 4.0 * phi[k - ny] + phi[k - 2 * ny]) / (2.0 * hx);
      else dx = (phi[k + ny] - phi[k - ny]) / (2.0 * hx);
      const std::size_t jp = (j + 1) % ny;
      const std::size_t jm = (j + ny - 1) % ny;
      out.p1[k] = q_mean[i] + dx;
      out.p2[k] = (phi[i * ny + jp] - phi[i * ny + jm]) / (2.0 * hy);
    }
}

DivpFields solve_divp_2d(const std::vector<double>& v, const HalfPlaneGrid& grid) {
  DivpSolver solver(grid);
  DivpFields out;
  solver.solve(v, out);
  return out;
}

namespace {

template <class Dy, class Dx>
double curl_max(const HalfPlaneGrid& grid, std::size_t i0, std::size_t i1, Dy dy, Dx dx) {
  double m = 0.0;
  for (std::size_t i = i0; i < i1; ++i)
    for (std::size_t j = 0; j < grid.ny; ++j) m = std::max(m, std::abs(dy(i, j) - dx(i, j)));
  return m;
}

}  // namespace

double curl_residual(const DivpFields& p, const HalfPlaneGrid& grid) {
  const std::size_t nx = grid.nx, ny = grid.ny;
  const double hx = grid.hx, hy = grid.hy;
  auto at = [&](const std::vector<double>& f, std::size_t i, std::size_t j) {
    return f[i * ny + (j % ny)];
  };
  auto dy = [&](std::size_t i, std::size_t j) {
    return (at(p.p1, i, j + 1) - at(p.p1, i, j + ny - 1)) / (2.0 * hy);
  };
  auto dx = [&](std::size_t i, std::size_t j) {
    if (i == 0) return (-3.0 * at(p.p2, 0, j) + 4.0 * at(p.p2, 1, j) - at(p.p2, 2, j)) / (2.0 * hx);
    if (i == nx - 1)
      return (3.0 * at(p.p2, i, j) - 4.0 * at(p.p2, i - 1, j) + at(p.p2, i - 2, j)) / (2.0 * hx);
    return (at(p.p2, i + 1, j) - at(p.p2, i - 1, j)) / (2.0 * hx);
  };
  return curl_max(grid, 0, nx, dy, dx);
}

double curl_residual_fourth_order(const DivpFields& p, const HalfPlaneGrid& grid) {
  const std::size_t nx = grid.nx, ny = grid.ny;
  const double hx = grid.hx, hy = grid.hy;
  auto at = [&](const std::vector<double>& f, std::size_t i, std::size_t j) {
    return f[i * ny + (j % ny)];
  };
  auto dy = [&](std::size_t i, std::size_t j) {
    return (-at(p.p1, i, j + 2) + 8.0 * at(p.p1, i, j + 1) - 8.0 * at(p.p1, i, j + ny - 1) +
            at(p.p1, i, j + ny - 2)) / (12.0 * hy);
  };
  auto dx = [&](std::size_t i, std::size_t j) {
    return (-at(p.p2, i + 2, j) + 8.0 * at(p.p2, i + 1, j) - 8.0 * at(p.p2, i - 1, j) +
            at(p.p2, i - 2, j)) / (12.0 * hx);
  };
  return curl_max(grid, 2, nx - 2, dy, dx);
}

}  // namespace radgas
