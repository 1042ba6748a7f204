#include "radgas/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "radgas/errors.hpp"

namespace radgas::kernels {

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double llf(const Flux& f, double ul, double ur) {
  const double a = std::max(std::abs(f.d1(ul)), std::abs(f.d1(ur)));
  return 0.5 * (f(ul) + f(ur)) - 0.5 * a * (ur - ul);
}

// Interface flux between extended nodes e and e+1 of `ext` (two ghosts each side).
double interface_flux(const std::vector<double>& ext, std::size_t e, const Flux& f) {
  const double sl = minmod(ext[e] - ext[e - 1], ext[e + 1] - ext[e]);
  const double sr = minmod(ext[e + 1] - ext[e], ext[e + 2] - ext[e + 1]);
  return llf(f, ext[e] + 0.5 * sl, ext[e + 1] - 0.5 * sr);
}

void fill_extended(const double* u, std::size_t stride, std::size_t n, LineClosure closure,
                   std::vector<double>& ext) {
  ext.resize(n + 4);
  for (std::size_t j = 0; j < n; ++j) ext[j + 2] = u[j * stride];
  if (closure == LineClosure::periodic) {
    ext[1] = ext[n + 1];
    ext[0] = ext[n];
    ext[n + 2] = ext[2];
    ext[n + 3] = ext[3];
  } else {
    ext[1] = 2.0 * ext[2] - ext[3];
    ext[0] = 2.0 * ext[1] - ext[2];
    ext[n + 2] = ext[n + 1];
    ext[n + 3] = ext[n + 1];
  }
}

}  // namespace

void flux_divergence_line(const double* u, std::size_t stride, std::size_t n, double h,
                          const Flux& f, LineClosure closure, double* out,
                          std::size_t out_stride) {
  thread_local std::vector<double> ext;
  fill_extended(u, stride, n, closure, ext);
  // Interface j-1/2 sits between extended nodes j+1 and j+2.
  double left = interface_flux(ext, 1, f);
  for (std::size_t j = 0; j < n; ++j) {
    const double right = interface_flux(ext, j + 2, f);
    out[j * out_stride] = (right - left) / h;
    left = right;
  }
}

void flux_divergence(const std::vector<double>& u, double h, const Flux& f, Exec exec,
                     std::vector<double>& out) {
  const std::size_t n = u.size();
  if (n < 3) throw ShapeError("flux_divergence needs at least 3 nodes");
  out.resize(n);
  if (exec == Exec::serial) {
    flux_divergence_line(u.data(), 1, n, h, f, LineClosure::inflow_outflow, out.data(), 1);
    return;
  }
  std::vector<double> ext;
  fill_extended(u.data(), 1, n, LineClosure::inflow_outflow, ext);
  std::vector<double> flux(n + 1);
  const auto count = static_cast<long>(n + 1);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < count; ++j) flux[static_cast<std::size_t>(j)] = interface_flux(ext, static_cast<std::size_t>(j) + 1, f);
  const auto nn = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < nn; ++j) {
    const auto k = static_cast<std::size_t>(j);
    out[k] = (flux[k + 1] - flux[k]) / h;
  }
}

void flux_divergence_2d(const std::vector<double>& u, const HalfPlaneGrid& grid,
                        const Flux& f, const Flux& g, Exec exec, std::vector<double>& out) {
  const std::size_t nx = grid.nx;
  const std::size_t ny = grid.ny;
  if (u.size() != grid.size()) throw ShapeError("flux_divergence_2d: field size mismatch");
  out.assign(u.size(), 0.0);
  std::vector<double> dy(u.size());
  const auto lines_x = static_cast<long>(ny);
  const auto lines_y = static_cast<long>(nx);
  if (exec == Exec::serial) {
    for (long j = 0; j < lines_x; ++j)
      flux_divergence_line(u.data() + j, ny, nx, grid.hx, f, LineClosure::inflow_outflow,
                           out.data() + j, ny);
    for (long i = 0; i < lines_y; ++i)
      flux_divergence_line(u.data() + i * static_cast<long>(ny), 1, ny, grid.hy, g,
                           LineClosure::periodic, dy.data() + i * static_cast<long>(ny), 1);
  } else {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < lines_x; ++j)
      flux_divergence_line(u.data() + j, ny, nx, grid.hx, f, LineClosure::inflow_outflow,
                           out.data() + j, ny);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < lines_y; ++i)
      flux_divergence_line(u.data() + i * static_cast<long>(ny), 1, ny, grid.hy, g,
                           LineClosure::periodic, dy.data() + i * static_cast<long>(ny), 1);
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += dy[k];
}

double segment_weight(std::size_t m, std::size_t k) {
  if (m == 0) return 0.0;
  if (m == 1) return 0.5;
  if (m % 2 == 0) {
    if (k == 0 || k == m) return 1.0 / 3.0;
    return k % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0;
  }
  // Simpson on [0, m-3], 3/8 rule on [m-3, m].
  const std::size_t s = m - 3;
  double w = 0.0;
  if (k <= s && s > 0) {
    if (k == 0 || k == s) w += 1.0 / 3.0;
    else w += k % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0;
  }
  if (k >= s) {
    const std::size_t r = k - s;
    w += (r == 0 || r == 3) ? 3.0 / 8.0 : 9.0 / 8.0;
  }
  return w;
}

namespace {

double kernel_row(const std::vector<double>& f, std::size_t i, double h, double sign,
                  const std::vector<double>& decay) {
  const std::size_t n = f.size();
  const std::size_t m_left = i;
  const std::size_t m_right = n - 1 - i;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double w = 0.0;
    if (j <= i) w += segment_weight(m_left, j);
    // Mirrored so that the 3/8 closure of an odd segment also sits next to x_i.
    if (j >= i) w += segment_weight(m_right, m_right - (j - i));
    const std::size_t d = j > i ? j - i : i - j;
    acc += w * (decay[d] + sign * decay[i + j]) * f[j];
  }
  return 0.5 * h * acc;
}

}  // namespace

void image_kernel_apply(const std::vector<double>& f, const HalfLineGrid& grid, double sign,
                        double far_value, Exec exec, std::vector<double>& out) {
  const std::size_t n = grid.n;
  if (f.size() != n) throw ShapeError("image_kernel_apply: samples do not match grid");
  out.resize(n);
  // decay[k] = e^{-k h}, k < 2n.
  std::vector<double> decay(2 * n);
  for (std::size_t k = 0; k < decay.size(); ++k) decay[k] = std::exp(-grid.h * static_cast<double>(k));
  const double len = grid.length();
  const auto nn = static_cast<long>(n);
  if (exec == Exec::serial) {
    for (long i = 0; i < nn; ++i)
      out[static_cast<std::size_t>(i)] = kernel_row(f, static_cast<std::size_t>(i), grid.h, sign, decay);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < nn; ++i)
      out[static_cast<std::size_t>(i)] = kernel_row(f, static_cast<std::size_t>(i), grid.h, sign, decay);
  }
  if (far_value != 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.x(i);
      out[i] += 0.5 * far_value * (std::exp(-(len - x)) + sign * std::exp(-(len + x)));
    }
  }
}

namespace {

// Recursive Simpson sums toward node i over the segment [0, i] of
// sum_j w_j decay^{i-j} g_j (decay = e^{-h} or 1), matching segment_weight.
void left_sums(const std::vector<double>& g, double e1, std::vector<double>& out) {
  const std::size_t n = g.size();
  const double e2 = e1 * e1, e3 = e2 * e1;
  out.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = e2 * out[i - 2] + (e2 * g[i - 2] + 4.0 * e1 * g[i - 1] + g[i]) / 3.0;
    } else if (i == 1) {
      out[i] = 0.5 * (e1 * g[0] + g[1]);
    } else {
      out[i] = e3 * out[i - 3] +
               0.375 * (e3 * g[i - 3] + 3.0 * e2 * g[i - 2] + 3.0 * e1 * g[i - 1] + g[i]);
    }
  }
}

// Simpson sums over [i, n-1] (odd counts close with 3/8 next to i).
void right_sums(const std::vector<double>& g, double e1, std::vector<double>& out) {
  std::vector<double> rev(g.rbegin(), g.rend());
  std::vector<double> tmp;
  left_sums(rev, e1, tmp);
  out.assign(tmp.rbegin(), tmp.rend());
}

}  // namespace

void image_kernel_apply_recursive(const std::vector<double>& f, const HalfLineGrid& grid,
                                  double sign, double far_value, std::vector<double>& out) {
  const std::size_t n = grid.n;
  if (f.size() != n) throw ShapeError("image_kernel_apply: samples do not match grid");
  const double e1 = std::exp(-grid.h);
  std::vector<double> direct_left, direct_right, image_left, image_right;
  left_sums(f, e1, direct_left);
  right_sums(f, e1, direct_right);
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = std::exp(-grid.x(j)) * f[j];
  left_sums(g, 1.0, image_left);
  right_sums(g, 1.0, image_right);
  out.resize(n);
  const double len = grid.length();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    out[i] = 0.5 * grid.h *
             (direct_left[i] + direct_right[i] + sign * std::exp(-x) * (image_left[i] + image_right[i]));
    if (far_value != 0.0)
      out[i] += 0.5 * far_value * (std::exp(-(len - x)) + sign * std::exp(-(len + x)));
  }
}

double max_speed(const std::vector<double>& u, const Flux& f) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(f.d1(v)));
  return m;
}

}  // namespace radgas::kernels
