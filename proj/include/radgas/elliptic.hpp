#pragma once

#include <cstddef>
#include <vector>

#include "radgas/grid.hpp"

namespace radgas {

// K f: Dirichlet inverse of (1 - d_xx) on the half-line,
// kernel 1/2 (e^{-|x-y|} - e^{-(x+y)}). g(0) = 0.
std::vector<double> k_dirichlet(const std::vector<double>& f, const HalfLineGrid& grid,
                                Exec exec = Exec::parallel, double far_value = 0.0);

// Neumann inverse, kernel 1/2 (e^{-|x-y|} + e^{-(x+y)}). g'(0) = 0.
std::vector<double> k_neumann(const std::vector<double>& f, const HalfLineGrid& grid,
                              Exec exec = Exec::parallel, double far_value = 0.0);

// Same quadratures evaluated in O(n) by exponential recursion.
std::vector<double> k_dirichlet_recursive(const std::vector<double>& f, const HalfLineGrid& grid,
                                          double far_value = 0.0);
std::vector<double> k_neumann_recursive(const std::vector<double>& f, const HalfLineGrid& grid,
                                        double far_value = 0.0);

// Largest possible kernel contribution of the region beyond L that the grid
// does not see, for f continued by its last sample: 1/2 |f(L)| e^{-(L - x)} at x = L.
double kernel_truncation_estimate(const std::vector<double>& f);

// Solves a x_{i-1} + b x_i + c x_{i+1} = d in place of d (Thomas; no pivoting).
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs);

// Centered first difference in the interior, one-sided second order at the ends.
std::vector<double> centered_difference(const std::vector<double>& u, double h);

// -Q'' + Q = -U_x on [0, L]: second-order differences, ghost node Q_{-1} = Q_1
// at x = 0 (Q_x(0) = 0), Q(L) = 0. The interior right-hand side uses the
// centered difference of U; the boundary row uses (U_1 - U_0)/h.
std::vector<double> solve_Q_1d(const std::vector<double>& U, const HalfLineGrid& grid);

// Fields of the half-plane elliptic constraint, x-major like the input.
struct DivpFields {
  std::vector<double> s;   // div p
  std::vector<double> p1;
  std::vector<double> p2;
};

// Solves -grad div p + p + grad v = 0 with div p(0, y) = 0, periodic in y,
// through (1 - Lap) s = -Lap v for s = div p and p = grad(s - v). The y-mean
// follows the half-line path exactly (p1 = solve_Q_1d, s = centered diff of p1,
// p2 = 0), so y-independent data reproduce the 1D solve bit for bit.
// Holds FFT plans and scratch; use one instance per worker.
class DivpSolver {
 public:
  DivpSolver(const HalfPlaneGrid& grid, Exec exec = Exec::parallel);
  ~DivpSolver();
  DivpSolver(const DivpSolver&) = delete;
  DivpSolver& operator=(const DivpSolver&) = delete;

  void solve(const std::vector<double>& v, DivpFields& out);
  const HalfPlaneGrid& grid() const { return grid_; }

 private:
  HalfPlaneGrid grid_;
  Exec exec_;
  std::size_t modes_;
  double* real_buf_;
  void* spec_buf_;
  void* forward_;
  void* backward_;
};

DivpFields solve_divp_2d(const std::vector<double>& v, const HalfPlaneGrid& grid);

// max |D_y p1 - D_x p2| with the same centered stencils used to build p.
double curl_residual(const DivpFields& p, const HalfPlaneGrid& grid);

// Same with fourth-order centered stencils on interior rows i = 2..nx-3; this
// measures the O(h^2) consistency error of the discrete field.
double curl_residual_fourth_order(const DivpFields& p, const HalfPlaneGrid& grid);

}  // namespace radgas
