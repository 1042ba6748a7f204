#pragma once

#include <cstddef>
#include <vector>

#include "radgas/flux_model.hpp"
#include "radgas/grid.hpp"

// Data-parallel inner loops. Each kernel has a serial reference path and an
// OpenMP path selected by Exec; both perform the same arithmetic per output
// entry, so their results agree bitwise.
namespace radgas::kernels {

// How a line is closed beyond its end nodes.
enum class LineClosure {
  // left ghost by linear extrapolation, right ghost by zero gradient
  inflow_outflow,
  periodic,
};

// out[j] = (F_{j+1/2} - F_{j-1/2}) / h with MUSCL-minmod reconstruction and
// the local Lax-Friedrichs flux. Reads n values at `u[j * stride]`, writes to
// `out[j * out_stride]`.
void flux_divergence_line(const double* u, std::size_t stride, std::size_t n, double h,
                          const Flux& f, LineClosure closure, double* out,
                          std::size_t out_stride);

// Same on a contiguous half-line array (inflow/outflow closure). The parallel
// path splits the interface loop across threads.
void flux_divergence(const std::vector<double>& u, double h, const Flux& f, Exec exec,
                     std::vector<double>& out);

// Along x (inflow/outflow) and y (periodic) on an x-major half-plane array:
// out = d_x f(u) + d_y g(u). Parallel over lines.
void flux_divergence_2d(const std::vector<double>& u, const HalfPlaneGrid& grid,
                        const Flux& f, const Flux& g, Exec exec, std::vector<double>& out);

// g(x_i) = 1/2 sum_j w_ij (e^{-|x_i - y_j|} + sign e^{-(x_i + y_j)}) f_j with
// composite Simpson weights split at y = x_i. O(n^2). `far_value` is the constant f is
// assumed to take beyond L; its exact tail integral is added.
void image_kernel_apply(const std::vector<double>& f, const HalfLineGrid& grid, double sign,
                        double far_value, Exec exec, std::vector<double>& out);

// The same quadrature evaluated in O(n) by running the exponential sums
// recursively from both ends (sequential; rounding differs from the direct sum).
void image_kernel_apply_recursive(const std::vector<double>& f, const HalfLineGrid& grid,
                                  double sign, double far_value, std::vector<double>& out);

// Composite Simpson weight (in units of h) of local node k on a segment of m
// intervals; odd m > 1 closes with the 3/8 rule, m = 1 is the trapezoid.
double segment_weight(std::size_t m, std::size_t k);

// max |f'(u_j)|.
double max_speed(const std::vector<double>& u, const Flux& f);

}  // namespace radgas::kernels
