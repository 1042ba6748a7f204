#include "radgas/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "radgas/errors.hpp"
#include "radgas/kernels.hpp"

namespace radgas {

const char* to_string(Formulation f) {
  return f == Formulation::coupled ? "coupled" : "convolution";
}

namespace {

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

constexpr double kRelaxationDtCap = 1.0;

}  // namespace

Evolver1D::Evolver1D(FluxPair flux, RiemannData data, HalfLineGrid grid, Formulation form,
                     double cfl, Exec exec)
    : flux_(std::move(flux)), data_(data), grid_(grid), form_(form), cfl_(cfl), exec_(exec) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CFL number must lie in (0, 1]");
  lift_kernel_.resize(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i) {
    const double x = grid_.x(i);
    lift_kernel_[i] = (data_.u_plus - data_.u_minus) * 0.5 * x * std::exp(-x);
  }
}

State1D Evolver1D::make_state(std::vector<double> U, double t) const {
  if (U.size() != grid_.n) throw ShapeError("initial data does not match grid");
  U[0] = data_.u_minus;
  State1D s;
  s.grid = grid_;
  s.t = t;
  s.Q = solve_Q_1d(U, grid_);
  s.U = std::move(U);
  s.cfl = cfl_;
  return s;
}

double Evolver1D::max_dt(const State1D& s) const {
  const double speed = kernels::max_speed(s.U, flux_.f);
  const double hyperbolic = speed > 0.0 ? cfl_ * grid_.h / speed : kRelaxationDtCap;
  return std::min(hyperbolic, kRelaxationDtCap);
}

std::vector<double> Evolver1D::relaxation(const std::vector<double>& U) const {
  if (form_ == Formulation::coupled) return centered_difference(solve_Q_1d(U, grid_), grid_.h);
  std::vector<double> w(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i)
    w[i] = U[i] - data_.u_minus - (data_.u_plus - data_.u_minus) * (1.0 - std::exp(-grid_.x(i)));
  w[0] = 0.0;
  const auto kw = k_dirichlet_recursive(w, grid_);
  std::vector<double> qx(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i) qx[i] = w[i] - kw[i] + lift_kernel_[i];
  return qx;
}

void Evolver1D::rhs(const std::vector<double>& U, std::vector<double>& out) const {
  kernels::flux_divergence(U, grid_.h, flux_.f, exec_, out);
  const auto qx = relaxation(U);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i] - qx[i];
  out[0] = 0.0;
}

void Evolver1D::step(State1D& s, double dt) const {
  if (s.U.size() != grid_.n) throw ShapeError("state does not match evolver grid");
  const double limit = max_dt(s);
  if (dt > limit * (1.0 + 1e-12)) throw CflViolation(dt, limit);
  const std::size_t n = grid_.n;
  std::vector<double> k(n), u1(n), u2(n);
  rhs(s.U, k);
  for (std::size_t i = 0; i < n; ++i) u1[i] = s.U[i] + dt * k[i];
  u1[0] = data_.u_minus;
  rhs(u1, k);
  for (std::size_t i = 0; i < n; ++i) u2[i] = 0.5 * s.U[i] + 0.5 * (u1[i] + dt * k[i]);
  u2[0] = data_.u_minus;
  if (!all_finite(u2)) throw NumericalBreakdown(s.t + dt, s.steps + 1);
  auto q = solve_Q_1d(u2, grid_);
  s.U = std::move(u2);
  s.Q = std::move(q);
  s.steps += 1;
  s.t += dt;
}

State1D step_1d_coupled(const FluxPair& flux, const RiemannData& data, const State1D& s,
                        double dt) {
  State1D out = s;
  Evolver1D(flux, data, s.grid, Formulation::coupled, s.cfl).step(out, dt);
  return out;
}

State1D step_1d_convolution(const FluxPair& flux, const RiemannData& data, const State1D& s,
                            double dt) {
  State1D out = s;
  Evolver1D(flux, data, s.grid, Formulation::convolution, s.cfl).step(out, dt);
  return out;
}

// ------------------------------------------------------------------- 2D ----

Evolver2D::Evolver2D(FluxPair flux, RiemannData data, HalfPlaneGrid grid, double cfl, Exec exec)
    : flux_(std::move(flux)), data_(data), grid_(grid), cfl_(cfl), exec_(exec),
      solver_(grid, exec) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CFL number must lie in (0, 1]");
}

State2D Evolver2D::make_state(std::vector<double> u, double t) {
  if (u.size() != grid_.size()) throw ShapeError("initial data does not match grid");
  for (std::size_t j = 0; j < grid_.ny; ++j) u[j] = data_.u_minus;
  State2D s;
  s.grid = grid_;
  s.t = t;
  s.cfl = cfl_;
  solver_.solve(u, scratch_);
  s.q1 = scratch_.p1;
  s.q2 = scratch_.p2;
  s.s = scratch_.s;
  s.u = std::move(u);
  return s;
}

double Evolver2D::max_dt(const State2D& s) const {
  const double sf = kernels::max_speed(s.u, flux_.f);
  const double sg = kernels::max_speed(s.u, flux_.g);
  double dt = kRelaxationDtCap;
  if (sf > 0.0) dt = std::min(dt, cfl_ * grid_.hx / sf);
  if (sg > 0.0) dt = std::min(dt, cfl_ * grid_.hy / sg);
  return dt;
}

void Evolver2D::rhs(const std::vector<double>& u, std::vector<double>& out) {
  kernels::flux_divergence_2d(u, grid_, flux_.f, flux_.g, exec_, out);
  solver_.solve(u, scratch_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -out[k] - scratch_.s[k];
  for (std::size_t j = 0; j < grid_.ny; ++j) out[j] = 0.0;
}

void Evolver2D::step(State2D& s, double dt) {
  if (s.u.size() != grid_.size()) throw ShapeError("state does not match evolver grid");
  const double limit = max_dt(s);
  if (dt > limit * (1.0 + 1e-12)) throw CflViolation(dt, limit);
  const std::size_t n = grid_.size();
  std::vector<double> k(n), u1(n), u2(n);
  rhs(s.u, k);
  for (std::size_t i = 0; i < n; ++i) u1[i] = s.u[i] + dt * k[i];
  for (std::size_t j = 0; j < grid_.ny; ++j) u1[j] = data_.u_minus;
  rhs(u1, k);
  for (std::size_t i = 0; i < n; ++i) u2[i] = 0.5 * s.u[i] + 0.5 * (u1[i] + dt * k[i]);
  for (std::size_t j = 0; j < grid_.ny; ++j) u2[j] = data_.u_minus;
  if (!all_finite(u2)) throw NumericalBreakdown(s.t + dt, s.steps + 1);
  solver_.solve(u2, scratch_);
  s.q1 = scratch_.p1;
  s.q2 = scratch_.p2;
  s.s = scratch_.s;
  s.u = std::move(u2);
  s.steps += 1;
  s.t += dt;
}

State2D step_2d(Evolver2D& evolver, const State2D& s, double dt) {
  State2D out = s;
  evolver.step(out, dt);
  return out;
}

}  // namespace radgas
