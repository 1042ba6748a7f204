#pragma once

#include <memory>
#include <string>
#include <vector>

#include "radgas/elliptic.hpp"
#include "radgas/flux_model.hpp"
#include "radgas/grid.hpp"

namespace radgas {

inline constexpr double kDefaultCfl = 0.4;

struct State1D {
  HalfLineGrid grid;
  double t = 0.0;
  std::vector<double> U;
  std::vector<double> Q;
  double cfl = kDefaultCfl;
  long steps = 0;
};

struct State2D {
  HalfPlaneGrid grid;
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> q1;
  std::vector<double> q2;
  std::vector<double> s;  // div q
  double cfl = kDefaultCfl;
  long steps = 0;
};

enum class Formulation { coupled, convolution };
const char* to_string(Formulation f);

// Text recorded with convolution-route outputs.
inline constexpr const char* kConvolutionLift =
    "Q_x = W - K W + (u_+ - u_-) (x/2) e^{-x}, W = U - u_- - (u_+ - u_-)(1 - e^{-x})";

// Method of lines for U_t + f(U)_x + Q_x = 0 on the half-line with U(0) = u_-:
// MUSCL-minmod + local Lax-Friedrichs in x, SSP-RK2 in time, the elliptic
// term re-solved at every stage.
class Evolver1D {
 public:
  Evolver1D(FluxPair flux, RiemannData data, HalfLineGrid grid, Formulation form,
            double cfl = kDefaultCfl, Exec exec = Exec::parallel);

  // Builds a state at time t from U (U[0] is overwritten with u_-).
  State1D make_state(std::vector<double> U, double t = 0.0) const;
  // cfl h / max|f'(U)|, capped at 1 for the relaxation term.
  double max_dt(const State1D& s) const;
  // One SSP-RK2 step. Throws CflViolation when dt > max_dt, NumericalBreakdown
  // when a NaN/Inf appears; in both cases `s` is left unchanged.
  void step(State1D& s, double dt) const;
  // Q_x as used by the scheme (centered difference of Q, or the kernel form).
  std::vector<double> relaxation(const std::vector<double>& U) const;

  const HalfLineGrid& grid() const { return grid_; }
  Formulation formulation() const { return form_; }

 private:
  void rhs(const std::vector<double>& U, std::vector<double>& out) const;

  FluxPair flux_;
  RiemannData data_;
  HalfLineGrid grid_;
  Formulation form_;
  double cfl_;
  Exec exec_;
  std::vector<double> lift_kernel_;  // (u_+ - u_-) (x/2) e^{-x}
};

State1D step_1d_coupled(const FluxPair& flux, const RiemannData& data, const State1D& s,
                        double dt);
State1D step_1d_convolution(const FluxPair& flux, const RiemannData& data, const State1D& s,
                            double dt);

// u_t + f(u)_x + g(u)_y + div q = 0 on [0, Lx] x periodic [0, Ly).
class Evolver2D {
 public:
  Evolver2D(FluxPair flux, RiemannData data, HalfPlaneGrid grid, double cfl = kDefaultCfl,
            Exec exec = Exec::parallel);

  State2D make_state(std::vector<double> u, double t = 0.0);
  double max_dt(const State2D& s) const;
  void step(State2D& s, double dt);
  const HalfPlaneGrid& grid() const { return grid_; }

 private:
  void rhs(const std::vector<double>& u, std::vector<double>& out);

  FluxPair flux_;
  RiemannData data_;
  HalfPlaneGrid grid_;
  double cfl_;
  Exec exec_;
  DivpSolver solver_;
  DivpFields scratch_;
};

State2D step_2d(Evolver2D& evolver, const State2D& s, double dt);

}  // namespace radgas
