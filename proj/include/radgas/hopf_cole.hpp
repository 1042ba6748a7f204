#pragma once

#include <cstddef>
#include <vector>

#include "radgas/jet.hpp"

namespace radgas {

// log(exp(z^2) erfc(z)) for any real z without overflow.
double log_erfcx(double z);

// Closed-form solution of the viscous Burgers Riemann problem
//   w_t + w w_x = w_xx,  w(x,0) = w_minus (x < 0), w_plus (x > 0)
// via the Cole transform w = -2 (log phi)_x. With
//   z- = (x - w_minus t)/(2 sqrt t),  z+ = (x - w_plus t)/(2 sqrt t)
// the value is w = w_minus + (w_plus - w_minus) b where
//   b = 1 / (1 + erfcx(z-)/erfcx(-z+)).
// All quantities are assembled from log erfcx, so no finite input yields NaN.
class HopfCole {
 public:
  HopfCole(double w_minus, double w_plus);

  double w_minus() const { return w_minus_; }
  double w_plus() const { return w_plus_; }

  // t = 0 returns the step data (midpoint at x = 0).
  double value(double x, double t) const;

  // w - w_minus with full relative precision (no cancellation near the left state).
  double excess(double x, double t) const;

  // d^k_x d^l_t w, k + l <= 4, t > 0.
  double derivative(double x, double t, int k, int l) const;

  // Taylor coefficients in x of w around x, up to `order`. Obtained from the
  // closed ODE system satisfied by the normalized Cole-transform pieces.
  std::vector<double> x_series(double x, double t, std::size_t order) const;

  // All derivatives with k + l <= 4. Time derivatives come from substituting
  // w_t = w_xx - w w_x recursively into the x-series.
  Jet2 jet(double x, double t) const;

  // w_t from differentiating the Cole transform in t directly; independent of
  // the x-series route and used to check the PDE residual.
  double t_derivative_direct(double x, double t) const;

 private:
  struct Seeds {
    double a;  // left heat-kernel mass fraction A/(A+B)
    double b;  // right fraction B/(A+B)
    double g;  // G(x,t)/(A+B)
  };
  Seeds seeds(double x, double t) const;

  double w_minus_;
  double w_plus_;
};

// Free-function form: d^k_x d^l_t w~(x, t) for data (w_minus, w_plus).
double hopf_cole_wtilde(double w_minus, double w_plus, double x, double t, int k, int l);

}  // namespace radgas
