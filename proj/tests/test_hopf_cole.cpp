#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radgas/errors.hpp"
#include "radgas/hopf_cole.hpp"

using namespace radgas;

namespace {

// w = -2 phi_x / phi with phi the heat evolution of exp(-1/2 int_0^y w0).
// For data (0, 1): w = int (x - y)/t E dy / int E dy, E = exp(-(x-y)^2/4t - max(y,0)/2).
double cole_quadrature_0_1(double x, double t) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double reach = 40.0 * std::sqrt(t) + std::abs(x) + 10.0 * t;
  auto e = [&](double y) { return std::exp(-(x - y) * (x - y) / (4 * t) - 0.5 * std::max(y, 0.0)); };
  auto num = [&](double y) { return (x - y) / t * e(y); };
  double top = 0, bot = 0;
  for (auto [a, b] : {std::pair{-reach, 0.0}, std::pair{0.0, reach}}) {
    top += Quad::integrate(num, a, b, 15, 1e-14);
    bot += Quad::integrate(e, a, b, 15, 1e-14);
  }
  return top / bot;
}

}  // namespace

TEST_CASE("log_erfcx") {
  CHECK(log_erfcx(0.0) == doctest::Approx(0.0));
  CHECK(log_erfcx(1.0) == doctest::Approx(std::log(std::exp(1.0) * std::erfc(1.0))).epsilon(1e-14));
  CHECK(log_erfcx(-2.0) == doctest::Approx(std::log(std::exp(4.0) * std::erfc(-2.0))).epsilon(1e-14));
  // Large positive z: erfcx(z) ~ 1/(z sqrt(pi)).
  CHECK(log_erfcx(1e6) == doctest::Approx(-std::log(1e6 * std::sqrt(M_PI))).epsilon(1e-10));
  CHECK(std::isfinite(log_erfcx(-1e3)));
}

TEST_CASE("symmetric data vanish at the origin") {
  const HopfCole hc(-1.0, 1.0);
  for (double t : {0.1, 1.0, 10.0, 1000.0}) CHECK(std::abs(hc.value(0.0, t)) < 1e-15);
}

TEST_CASE("far field and step data") {
  const HopfCole hc(0.25, 1.0);
  CHECK(hc.value(1e4, 1.0) == doctest::Approx(1.0));
  CHECK(hc.value(-1e4, 1.0) == doctest::Approx(0.25));
  CHECK(hc.value(-1.0, 0.0) == 0.25);
  CHECK(hc.value(1.0, 0.0) == 1.0);
  CHECK(hc.value(0.0, 0.0) == doctest::Approx(0.625));
}

TEST_CASE("no NaN at extreme arguments") {
  const HopfCole hc(0.1, 3.0);
  for (double x : {-1e8, -1e3, 0.0, 1e3, 1e8})
    for (double t : {1e-8, 1e-3, 1.0, 1e6}) {
      CHECK(std::isfinite(hc.value(x, t)));
      for (int k = 0; k <= 4; ++k)
        for (int l = 0; k + l <= 4; ++l) CHECK(std::isfinite(hc.derivative(x, t, k, l)));
    }
}

TEST_CASE("excess keeps relative precision near the left state") {
  const HopfCole hc(0.1, 0.3);
  // Far behind the fan the excess underflows the plain difference.
  const double e = hc.excess(0.0, 20000.0);
  CHECK(e > 0.0);
  CHECK(e < 1e-18);
  CHECK(hc.value(0.0, 20000.0) - 0.1 < 1e-16);
  CHECK(hc.value(0.0, 100.0) - 0.1 == doctest::Approx(hc.excess(0.0, 100.0)).epsilon(1e-10));
}

TEST_CASE("order limits") {
  const HopfCole hc(0.0, 1.0);
  CHECK_THROWS_AS(hc.derivative(1.0, 1.0, 3, 2), UnsupportedOrderError);
  CHECK_THROWS_AS(hopf_cole_wtilde(0.0, 1.0, 1.0, 1.0, 5, 0), UnsupportedOrderError);
}

TEST_CASE("closed form matches heat-kernel quadrature") {
  CHECK(std::abs(hopf_cole_wtilde(0.0, 1.0, 1.0, 1.0, 0, 0) - cole_quadrature_0_1(1.0, 1.0)) < 1e-8);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> px(0.0, 20.0), plogt(std::log(0.1), std::log(100.0));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = px(rng), t = std::exp(plogt(rng));
    worst = std::max(worst, std::abs(hopf_cole_wtilde(0.0, 1.0, x, t, 0, 0) - cole_quadrature_0_1(x, t)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("derivatives agree with finite differences") {
  const HopfCole hc(0.2, 1.0);
  const double x = 1.3, t = 2.0;
  // Richardson-extrapolated centered differences.
  auto fd_x = [&](int k, int l, double h) {
    return (hc.derivative(x + h, t, k, l) - hc.derivative(x - h, t, k, l)) / (2 * h);
  };
  auto fd_t = [&](int k, int l, double h) {
    return (hc.derivative(x, t + h, k, l) - hc.derivative(x, t - h, k, l)) / (2 * h);
  };
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; k + l <= 3; ++l) {
      const double h = 1e-3;
      const double rx = (4 * fd_x(k, l, h / 2) - fd_x(k, l, h)) / 3;
      const double rt = (4 * fd_t(k, l, h / 2) - fd_t(k, l, h)) / 3;
      CHECK(hc.derivative(x, t, k + 1, l) == doctest::Approx(rx).epsilon(1e-7).scale(1.0));
      CHECK(hc.derivative(x, t, k, l + 1) == doctest::Approx(rt).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("Burgers residual from the analytic derivatives") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> px(0.0, 20.0), plogt(std::log(0.1), std::log(100.0));
  for (auto [wm, wp] : {std::pair{0.1, 0.3}, std::pair{-1.0, 1.0}, std::pair{0.0, 2.0}}) {
    const HopfCole hc(wm, wp);
    double worst = 0.0, worst_direct = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = px(rng), t = std::exp(plogt(rng));
      const Jet2 j = hc.jet(x, t);
      const double transport = j.derivative(1, 0) * j.value() - j.derivative(2, 0);
      worst = std::max(worst, std::abs(j.derivative(0, 1) + transport));
      worst_direct = std::max(worst_direct, std::abs(hc.t_derivative_direct(x, t) + transport));
      // Mixed derivative through the PDE: w_xt = (w_xx - w w_x)_x.
      const double wxt = j.derivative(3, 0) - j.derivative(1, 0) * j.derivative(1, 0) -
                         j.value() * j.derivative(2, 0);
      CHECK(std::abs(j.derivative(1, 1) - wxt) < 1e-10);
    }
    CHECK(worst < 1e-12);
    CHECK(worst_direct < 1e-6);
  }
}
