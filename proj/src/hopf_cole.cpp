#include "radgas/hopf_cole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radgas/errors.hpp"

namespace radgas {

// ---------------------------------------------------------------- Jet2 ----

namespace {
constexpr double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace

double Jet2::derivative(int k, int l) const {
  if (k < 0 || l < 0 || k + l > kOrder) throw UnsupportedOrderError("jet order exceeds 4");
  return coeff(k, l) * factorial(k) * factorial(l);
}

Jet2& Jet2::operator+=(const Jet2& o) {
  for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  for (int k1 = 0; k1 <= Jet2::kOrder; ++k1)
    for (int l1 = 0; k1 + l1 <= Jet2::kOrder; ++l1) {
      const double av = a.coeff(k1, l1);
      if (av == 0.0) continue;
      for (int k2 = 0; k1 + l1 + k2 <= Jet2::kOrder; ++k2)
        for (int l2 = 0; k1 + l1 + k2 + l2 <= Jet2::kOrder; ++l2)
          r.coeff(k1 + k2, l1 + l2) += av * b.coeff(k2, l2);
    }
  return r;
}

Jet2 Jet2::compose(const std::array<double, 5>& taylor) const {
  Jet2 delta = *this;
  delta.c_[0] = 0.0;
  Jet2 out = constant(taylor[0]);
  Jet2 power = constant(1.0);
  for (int n = 1; n <= kOrder; ++n) {
    power = power * delta;
    out += power * taylor[static_cast<std::size_t>(n)];
  }
  return out;
}

namespace series {

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b,
                             std::size_t order) {
  std::vector<double> r(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<double> differentiate(const std::vector<double>& a) {
  if (a.size() <= 1) return {0.0};
  std::vector<double> r(a.size() - 1);
  for (std::size_t n = 1; n < a.size(); ++n) r[n - 1] = static_cast<double>(n) * a[n];
  return r;
}

std::vector<double> revert(const std::vector<double>& d, std::size_t order) {
  // eta = (y - sum_{n>=2} d_n eta^n) / d_1, iterated; each pass fixes one order.
  std::vector<double> eta(order + 1, 0.0);
  if (order >= 1) eta[1] = 1.0 / d[1];
  for (std::size_t pass = 2; pass <= order; ++pass) {
    std::vector<double> acc(order + 1, 0.0);
    std::vector<double> power = eta;
    for (std::size_t n = 2; n < d.size() && n <= order; ++n) {
      power = multiply(power, eta, order);
      for (std::size_t k = 0; k <= order; ++k) acc[k] += d[n] * power[k];
    }
    std::vector<double> next(order + 1, 0.0);
    next[1] = 1.0 / d[1];
    for (std::size_t k = 2; k <= order; ++k) next[k] = -acc[k] / d[1];
    eta = next;
  }
  return eta;
}

}  // namespace series

// ----------------------------------------------------------- Hopf-Cole ----

double log_erfcx(double z) {
  if (z < 20.0) {
    // erfc(z) keeps full relative accuracy here; for z < 0 it lies in (1, 2].
    return z * z + std::log(std::erfc(z));
  }
  // Asymptotic expansion erfcx(z) = 1/(z sqrt(pi)) sum (-1)^n (2n-1)!!/(2z^2)^n.
  const double inv = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n <= 10; ++n) {
    term *= -(2.0 * n - 1.0) * inv;
    sum += term;
  }
  return std::log(sum) - std::log(z * std::sqrt(std::numbers::pi));
}

HopfCole::HopfCole(double w_minus, double w_plus) : w_minus_(w_minus), w_plus_(w_plus) {
  if (!(w_minus < w_plus)) throw DomainError("Hopf-Cole data requires w_minus < w_plus");
}

HopfCole::Seeds HopfCole::seeds(double x, double t) const {
  const double st = std::sqrt(t);
  const double z_minus = (x - w_minus_ * t) / (2.0 * st);
  const double z_plus = (x - w_plus_ * t) / (2.0 * st);
  // A/B (left vs right heat-kernel mass) = erfcx(z-)/erfcx(-z+); G/A, G/B follow.
  const double l_minus = log_erfcx(z_minus);
  const double l_plus = log_erfcx(-z_plus);
  const double ell = l_minus - l_plus;
  Seeds s;
  if (ell > 0.0) {
    const double e = std::exp(-ell);
    s.b = e / (1.0 + e);
    s.a = 1.0 / (1.0 + e);
  } else {
    const double e = std::exp(ell);
    s.b = 1.0 / (1.0 + e);
    s.a = e / (1.0 + e);
  }
  const double hi = std::max(l_minus, l_plus);
  const double lse = hi + std::log(std::exp(l_minus - hi) + std::exp(l_plus - hi));
  s.g = std::exp(-0.5 * std::log(std::numbers::pi * t) - lse);
  return s;
}

std::vector<double> HopfCole::x_series(double x, double t, std::size_t order) const {
  if (!(t > 0.0)) throw DomainError("Hopf-Cole derivatives require t > 0");
  const Seeds s0 = seeds(x, t);
  const double dw = w_plus_ - w_minus_;
  std::vector<double> a(order + 1, 0.0), b(order + 1, 0.0), g(order + 1, 0.0);
  a[0] = s0.a;
  b[0] = s0.b;
  g[0] = s0.g;
  // b' = g - (dw/2) a b,  g' = g (w - x/t) / 2,  a' = -b',  w = w- + dw b.
  for (std::size_t k = 0; k < order; ++k) {
    double ab = 0.0;
    double gs = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      ab += a[i] * b[k - i];
      double s_coeff = dw * b[k - i];
      if (k - i == 0) s_coeff += w_minus_ - x / t;
      if (k - i == 1) s_coeff -= 1.0 / t;
      gs += g[i] * s_coeff;
    }
    const double kp1 = static_cast<double>(k + 1);
    b[k + 1] = (g[k] - 0.5 * dw * ab) / kp1;
    a[k + 1] = -b[k + 1];
    g[k + 1] = 0.5 * gs / kp1;
  }
  std::vector<double> w(order + 1);
  w[0] = w_minus_ + dw * b[0];
  for (std::size_t k = 1; k <= order; ++k) w[k] = dw * b[k];
  return w;
}

Jet2 HopfCole::jet(double x, double t) const {
  constexpr int N = Jet2::kOrder;
  // x-series of d^l_t w for l = 0..N; the l-th is valid to order 2(N-l)+... we
  // only need total degree N, so start from order 2N.
  std::vector<std::vector<double>> s(N + 1);
  s[0] = x_series(x, t, 2 * N);
  for (int l = 0; l < N; ++l) {
    // d_t^{l+1} w = d_xx (d_t^l w) - sum_j C(l,j) d_t^j w * d_x d_t^{l-j} w.
    const std::size_t order = 2 * N - 2 * (l + 1);
    std::vector<double> next = series::differentiate(series::differentiate(s[l]));
    next.resize(order + 1);
    double binom = 1.0;
    for (int j = 0; j <= l; ++j) {
      const auto prod = series::multiply(s[j], series::differentiate(s[l - j]), order);
      for (std::size_t k = 0; k <= order; ++k) next[k] -= binom * prod[k];
      binom = binom * (l - j) / (j + 1);
    }
    s[l + 1] = std::move(next);
  }
  Jet2 out;
  for (int l = 0; l <= N; ++l)
    for (int k = 0; k + l <= N; ++k)
      out.coeff(k, l) = s[l][static_cast<std::size_t>(k)] / factorial(l);
  return out;
}

double HopfCole::value(double x, double t) const {
  if (t < 0.0) throw DomainError("Hopf-Cole evaluation requires t >= 0");
  if (t == 0.0) {
    if (x < 0.0) return w_minus_;
    if (x > 0.0) return w_plus_;
    return 0.5 * (w_minus_ + w_plus_);
  }
  return w_minus_ + (w_plus_ - w_minus_) * seeds(x, t).b;
}

double HopfCole::excess(double x, double t) const {
  if (t < 0.0) throw DomainError("Hopf-Cole evaluation requires t >= 0");
  if (t == 0.0) return x < 0.0 ? 0.0 : (x > 0.0 ? w_plus_ - w_minus_ : 0.5 * (w_plus_ - w_minus_));
  return (w_plus_ - w_minus_) * seeds(x, t).b;
}

double HopfCole::derivative(double x, double t, int k, int l) const {
  if (k < 0 || l < 0 || k + l > Jet2::kOrder)
    throw UnsupportedOrderError("Hopf-Cole derivatives supported for k + l <= 4");
  if (k == 0 && l == 0) return value(x, t);
  if (!(t > 0.0)) throw DomainError("Hopf-Cole derivatives require t > 0");
  if (l == 0) {
    const auto w = x_series(x, t, static_cast<std::size_t>(k));
    return w[static_cast<std::size_t>(k)] * factorial(k);
  }
  return jet(x, t).derivative(k, l);
}

double HopfCole::t_derivative_direct(double x, double t) const {
  if (!(t > 0.0)) throw DomainError("Hopf-Cole derivatives require t > 0");
  // Differentiating the two heat-kernel integrals in t directly:
  // b_t = ab (w+^2 - w-^2)/4 - g (x + w+ t)/(2t) + b dw g / 2.
  const Seeds s = seeds(x, t);
  const double dw = w_plus_ - w_minus_;
  const double bt = 0.25 * s.a * s.b * (w_plus_ * w_plus_ - w_minus_ * w_minus_) -
                    s.g * (x + w_plus_ * t) / (2.0 * t) + 0.5 * s.b * dw * s.g;
  return dw * bt;
}

double hopf_cole_wtilde(double w_minus, double w_plus, double x, double t, int k, int l) {
  return HopfCole(w_minus, w_plus).derivative(x, t, k, l);
}

}  // namespace radgas
