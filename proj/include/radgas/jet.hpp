#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace radgas {

// Truncated Taylor expansion in (x, t) of total degree <= 4 around a point.
// Coefficient (k, l) is d^k_x d^l_t F / (k! l!).
class Jet2 {
 public:
  static constexpr int kOrder = 4;
  static constexpr std::size_t kSize = 15;

  Jet2() { c_.fill(0.0); }
  static Jet2 constant(double v) {
    Jet2 j;
    j.c_[0] = v;
    return j;
  }

  static constexpr std::size_t index(int k, int l) {
    // Row-major in total degree: degree d starts at d(d+1)/2, ordered by l.
    const int d = k + l;
    return static_cast<std::size_t>(d * (d + 1) / 2 + l);
  }

  double coeff(int k, int l) const { return c_[index(k, l)]; }
  double& coeff(int k, int l) { return c_[index(k, l)]; }
  double value() const { return c_[0]; }
  // d^k_x d^l_t F at the expansion point.
  double derivative(int k, int l) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(double s);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);

  // F(this) for a scalar function F given its Taylor coefficients
  // F^(n)(v0)/n! at v0 = value(), n = 0..4.
  Jet2 compose(const std::array<double, 5>& taylor) const;

 private:
  std::array<double, kSize> c_;
};

// Truncated univariate Taylor series helpers (coefficient n is F^(n)/n!).
namespace series {

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b,
                             std::size_t order);
// d/dx of a series, losing one order.
std::vector<double> differentiate(const std::vector<double>& a);

// Taylor coefficients at 0 of the inverse of y(eta) = sum_{n>=1} d_n eta^n,
// truncated at `order` (requires d_1 != 0).
std::vector<double> revert(const std::vector<double>& d, std::size_t order);

}  // namespace series

}  // namespace radgas
