#pragma once

#include <cstddef>

namespace radgas {

// Selects the OpenMP kernel or its serial reference.
enum class Exec { serial, parallel };

// Uniform nodes x_j = j h, j = 0..n-1, on [0, L].
struct HalfLineGrid {
  std::size_t n = 0;
  double h = 0.0;

  // Validates h > 0 and n >= 16; throws ConfigError.
  static HalfLineGrid make(std::size_t n, double length);
  static HalfLineGrid with_spacing(double h, double length);

  double length() const { return static_cast<double>(n - 1) * h; }
  double x(std::size_t j) const { return static_cast<double>(j) * h; }
};

// x_i = i hx on [0, Lx] (nodes), y_j = j hy on the period [0, Ly), Ly = ny hy.
// Storage is x-major: index(i, j) = i * ny + j.
struct HalfPlaneGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double hx = 0.0;
  double hy = 0.0;

  // ny must be a power of two; throws ConfigError.
  static HalfPlaneGrid make(std::size_t nx, std::size_t ny, double lx, double ly);

  double lx() const { return static_cast<double>(nx - 1) * hx; }
  double ly() const { return static_cast<double>(ny) * hy; }
  double x(std::size_t i) const { return static_cast<double>(i) * hx; }
  double y(std::size_t j) const { return static_cast<double>(j) * hy; }
  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * ny + j; }
  HalfLineGrid line() const { return HalfLineGrid{nx, hx}; }
};

}  // namespace radgas
