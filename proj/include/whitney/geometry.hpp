#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace whitney {

// Points and vectors live in R^3; 2D meshes keep the third coordinate at 0.
using Point = std::array<double, 3>;

inline Point operator+(const Point& a, const Point& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Point operator-(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline Point midpoint(const Point& a, const Point& b) { return 0.5 * (a + b); }

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

inline double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
         m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
         m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Vertex index tuple of a simplex; at most 4 entries used (tets).
using Simplex = std::array<int, 4>;

inline Simplex make_simplex(std::span<const int> v) {
  Simplex s{-1, -1, -1, -1};
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i];
  return s;
}

/// All strictly increasing k-element subsets of {0,...,m-1}, in lexicographic order.
std::vector<Simplex> combinations(int m, int k);

/// Coordinates snapped to the 2^-40 grid; generator coordinates are dyadic so
/// this is exact and makes vertex identification tolerance-free.
inline double snap_coordinate(double x) {
  constexpr double grid = 1099511627776.0;  // 2^40
  return std::round(x * grid) / grid;
}

inline Point snap_point(const Point& p) {
  return {snap_coordinate(p[0]), snap_coordinate(p[1]), snap_coordinate(p[2])};
}

inline std::int64_t quantize_coordinate(double x) {
  constexpr double grid = 1099511627776.0;  // 2^40
  return static_cast<std::int64_t>(std::llround(x * grid));
}

using QuantizedPoint = std::array<std::int64_t, 3>;

inline QuantizedPoint quantize_point(const Point& p) {
  return {quantize_coordinate(p[0]), quantize_coordinate(p[1]), quantize_coordinate(p[2])};
}

}  // namespace whitney
