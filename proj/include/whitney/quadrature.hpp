#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "whitney/geometry.hpp"

namespace whitney {

/// Quadrature rule on the reference d-simplex. Points are stored in
/// barycentric coordinates (d+1 entries used) and the weights sum to 1, so
/// integrating f over a physical simplex is volume * sum_q w_q f(x_q).
struct QuadratureRule {
  int dim = 0;
  int degree = 0;
  std::vector<std::array<double, 4>> points;  // barycentric
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre nodes/weights on [0,1]; weights sum to 1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule exact for all polynomials of total degree <= degree on the reference
/// simplex, built as a collapsed (Duffy) tensor product of Gauss rules.
/// dim in {1,2,3}, degree <= 10.
QuadratureRule simplex_rule(int dim, int degree);

/// Unsigned k-volume of a simplex embedded in R^3 (Gram determinant).
double simplex_volume(std::span<const Point> verts);

/// Integral of a scalar function over a physical simplex.
double integrate_on_simplex(const QuadratureRule& rule, std::span<const Point> verts,
                            const std::function<double(const Point&)>& f);

}  // namespace whitney
