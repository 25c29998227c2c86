#include "whitney/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace whitney {

std::vector<Simplex> combinations(int m, int k) {
  std::vector<Simplex> out;
  if (k < 0 || k > m) return out;
  Simplex c{-1, -1, -1, -1};
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == m - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = 0.5 * (1.0 - x);  // mirror so nodes ascend on [0,1]
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

QuadratureRule simplex_rule(int dim, int degree) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("simplex_rule: dim must be 1, 2 or 3");
  if (degree < 0 || degree > 10) throw std::invalid_argument("simplex_rule: degree must be <= 10");

  // Duffy map from the unit cube: the Jacobian (1-x1)^(d-1)(1-x2)^(d-2)...
  // raises the per-axis degree, so axis j needs points for degree p + d - 1 - j.
  QuadratureRule rule;
  rule.dim = dim;
  rule.degree = degree;

  std::array<std::vector<double>, 3> nodes, weights;
  for (int j = 0; j < dim; ++j) {
    int axis_degree = degree + dim - 1 - j;
    int q = axis_degree / 2 + 1;  // Gauss with q points is exact to 2q-1
    gauss_legendre(q, nodes[j], weights[j]);
  }

  std::array<std::size_t, 3> count{1, 1, 1};
  std::size_t total = 1;
  for (int j = 0; j < dim; ++j) {
    count[j] = nodes[j].size();
    total *= count[j];
  }

  rule.points.reserve(total);
  rule.weights.reserve(total);
  double wsum = 0.0;
  for (std::size_t i0 = 0; i0 < count[0]; ++i0) {
    for (std::size_t i1 = 0; i1 < count[1]; ++i1) {
      for (std::size_t i2 = 0; i2 < count[2]; ++i2) {
        std::array<double, 3> t{nodes[0][i0], dim > 1 ? nodes[1][i1] : 0.0,
                                dim > 2 ? nodes[2][i2] : 0.0};
        // x1 = t1, x2 = t2(1-x1), x3 = t3(1-x1-x2)
        std::array<double, 3> x{0.0, 0.0, 0.0};
        double remaining = 1.0;
        double jac = 1.0;
        for (int j = 0; j < dim; ++j) {
          jac *= remaining;  // dx_j/dt_j, triangular Jacobian
          x[j] = t[j] * remaining;
          remaining -= x[j];
        }
        double w = weights[0][i0] * (dim > 1 ? weights[1][i1] : 1.0) *
                   (dim > 2 ? weights[2][i2] : 1.0) * jac;
        std::array<double, 4> bary{remaining, x[0], dim > 1 ? x[1] : 0.0, dim > 2 ? x[2] : 0.0};
        rule.points.push_back(bary);
        rule.weights.push_back(w);
        wsum += w;
      }
    }
  }
  // Normalize so the weights sum to exactly 1 (reference measure).
  for (double& w : rule.weights) w /= wsum;
  return rule;
}

double simplex_volume(std::span<const Point> verts) {
  const int k = static_cast<int>(verts.size()) - 1;
  if (k == 0) return 1.0;
  std::array<Point, 3> e;
  for (int j = 0; j < k; ++j) e[j] = verts[j + 1] - verts[0];
  std::array<std::array<double, 3>, 3> gram{};
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) gram[a][b] = dot(e[a], e[b]);
  double g = 0.0;
  switch (k) {
    case 1: g = gram[0][0]; break;
    case 2: g = det2(gram[0][0], gram[0][1], gram[1][0], gram[1][1]); break;
    case 3: g = det3(gram); break;
    default: throw std::invalid_argument("simplex_volume: dimension out of range");
  }
  return std::sqrt(std::max(0.0, g)) / factorial(k);
}

double integrate_on_simplex(const QuadratureRule& rule, std::span<const Point> verts,
                            const std::function<double(const Point&)>& f) {
  if (static_cast<int>(verts.size()) != rule.dim + 1)
    throw std::invalid_argument("integrate_on_simplex: vertex count does not match rule dim");
  double vol = simplex_volume(verts);
  if (vol <= 0.0) throw std::invalid_argument("integrate_on_simplex: degenerate simplex");
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    Point x{0.0, 0.0, 0.0};
    for (int i = 0; i <= rule.dim; ++i) x = x + rule.points[q][i] * verts[i];
    sum += rule.weights[q] * f(x);
  }
  return vol * sum;
}

}  // namespace whitney
