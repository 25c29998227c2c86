#pragma once

#include <random>
#include <vector>

#include "whitney/analytic_forms.hpp"
#include "whitney/quadrature.hpp"
#include "whitney/simplicial_complex.hpp"
#include "whitney/whitney_assembly.hpp"

namespace whitney::testing {

// L2 inner product of two analytic forms over a mesh by cellwise quadrature.
inline double form_inner_product(const SimplicialComplex& mesh, const AnalyticForm& a,
                                 const AnalyticForm& b, int quad_degree) {
  const int n = mesh.dim();
  QuadratureRule rule = simplex_rule(n, quad_degree);
  const int ncomp = a.num_components();
  std::vector<double> av(ncomp), bv(ncomp);
  double total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    std::array<Point, 4> verts;
    for (int i = 0; i <= n; ++i) verts[i] = mesh.vertex(mesh.cells()[c][i]);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      Point x{0, 0, 0};
      for (int i = 0; i <= n; ++i) x = x + rule.points[q][i] * verts[i];
      a.evaluate(x, av.data());
      b.evaluate(x, bv.data());
      double s = 0.0;
      for (int t = 0; t < ncomp; ++t) s += av[t] * bv[t];
      acc += rule.weights[q] * s;
    }
    total += mesh.cell_volume(c) * acc;
  }
  return total;
}

// The piecewise Whitney form W_h c as an analytic form, evaluated by point
// location (interior quadrature points only; small meshes).
inline AnalyticForm make_whitney_field(const SimplicialComplex& mesh, int k, Cochain c) {
  const int n = mesh.dim();
  auto shared_mesh = &mesh;
  auto coeffs = std::make_shared<Cochain>(std::move(c));
  const int ncomp = static_cast<int>(binomial(n, k));
  auto faces = combinations(n + 1, k + 1);

  auto locate_eval = [shared_mesh, coeffs, k, n, faces](const Point& x) {
    const SimplicialComplex& m = *shared_mesh;
    for (int cell = 0; cell < m.num_cells(); ++cell) {
      // barycentric coordinates of x in this cell
      BarycentricFrame frame = barycentric_frame(m, cell);
      const Simplex& cv = m.cells()[cell];
      std::array<double, 4> bary{};
      double minb = 1.0;
      bary[0] = 1.0;
      for (int i = 1; i <= n; ++i) {
        bary[i] = dot(frame.grad[i], x - m.vertex(cv[0]));
        bary[0] -= bary[i];
      }
      for (int i = 0; i <= n; ++i) minb = std::min(minb, bary[i]);
      if (minb < -1e-12) continue;
      std::vector<double> val(binomial(n, k), 0.0);
      auto cf = m.cell_faces(k, cell);
      for (std::size_t f = 0; f < faces.size(); ++f) {
        double coeff = coeffs->coeffs[cf[f]];
        if (coeff == 0.0) continue;
        std::vector<double> basis =
            eval_whitney_basis(frame, n, k, faces[f], std::span<const double>(bary.data(), n + 1));
        for (std::size_t t = 0; t < val.size(); ++t) val[t] += coeff * basis[t];
      }
      return val;
    }
    return std::vector<double>(binomial(n, k), 0.0);
  };

  std::vector<AnalyticForm::Coefficient> comps;
  for (int t = 0; t < ncomp; ++t)
    comps.push_back([locate_eval, t](const Point& x) { return locate_eval(x)[t]; });
  return AnalyticForm(n, k, 1, std::move(comps));
}

inline AnalyticForm zero_form(int dim, int k) {
  std::vector<AnalyticForm::Coefficient> comps(binomial(dim, k),
                                               [](const Point&) { return 0.0; });
  return AnalyticForm(dim, k, 0, std::move(comps));
}

inline Polynomial random_polynomial(std::mt19937& rng, int max_degree, int dims = 3) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Polynomial p;
  for (int dx = 0; dx <= max_degree; ++dx)
    for (int dy = 0; dy + dx <= max_degree; ++dy)
      for (int dz = 0; dz + dy + dx <= (dims > 2 ? max_degree : 0); ++dz) {
        Polynomial term(coeff(rng));
        for (int i = 0; i < dx; ++i) term = term * Polynomial::variable(0);
        for (int i = 0; i < dy; ++i) term = term * Polynomial::variable(1);
        for (int i = 0; i < dz; ++i) term = term * Polynomial::variable(2);
        p = p + term;
      }
  return p;
}

// Least-squares slope of log2(values) against the level index; the observed
// convergence order of a sequence halving h per step.
inline double observed_rate(const std::vector<double>& values) {
  double n = static_cast<double>(values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double x = -static_cast<double>(i), y = std::log2(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline Cochain random_cochain(std::mt19937& rng, int degree, int size) {
  std::normal_distribution<double> val(0.0, 1.0);
  Cochain c;
  c.degree = degree;
  c.coeffs.resize(size);
  for (double& v : c.coeffs) v = val(rng);
  return c;
}

}  // namespace whitney::testing
