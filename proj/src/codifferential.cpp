#include "whitney/codifferential.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace whitney {

namespace {

void check_adjacent_degrees(const WhitneySpace& space_k, const WhitneySpace& space_km1) {
  if (space_k.degree() != space_km1.degree() + 1 ||
      &space_k.complex() != &space_km1.complex())
    throw std::invalid_argument("discrete_codifferential: spaces not adjacent");
}

double inv_mass_norm(const WhitneySpace& space, const std::vector<double>& b, double rel_tol,
                     std::vector<SolveReport>* solves) {
  auto [y, report] = cg_solve(space.mass(), b, {rel_tol, 0});
  if (!report.converged) throw std::runtime_error("inv_mass_norm: CG did not converge");
  if (solves) solves->push_back(report);
  double q = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) q += b[i] * y[i];
  double scale = 0.0;
  for (double v : b) scale += v * v;
  if (q < -1e-12 * std::max(1.0, scale))
    throw std::runtime_error("inv_mass_norm: negative radicand (assembly bug?)");
  return std::sqrt(std::max(0.0, q));
}

}  // namespace

Cochain discrete_codifferential(const WhitneySpace& space_k, const WhitneySpace& space_km1,
                                const Cochain& c_u, double rel_tol, SolveReport* report) {
  check_adjacent_degrees(space_k, space_km1);
  const int k = space_k.degree();
  if (c_u.degree != k || static_cast<int>(c_u.coeffs.size()) != space_k.dim())
    throw std::invalid_argument("discrete_codifferential: cochain degree mismatch");

  SparseMatrix d = coboundary_matrix(space_k.complex(), k - 1);
  std::vector<double> rhs = d.multiply_transpose(space_k.mass().multiply(c_u.coeffs));
  auto [x, rep] = cg_solve(space_km1.mass(), rhs, {rel_tol, 0});
  if (!rep.converged) throw std::runtime_error("discrete_codifferential: CG did not converge");
  if (report) *report = rep;
  Cochain out;
  out.degree = k - 1;
  out.coeffs = std::move(x);
  return out;
}

double crisscross_closed_form_wh(double h, double x) {
  if (h > 1.0) throw std::invalid_argument("crisscross_closed_form_wh: formula requires h <= 1");
  const double half = h / 2.0;
  double j = x / half;
  if (std::abs(j - std::round(j)) > 1e-9)
    throw std::invalid_argument("crisscross_closed_form_wh: x is not a multiple of h/2");
  long idx = std::lround(j);

  if (x == -1.0) return -h;
  if (x == 1.0) return h;
  if (idx % 2 == 0) return 0.0;  // interior multiple of h
  // At x = -1+h/2 the four-triangle vertex equation m(2w + a)/3 = 4xm couples
  // to the value a = -h on the boundary column, shifting the 6x rule by h/2
  // (mirrored on the right). Verified by exact rational solve of the system.
  if (std::abs(x - (-1.0 + half)) < 1e-12) return -6.0 + 3.5 * h;
  if (std::abs(x - (1.0 - half)) < 1e-12) return 6.0 - 3.5 * h;
  return 6.0 * x;  // interior odd multiple of h/2
}

ConsistencyResult consistency_error(const WhitneySpace& space_k, const AnalyticForm& u,
                                    double rel_tol) {
  const SimplicialComplex& complex = space_k.complex();
  const int k = space_k.degree();
  if (k < 1) throw std::invalid_argument("consistency_error: need k >= 1");
  if (!u.has_codifferential())
    throw std::invalid_argument("consistency_error: form has no codifferential attached");
  const AnalyticForm& dstar_u = u.codifferential();

  WhitneySpace space_km1(complex, k - 1, space_k.threads());

  ConsistencyResult result;
  MeshStats stats = mesh_stats(complex);
  result.h = stats.h_max;
  result.cell_count = complex.num_cells();

  Cochain c_u = de_rham_map(complex, k, u);
  SolveReport rep;
  Cochain w = discrete_codifferential(space_k, space_km1, c_u, rel_tol, &rep);
  result.solves.push_back(rep);
  result.error = l2_error(space_km1, w, dstar_u);

  // A_h via b = D^T (s - M_k R_h u), A_h = |b|_{M^{-1}}
  {
    std::vector<double> s = form_moments(space_k, u);
    std::vector<double> mc = space_k.mass().multiply(c_u.coeffs);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= mc[i];
    SparseMatrix d = coboundary_matrix(complex, k - 1);
    std::vector<double> b = d.multiply_transpose(s);
    result.a_h = inv_mass_norm(space_km1, b, rel_tol, &result.solves);
  }

  // dist(d*u, space_{k-1}) via Pythagoras
  {
    std::vector<double> t = form_moments(space_km1, dstar_u);
    auto [y, drep] = cg_solve(space_km1.mass(), t, {rel_tol, 0});
    if (!drep.converged) throw std::runtime_error("consistency_error: CG did not converge");
    result.solves.push_back(drep);
    double ty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) ty += t[i] * y[i];
    double g2 = l2_norm(complex, dstar_u, space_k.threads());
    result.dist = std::sqrt(std::max(0.0, g2 * g2 - ty));
  }
  return result;
}

double a_h(const WhitneySpace& space_k, const AnalyticForm& u, double rel_tol) {
  const SimplicialComplex& complex = space_k.complex();
  const int k = space_k.degree();
  if (k < 1) throw std::invalid_argument("a_h: need k >= 1");
  WhitneySpace space_km1(complex, k - 1, space_k.threads());

  std::vector<double> s = form_moments(space_k, u);
  Cochain c_u = de_rham_map(complex, k, u);
  std::vector<double> mc = space_k.mass().multiply(c_u.coeffs);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] -= mc[i];
  SparseMatrix d = coboundary_matrix(complex, k - 1);
  std::vector<double> b = d.multiply_transpose(s);
  return inv_mass_norm(space_km1, b, rel_tol, nullptr);
}

double best_approx_distance(const WhitneySpace& space, const AnalyticForm& g, double rel_tol) {
  std::vector<double> t = form_moments(space, g);
  auto [y, rep] = cg_solve(space.mass(), t, {rel_tol, 0});
  if (!rep.converged) throw std::runtime_error("best_approx_distance: CG did not converge");
  double ty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) ty += t[i] * y[i];
  double gn = l2_norm(space.complex(), g, space.threads());
  return std::sqrt(std::max(0.0, gn * gn - ty));
}

Cochain combinatorial_laplacian_apply(const WhitneySpace& space_k, const Cochain& c,
                                      double rel_tol) {
  const SimplicialComplex& complex = space_k.complex();
  const int n = complex.dim();
  const int k = space_k.degree();
  if (c.degree != k || static_cast<int>(c.coeffs.size()) != space_k.dim())
    throw std::invalid_argument("combinatorial_laplacian_apply: cochain mismatch");

  Cochain out;
  out.degree = k;
  out.coeffs.assign(space_k.dim(), 0.0);

  if (k > 0) {  // d^c d*_h c
    WhitneySpace space_km1(complex, k - 1, space_k.threads());
    Cochain down = discrete_codifferential(space_k, space_km1, c, rel_tol);
    SparseMatrix d = coboundary_matrix(complex, k - 1);
    std::vector<double> up = d.multiply(down.coeffs);
    for (std::size_t i = 0; i < up.size(); ++i) out.coeffs[i] += up[i];
  }
  if (k < n) {  // d*_h d^c c
    WhitneySpace space_kp1(complex, k + 1, space_k.threads());
    SparseMatrix d = coboundary_matrix(complex, k);
    Cochain dc;
    dc.degree = k + 1;
    dc.coeffs = d.multiply(c.coeffs);
    Cochain down = discrete_codifferential(space_kp1, space_k, dc, rel_tol);
    for (std::size_t i = 0; i < down.coeffs.size(); ++i) out.coeffs[i] += down.coeffs[i];
  }
  return out;
}

namespace {

double ratio_with(const SparseMatrix& d, const WhitneySpace& space_k,
                  const WhitneySpace& space_kp1, const std::vector<double>& coeffs,
                  double h_min) {
  std::vector<double> dc = d.multiply(coeffs);
  std::vector<double> mdc = space_kp1.mass().multiply(dc);
  double num = 0.0;
  for (std::size_t i = 0; i < dc.size(); ++i) num += dc[i] * mdc[i];
  std::vector<double> mc = space_k.mass().multiply(coeffs);
  double den = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) den += coeffs[i] * mc[i];
  if (den <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, num) / den) * h_min;
}

}  // namespace

double inverse_estimate_ratio_for(const WhitneySpace& space_k, const WhitneySpace& space_kp1,
                                  const Cochain& c, double h_min) {
  SparseMatrix d = coboundary_matrix(space_k.complex(), space_k.degree());
  return ratio_with(d, space_k, space_kp1, c.coeffs, h_min);
}

double inverse_estimate_ratio(const WhitneySpace& space_k) {
  const SimplicialComplex& complex = space_k.complex();
  const int k = space_k.degree();
  if (k >= complex.dim()) throw std::invalid_argument("inverse_estimate_ratio: need k < n");
  WhitneySpace space_kp1(complex, k + 1, space_k.threads());
  const double h_min = mesh_stats(complex).h_min;
  const SparseMatrix d = coboundary_matrix(complex, k);

  double best = 0.0;
  std::vector<double> coeffs(space_k.dim(), 0.0);
  for (int i = 0; i < space_k.dim(); ++i) {
    coeffs[i] = 1.0;
    best = std::max(best, ratio_with(d, space_k, space_kp1, coeffs, h_min));
    coeffs[i] = 0.0;
  }
  std::mt19937 rng(20240901);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int probe = 0; probe < 50; ++probe) {
    for (double& v : coeffs) v = dist(rng);
    best = std::max(best, ratio_with(d, space_k, space_kp1, coeffs, h_min));
  }
  return best;
}

}  // namespace whitney
