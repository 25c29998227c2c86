#pragma once

#include <vector>

#include "whitney/analytic_forms.hpp"
#include "whitney/simplicial_complex.hpp"
#include "whitney/whitney_assembly.hpp"

namespace whitney {

struct ConsistencyResult {
  double h = 0.0;             // maximal simplex diameter
  std::int64_t cell_count = 0;
  double error = 0.0;         // || d*_h pi_h u - d* u ||
  double a_h = 0.0;           // sup_v <u - pi_h u, dv> / ||v||
  double dist = 0.0;          // dist(d* u, Whitney space of degree k-1)
  std::vector<SolveReport> solves;
};

/// Whitney codifferential of the form represented by cochain c_u: solves
/// M_{k-1} c = D_{k-1}^T M_k c_u.
Cochain discrete_codifferential(const WhitneySpace& space_k, const WhitneySpace& space_km1,
                                const Cochain& c_u, double rel_tol = 1e-10,
                                SolveReport* report = nullptr);

/// Vertex values of d*_h pi_h u for u = (1-x^2)dx on the crisscross mesh with
/// cell diameter h <= 1; depends on x only. x must be a multiple of h/2.
/// Cases: -h at x=-1, h at x=1, 0 at interior multiples of h, 6x at interior
/// odd multiples of h/2, and -(6-7h/2) / (6-7h/2) at x = -1+h/2 / 1-h/2.
double crisscross_closed_form_wh(double h, double x);

/// Consistency error of the combinatorial codifferential for a form with
/// known d*, together with A_h and the best-approximation distance.
ConsistencyResult consistency_error(const WhitneySpace& space_k, const AnalyticForm& u,
                                    double rel_tol = 1e-10);

/// A_h(u) = sup over v in the (k-1)-space of <u - pi_h u, dv> / ||v||, via
/// the inverse mass norm of the defect functional.
double a_h(const WhitneySpace& space_k, const AnalyticForm& u, double rel_tol = 1e-10);

/// dist(g, Whitney space) via Pythagoras: sqrt(||g||^2 - t^T M^{-1} t).
double best_approx_distance(const WhitneySpace& space, const AnalyticForm& g,
                            double rel_tol = 1e-10);

/// Combinatorial Laplacian d^c d*_h + d*_h d^c applied to a cochain; terms at
/// the ends of the complex are dropped.
Cochain combinatorial_laplacian_apply(const WhitneySpace& space_k, const Cochain& c,
                                      double rel_tol = 1e-10);

/// ||d v_h|| * h_min / ||v_h|| maximized over all canonical basis cochains
/// plus 50 seeded random cochains; bounded across refinement levels.
double inverse_estimate_ratio(const WhitneySpace& space_k);

/// The ratio above for a single probe cochain.
double inverse_estimate_ratio_for(const WhitneySpace& space_k, const WhitneySpace& space_kp1,
                                  const Cochain& c, double h_min);

}  // namespace whitney
