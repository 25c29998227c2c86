#pragma once

#include <vector>

#include "whitney/analytic_forms.hpp"
#include "whitney/quadrature.hpp"
#include "whitney/simplicial_complex.hpp"
#include "whitney/sparse.hpp"

namespace whitney {

/// Constant barycentric gradients and volume of one cell.
struct BarycentricFrame {
  std::array<Point, 4> grad;  // grad lambda_i, i = 0..n
  double volume = 0.0;
  double signed_volume = 0.0;
};

BarycentricFrame barycentric_frame(const SimplicialComplex& complex, int cell);

/// Quadrature degrees fixed so that every integral in the experiments is
/// exact: 8 for L2 inner products and error norms, 6 for the de Rham map.
inline constexpr int kInnerProductDegree = 8;
inline constexpr int kDeRhamDegree = 6;

/// Lowest-order Whitney k-form space on a complex; one degree of freedom per
/// k-simplex. The mass matrix (the cochain inner product) is assembled at
/// construction and immutable afterwards.
class WhitneySpace {
 public:
  WhitneySpace(const SimplicialComplex& complex, int k, int threads = 1);

  const SimplicialComplex& complex() const { return *complex_; }
  int degree() const { return k_; }
  int dim() const { return complex_->skeleton_size(k_); }
  const SparseMatrix& mass() const { return mass_; }
  int threads() const { return threads_; }

 private:
  const SimplicialComplex* complex_;
  int k_;
  int threads_;
  SparseMatrix mass_;
};

inline const SparseMatrix& mass_matrix(const WhitneySpace& space) { return space.mass(); }

/// Value of the Whitney basis form of a local k-face at a barycentric point
/// of a cell; components on the increasing coordinate wedge basis.
/// face_positions are local vertex positions (increasing) within the cell.
std::vector<double> eval_whitney_basis(const BarycentricFrame& frame, int n, int k,
                                       const Simplex& face_positions,
                                       std::span<const double> bary);

/// de Rham map R_h: coefficient per k-simplex = integral of u over it.
Cochain de_rham_map(const SimplicialComplex& complex, int k, const AnalyticForm& u);

/// Coefficients of the canonical projection pi_h u = W_h R_h u.
Cochain canonical_projection(const WhitneySpace& space, const AnalyticForm& u);

/// L2 norm of W_h c - g over the mesh.
double l2_error(const WhitneySpace& space, const Cochain& c, const AnalyticForm& g);

/// L2 norm of an analytic form over the mesh (cellwise degree-8 quadrature).
double l2_norm(const SimplicialComplex& complex, const AnalyticForm& g, int threads = 1);

/// Moment vector t with t_tau = <u, W a_tau> for all k-simplices tau.
std::vector<double> form_moments(const WhitneySpace& space, const AnalyticForm& u);

}  // namespace whitney
