#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/sparse.hpp"

namespace whitney {

/// Real coefficient vector over the k-simplices of a complex.
struct Cochain {
  int degree = 0;
  std::vector<double> coeffs;
};

struct MeshStats {
  double h_max = 0.0;
  double h_min = 0.0;
  double shape_constant = 0.0;  // min over cells of inscribed-ball diameter / diam
};

/// Oriented simplicial complex in R^n, n = 2 or 3. Every simplex is stored as
/// a strictly increasing tuple of vertex indices; all orientation signs are
/// derived from that order. Immutable after construction.
class SimplicialComplex {
 public:
  /// Enumerates all skeletons and incidence maps. Throws on out-of-range
  /// indices, duplicate cells, degenerate cells, or a non-manifold face.
  static SimplicialComplex build(int dim, std::vector<Point> vertices,
                                 std::vector<Simplex> cells);

  int dim() const { return dim_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return skeleton_size(dim_); }
  int skeleton_size(int k) const { return static_cast<int>(skeletons_[k].size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int i) const { return vertices_[i]; }

  /// k-simplices in lexicographic order, each tuple strictly increasing.
  const std::vector<Simplex>& skeleton(int k) const { return skeletons_[k]; }
  const std::vector<Simplex>& cells() const { return skeletons_[dim_]; }

  /// Index of a k-simplex given its sorted vertex tuple; -1 if absent.
  int simplex_index(int k, const Simplex& s) const;

  /// Global indices of the k-faces of a cell, ordered like the lexicographic
  /// position subsets of {0..n}. With increasing-order storage the relative
  /// orientation sign of every subsimplex in its cell is +1.
  std::span<const int> cell_faces(int k, int cell) const;

  double cell_signed_volume(int cell) const { return signed_volumes_[cell]; }
  double cell_volume(int cell) const { return std::abs(signed_volumes_[cell]); }

  /// Cells incident to a k-simplex.
  std::span<const int> simplex_cells(int k, int index) const;

  /// True if the (n-1)-face lies on the boundary (single incident cell).
  bool is_boundary_face(int face) const;
  /// True if the k-simplex is contained in the boundary of the mesh.
  bool is_boundary_simplex(int k, int index) const;

 private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<std::vector<Simplex>> skeletons_;       // [k]
  std::vector<std::vector<int>> cell_faces_;          // [k], stride C(n+1,k+1)
  std::vector<std::vector<int>> simplex_cell_offsets_;  // [k], CSR into simplex_cells_
  std::vector<std::vector<int>> simplex_cells_;       // [k]
  std::vector<double> signed_volumes_;
  std::vector<std::vector<bool>> boundary_;           // [k]
};

/// Signed incidence matrix D_k : C^k -> C^{k+1}; entry (sigma,tau) = (-1)^i
/// when tau is sigma with its i-th vertex omitted. Entries are exact integers.
SparseMatrix coboundary_matrix(const SimplicialComplex& complex, int k);

MeshStats mesh_stats(const SimplicialComplex& complex);

/// Text format: header "dim n_vertices n_cells", one vertex per line
/// (full-precision decimals), one cell per line (vertex indices).
void write_mesh(const SimplicialComplex& complex, std::ostream& out);
SimplicialComplex read_mesh(std::istream& in);
void write_mesh_file(const SimplicialComplex& complex, const std::string& path);
SimplicialComplex read_mesh_file(const std::string& path);

}  // namespace whitney
