#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whitney/simplicial_complex.hpp"

namespace whitney {

/// One-to-four (2D) or one-to-eight (3D) midpoint subdivision rules. The
/// children of a cell are determined by its increasing-index vertex order;
/// m_ij below is the midpoint of parent vertices i and j in that order.
///   RegularStandard2D: corner triangles + central triangle (similar to parent)
///   WhitneyStandard2D: corner triangles at v0, v1; quad split by edge m01-v2
///   RegularRed3D:      corner tets + octahedron split along (m02, m13)
///   WhitneyStandard3D: corner tets + octahedron split along (m01, m23)
/// Crisscross2D is the subdivision that generates the crisscross family; it
/// coincides with WhitneyStandard2D.
enum class RefinementRule {
  Crisscross2D,
  RegularStandard2D,
  WhitneyStandard2D,
  RegularRed3D,
  WhitneyStandard3D,
};

RefinementRule rule_from_name(const std::string& name);
std::string rule_name(RefinementRule rule);

/// Crisscross triangulation of (-1,1)^2: 4^(m-1) subsquares of side 4/2^m,
/// each cut by both diagonals; 4^m congruent isoceles right triangles.
/// Vertex indexing puts subsquare corners before centers, so every cell
/// reads (corner, corner, center) in increasing-index order.
SimplicialComplex crisscross_sequence(int m);

/// Subdivide every cell; the result is re-indexed with vertices sorted
/// lexicographically by coordinates.
SimplicialComplex refine(const SimplicialComplex& complex, RefinementRule rule);

/// (-1,1)^3 as six congruent tetrahedra sharing the diagonal from
/// (-1,-1,-1) to (1,1,1).
SimplicialComplex cube_six_tet();

/// Fixed 20-triangle unstructured triangulation of (-1,1)^2, refined
/// (level-1) times by RegularStandard2D.
SimplicialComplex piecewise_uniform_2d_sequence(int level);
SimplicialComplex pwuniform20_base();

struct UniformityReport {
  std::vector<Point> directions;
  bool cond1_ok = false;  // every cell has an edge parallel to each direction
  bool cond2_ok = false;  // interior edge patches are point-symmetric
  // first violation, if any
  std::optional<int> witness_cell;   // cond1: cell with no parallel edge
  std::optional<int> witness_edge;   // cond2: edge with asymmetric patch
  bool uniform() const { return cond1_ok && cond2_ok; }
};

/// Checks the two uniform-triangulation conditions for n given linearly
/// independent directions. Parallelism and cell identification use a 1e-12
/// relative tolerance on snapped coordinates.
UniformityReport check_uniform(const SimplicialComplex& complex,
                               const std::vector<Point>& directions);

}  // namespace whitney
