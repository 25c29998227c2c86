#include "whitney/mesh_generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace whitney {

RefinementRule rule_from_name(const std::string& name) {
  if (name == "Crisscross2D") return RefinementRule::Crisscross2D;
  if (name == "RegularStandard2D") return RefinementRule::RegularStandard2D;
  if (name == "WhitneyStandard2D") return RefinementRule::WhitneyStandard2D;
  if (name == "RegularRed3D") return RefinementRule::RegularRed3D;
  if (name == "WhitneyStandard3D") return RefinementRule::WhitneyStandard3D;
  throw std::invalid_argument("rule_from_name: unknown rule '" + name + "'");
}

std::string rule_name(RefinementRule rule) {
  switch (rule) {
    case RefinementRule::Crisscross2D: return "Crisscross2D";
    case RefinementRule::RegularStandard2D: return "RegularStandard2D";
    case RefinementRule::WhitneyStandard2D: return "WhitneyStandard2D";
    case RefinementRule::RegularRed3D: return "RegularRed3D";
    case RefinementRule::WhitneyStandard3D: return "WhitneyStandard3D";
  }
  return "";
}

SimplicialComplex crisscross_sequence(int m) {
  if (m < 1) throw std::invalid_argument("crisscross_sequence: level must be >= 1");
  const int ns = 1 << (m - 1);  // subsquares per side
  const double s = 4.0 / (1 << m);

  std::vector<Point> vertices;
  // corners first (so cells read corner,corner,center in index order)
  for (int i = 0; i <= ns; ++i)
    for (int j = 0; j <= ns; ++j)
      vertices.push_back(snap_point({-1.0 + i * s, -1.0 + j * s, 0.0}));
  const int ncorner = static_cast<int>(vertices.size());
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      vertices.push_back(snap_point({-1.0 + (i + 0.5) * s, -1.0 + (j + 0.5) * s, 0.0}));

  auto corner = [&](int i, int j) { return i * (ns + 1) + j; };
  auto center = [&](int i, int j) { return ncorner + i * ns + j; };

  std::vector<Simplex> cells;
  cells.reserve(static_cast<std::size_t>(4) * ns * ns);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < ns; ++j) {
      int c = center(i, j);
      cells.push_back({corner(i, j), corner(i + 1, j), c, -1});          // bottom
      cells.push_back({corner(i, j + 1), corner(i + 1, j + 1), c, -1});  // top
      cells.push_back({corner(i, j), corner(i, j + 1), c, -1});          // left
      cells.push_back({corner(i + 1, j), corner(i + 1, j + 1), c, -1});  // right
    }
  }
  return SimplicialComplex::build(2, std::move(vertices), std::move(cells));
}

SimplicialComplex cube_six_tet() {
  std::vector<Point> vertices;
  for (int i = 0; i < 8; ++i)
    vertices.push_back({i & 4 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 1 ? 1.0 : -1.0});
  // Vertices are in lexicographic order, so each path tetrahedron below is
  // already increasing.
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int axis_bit[3] = {4, 2, 1};  // x, y, z
  std::vector<Simplex> cells;
  for (const auto& perm : perms) {
    Simplex cell{0, 0, 0, 0};
    int v = 0;
    for (int step = 0; step < 3; ++step) {
      v |= axis_bit[perm[step]];
      cell[step + 1] = v;
    }
    cells.push_back(cell);
  }
  return SimplicialComplex::build(3, std::move(vertices), std::move(cells));
}

namespace {

using LocalCell = std::array<int, 4>;  // child as parent vertex/midpoint slots

// Slots 0..n are parent vertices; slot n+1+e is the midpoint of local edge e
// in lexicographic (i,j) order.
int midpoint_slot(int n, int i, int j) {
  static const int edge_rank_3[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  if (i > j) std::swap(i, j);
  if (n == 2) return 3 + (i + j - 1);  // (0,1)->3, (0,2)->4, (1,2)->5
  return 4 + edge_rank_3[i][j];
}

std::vector<LocalCell> children_of(RefinementRule rule, int n) {
  auto m = [&](int i, int j) { return midpoint_slot(n, i, j); };
  switch (rule) {
    case RefinementRule::RegularStandard2D:
      return {{0, m(0, 1), m(0, 2), -1},
              {m(0, 1), 1, m(1, 2), -1},
              {m(0, 2), m(1, 2), 2, -1},
              {m(0, 1), m(1, 2), m(0, 2), -1}};
    case RefinementRule::Crisscross2D:
    case RefinementRule::WhitneyStandard2D:
      return {{0, m(0, 1), m(0, 2), -1},
              {m(0, 1), 1, m(1, 2), -1},
              {m(0, 1), m(1, 2), 2, -1},
              {m(0, 1), m(0, 2), 2, -1}};
    case RefinementRule::RegularRed3D:
      // corner tets, then the octahedron split along (m02, m13)
      return {{0, m(0, 1), m(0, 2), m(0, 3)},
              {m(0, 1), 1, m(1, 2), m(1, 3)},
              {m(0, 2), m(1, 2), 2, m(2, 3)},
              {m(0, 3), m(1, 3), m(2, 3), 3},
              {m(0, 2), m(1, 3), m(0, 1), m(0, 3)},
              {m(0, 2), m(1, 3), m(0, 3), m(2, 3)},
              {m(0, 2), m(1, 3), m(2, 3), m(1, 2)},
              {m(0, 2), m(1, 3), m(1, 2), m(0, 1)}};
    case RefinementRule::WhitneyStandard3D:
      // octahedron split along (m01, m23)
      return {{0, m(0, 1), m(0, 2), m(0, 3)},
              {m(0, 1), 1, m(1, 2), m(1, 3)},
              {m(0, 2), m(1, 2), 2, m(2, 3)},
              {m(0, 3), m(1, 3), m(2, 3), 3},
              {m(0, 1), m(2, 3), m(0, 2), m(0, 3)},
              {m(0, 1), m(2, 3), m(0, 3), m(1, 3)},
              {m(0, 1), m(2, 3), m(1, 3), m(1, 2)},
              {m(0, 1), m(2, 3), m(1, 2), m(0, 2)}};
  }
  return {};
}

}  // namespace

SimplicialComplex refine(const SimplicialComplex& complex, RefinementRule rule) {
  const int n = complex.dim();
  const bool rule_3d =
      rule == RefinementRule::RegularRed3D || rule == RefinementRule::WhitneyStandard3D;
  if ((n == 3) != rule_3d) throw std::invalid_argument("refine: rule does not match mesh dimension");

  const auto children = children_of(rule, n);
  const int nslots = n == 2 ? 6 : 10;

  std::map<QuantizedPoint, int> index_of;
  std::vector<Point> vertices;
  auto add_vertex = [&](const Point& p) {
    Point sp = snap_point(p);
    auto [it, inserted] = index_of.try_emplace(quantize_point(sp), static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(sp);
    return it->second;
  };

  std::vector<Simplex> cells;
  cells.reserve(complex.num_cells() * children.size());
  std::vector<int> slots(nslots);
  for (int c = 0; c < complex.num_cells(); ++c) {
    const Simplex& cell = complex.cells()[c];
    for (int i = 0; i <= n; ++i) slots[i] = add_vertex(complex.vertex(cell[i]));
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        slots[midpoint_slot(n, i, j)] =
            add_vertex(midpoint(complex.vertex(cell[i]), complex.vertex(cell[j])));
    for (const LocalCell& child : children) {
      Simplex cc{-1, -1, -1, -1};
      for (int i = 0; i <= n; ++i) cc[i] = slots[child[i]];
      cells.push_back(cc);
    }
  }

  // Re-index with vertices in lexicographic coordinate order; the map is
  // already sorted by quantized coordinates.
  std::vector<int> perm(vertices.size());
  {
    int rank = 0;
    for (auto& [key, idx] : index_of) perm[idx] = rank++;
  }
  std::vector<Point> sorted_vertices(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) sorted_vertices[perm[i]] = vertices[i];
  for (Simplex& cell : cells)
    for (int i = 0; i <= n; ++i) cell[i] = perm[cell[i]];

  return SimplicialComplex::build(n, std::move(sorted_vertices), std::move(cells));
}

SimplicialComplex pwuniform20_base() {
  // 15 dyadic points: 4 corners, 4 edge midpoints, 7 interior.
  const std::vector<Point> vertices = {
      {-1.0, -1.0, 0.0},    {1.0, -1.0, 0.0},      {1.0, 1.0, 0.0},      {-1.0, 1.0, 0.0},
      {0.0, -1.0, 0.0},     {1.0, 0.0, 0.0},       {0.0, 1.0, 0.0},      {-1.0, 0.0, 0.0},
      {-0.375, -0.25, 0.0}, {0.3125, -0.4375, 0.0}, {0.0625, 0.125, 0.0}, {-0.5, 0.375, 0.0},
      {0.4375, 0.3125, 0.0}, {-0.0625, -0.625, 0.0}, {0.125, 0.625, 0.0}};
  const std::vector<Simplex> cells = {
      {2, 5, 12, -1},  {1, 4, 9, -1},   {1, 5, 9, -1},   {9, 10, 12, -1}, {5, 9, 12, -1},
      {0, 7, 8, -1},   {8, 9, 10, -1},  {3, 6, 11, -1},  {3, 7, 11, -1},  {8, 10, 11, -1},
      {7, 8, 11, -1},  {10, 12, 14, -1}, {10, 11, 14, -1}, {6, 11, 14, -1}, {2, 6, 14, -1},
      {2, 12, 14, -1}, {0, 4, 13, -1},  {0, 8, 13, -1},  {4, 9, 13, -1},  {8, 9, 13, -1}};
  return SimplicialComplex::build(2, vertices, cells);
}

SimplicialComplex piecewise_uniform_2d_sequence(int level) {
  if (level < 1) throw std::invalid_argument("piecewise_uniform_2d_sequence: level must be >= 1");
  SimplicialComplex mesh = pwuniform20_base();
  for (int i = 1; i < level; ++i) mesh = refine(mesh, RefinementRule::RegularStandard2D);
  return mesh;
}

namespace {

bool parallel_to(const Point& v, const Point& d, double tol) {
  Point c = cross(v, d);
  return norm(c) <= tol * norm(v) * norm(d);
}

}  // namespace

UniformityReport check_uniform(const SimplicialComplex& complex,
                               const std::vector<Point>& directions) {
  const int n = complex.dim();
  if (static_cast<int>(directions.size()) != n)
    throw std::invalid_argument("check_uniform: need exactly n directions");
  {
    double vol = 1.0;
    if (n == 2) {
      vol = cross(directions[0], directions[1])[2];
    } else {
      vol = dot(cross(directions[0], directions[1]), directions[2]);
    }
    double scale = 1.0;
    for (const Point& d : directions) scale *= norm(d);
    if (std::abs(vol) <= 1e-12 * scale)
      throw std::invalid_argument("check_uniform: directions are linearly dependent");
  }
  const double tol = 1e-12;

  UniformityReport report;
  report.directions = directions;
  report.cond1_ok = true;
  report.cond2_ok = true;

  // Condition 1: every cell has an edge parallel to each direction.
  for (int c = 0; c < complex.num_cells() && report.cond1_ok; ++c) {
    const Simplex& cell = complex.cells()[c];
    for (const Point& d : directions) {
      bool found = false;
      for (int a = 0; a <= n && !found; ++a)
        for (int b = a + 1; b <= n && !found; ++b)
          found = parallel_to(complex.vertex(cell[b]) - complex.vertex(cell[a]), d, tol);
      if (!found) {
        report.cond1_ok = false;
        report.witness_cell = c;
        break;
      }
    }
  }

  // Condition 2: point reflection through the midpoint of any interior edge
  // parallel to a direction maps its cell patch onto itself.
  const auto& edges = complex.skeleton(1);
  for (int e = 0; e < static_cast<int>(edges.size()) && report.cond2_ok; ++e) {
    if (complex.is_boundary_simplex(1, e)) continue;
    const Point p0 = complex.vertex(edges[e][0]);
    const Point p1 = complex.vertex(edges[e][1]);
    bool matches = false;
    for (const Point& d : directions) matches = matches || parallel_to(p1 - p0, d, tol);
    if (!matches) continue;

    const Point m = midpoint(p0, p1);
    auto patch = complex.simplex_cells(1, e);
    std::set<std::array<QuantizedPoint, 4>> keys;
    auto cell_key = [&](int cell, bool reflect) {
      std::array<QuantizedPoint, 4> key{};
      const Simplex& cv = complex.cells()[cell];
      for (int i = 0; i <= n; ++i) {
        Point p = complex.vertex(cv[i]);
        if (reflect) p = 2.0 * m - p;
        key[i] = quantize_point(snap_point(p));
      }
      std::sort(key.begin(), key.begin() + n + 1);
      return key;
    };
    for (int cell : patch) keys.insert(cell_key(cell, false));
    for (int cell : patch) {
      if (!keys.count(cell_key(cell, true))) {
        report.cond2_ok = false;
        report.witness_edge = e;
        break;
      }
    }
  }
  return report;
}

}  // namespace whitney
