#include "whitney/simplicial_complex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "whitney/quadrature.hpp"

namespace whitney {

namespace {

double signed_volume(const std::vector<Point>& verts, const Simplex& cell, int dim) {
  std::array<Point, 3> e;
  for (int j = 0; j < dim; ++j) e[j] = verts[cell[j + 1]] - verts[cell[0]];
  if (dim == 2) return 0.5 * det2(e[0][0], e[1][0], e[0][1], e[1][1]);
  std::array<std::array<double, 3>, 3> m;
  for (int j = 0; j < 3; ++j) m[j] = {e[j][0], e[j][1], e[j][2]};
  return det3(m) / 6.0;
}

double cell_diameter(const std::vector<Point>& verts, const Simplex& cell, int dim) {
  double d = 0.0;
  for (int a = 0; a <= dim; ++a)
    for (int b = a + 1; b <= dim; ++b) d = std::max(d, norm(verts[cell[a]] - verts[cell[b]]));
  return d;
}

}  // namespace

SimplicialComplex SimplicialComplex::build(int dim, std::vector<Point> vertices,
                                           std::vector<Simplex> cells) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("build: dim must be 2 or 3");
  SimplicialComplex c;
  c.dim_ = dim;
  c.vertices_ = std::move(vertices);
  const int nv = static_cast<int>(c.vertices_.size());

  for (Simplex& cell : cells) {
    for (int i = 0; i <= dim; ++i) {
      if (cell[i] < 0 || cell[i] >= nv) throw std::invalid_argument("build: vertex index out of range");
    }
    std::sort(cell.begin(), cell.begin() + dim + 1);
    for (int i = 0; i < dim; ++i)
      if (cell[i] == cell[i + 1]) throw std::invalid_argument("build: repeated vertex in cell");
  }
  {
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i] == sorted[i + 1]) throw std::invalid_argument("build: duplicate cell");
  }

  // Enumerate skeletons in lexicographic order.
  c.skeletons_.assign(dim + 1, {});
  c.skeletons_[0].reserve(nv);
  for (int i = 0; i < nv; ++i) c.skeletons_[0].push_back(Simplex{i, -1, -1, -1});
  c.skeletons_[dim] = cells;
  std::sort(c.skeletons_[dim].begin(), c.skeletons_[dim].end());
  for (int k = 1; k < dim; ++k) {
    auto subsets = combinations(dim + 1, k + 1);
    std::vector<Simplex>& skel = c.skeletons_[k];
    for (const Simplex& cell : c.skeletons_[dim]) {
      for (const Simplex& s : subsets) {
        Simplex face{-1, -1, -1, -1};
        for (int i = 0; i <= k; ++i) face[i] = cell[s[i]];
        skel.push_back(face);
      }
    }
    std::sort(skel.begin(), skel.end());
    skel.erase(std::unique(skel.begin(), skel.end()), skel.end());
  }

  c.signed_volumes_.resize(c.skeletons_[dim].size());
  for (std::size_t i = 0; i < c.skeletons_[dim].size(); ++i) {
    const Simplex& cell = c.skeletons_[dim][i];
    double sv = signed_volume(c.vertices_, cell, dim);
    double diam = cell_diameter(c.vertices_, cell, dim);
    if (std::abs(sv) * factorial(dim) <= 1e-12 * std::pow(diam, dim))
      throw std::invalid_argument("build: degenerate cell (zero volume)");
    c.signed_volumes_[i] = sv;
  }

  // Incidence maps cell -> faces and face -> cells.
  const int ncells = static_cast<int>(c.skeletons_[dim].size());
  c.cell_faces_.assign(dim + 1, {});
  c.simplex_cell_offsets_.assign(dim + 1, {});
  c.simplex_cells_.assign(dim + 1, {});
  for (int k = 0; k <= dim; ++k) {
    auto subsets = combinations(dim + 1, k + 1);
    const int stride = static_cast<int>(subsets.size());
    std::vector<int>& cf = c.cell_faces_[k];
    cf.resize(static_cast<std::size_t>(ncells) * stride);
    std::vector<int> counts(c.skeletons_[k].size(), 0);
    for (int ci = 0; ci < ncells; ++ci) {
      const Simplex& cell = c.skeletons_[dim][ci];
      for (int si = 0; si < stride; ++si) {
        Simplex face{-1, -1, -1, -1};
        for (int i = 0; i <= k; ++i) face[i] = cell[subsets[si][i]];
        int idx = c.simplex_index(k, face);
        cf[static_cast<std::size_t>(ci) * stride + si] = idx;
        ++counts[idx];
      }
    }
    std::vector<int>& offsets = c.simplex_cell_offsets_[k];
    offsets.assign(c.skeletons_[k].size() + 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i) offsets[i + 1] = offsets[i] + counts[i];
    std::vector<int>& inc = c.simplex_cells_[k];
    inc.resize(offsets.back());
    std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
    for (int ci = 0; ci < ncells; ++ci) {
      for (int si = 0; si < stride; ++si) {
        int idx = cf[static_cast<std::size_t>(ci) * stride + si];
        inc[cursor[idx]++] = ci;
      }
    }
  }

  for (std::size_t f = 0; f < c.skeletons_[dim - 1].size(); ++f) {
    auto inc = c.simplex_cells(dim - 1, static_cast<int>(f));
    if (inc.size() > 2) throw std::invalid_argument("build: non-manifold face");
  }

  // Boundary flags: a k-simplex is in the boundary iff it is a subset of a
  // boundary (n-1)-face.
  c.boundary_.assign(dim + 1, {});
  std::vector<bool>& bf = c.boundary_[dim - 1];
  bf.assign(c.skeletons_[dim - 1].size(), false);
  for (std::size_t f = 0; f < bf.size(); ++f)
    bf[f] = c.simplex_cells(dim - 1, static_cast<int>(f)).size() == 1;
  for (int k = 0; k < dim - 1; ++k)
    c.boundary_[k].assign(c.skeletons_[k].size(), false);
  for (int k = 0; k < dim - 1; ++k) {
    auto subsets = combinations(dim, k + 1);
    for (std::size_t f = 0; f < bf.size(); ++f) {
      if (!bf[f]) continue;
      const Simplex& face = c.skeletons_[dim - 1][f];
      for (const Simplex& s : subsets) {
        Simplex sub{-1, -1, -1, -1};
        for (int i = 0; i <= k; ++i) sub[i] = face[s[i]];
        c.boundary_[k][c.simplex_index(k, sub)] = true;
      }
    }
  }
  c.boundary_[dim].assign(c.skeletons_[dim].size(), false);

  return c;
}

int SimplicialComplex::simplex_index(int k, const Simplex& s) const {
  const auto& skel = skeletons_[k];
  auto it = std::lower_bound(skel.begin(), skel.end(), s);
  if (it == skel.end() || *it != s) return -1;
  return static_cast<int>(it - skel.begin());
}

std::span<const int> SimplicialComplex::cell_faces(int k, int cell) const {
  const int stride = static_cast<int>(binomial(dim_ + 1, k + 1));
  return {cell_faces_[k].data() + static_cast<std::size_t>(cell) * stride,
          static_cast<std::size_t>(stride)};
}

std::span<const int> SimplicialComplex::simplex_cells(int k, int index) const {
  const auto& off = simplex_cell_offsets_[k];
  return {simplex_cells_[k].data() + off[index],
          static_cast<std::size_t>(off[index + 1] - off[index])};
}

bool SimplicialComplex::is_boundary_face(int face) const { return boundary_[dim_ - 1][face]; }

bool SimplicialComplex::is_boundary_simplex(int k, int index) const {
  return boundary_[k][index];
}

SparseMatrix coboundary_matrix(const SimplicialComplex& complex, int k) {
  const int n = complex.dim();
  if (k < 0 || k >= n) throw std::invalid_argument("coboundary_matrix: k out of range");
  std::vector<Triplet> triplets;
  const auto& upper = complex.skeleton(k + 1);
  triplets.reserve(upper.size() * (k + 2));
  for (std::size_t s = 0; s < upper.size(); ++s) {
    const Simplex& sigma = upper[s];
    for (int i = 0; i <= k + 1; ++i) {
      Simplex tau{-1, -1, -1, -1};
      int pos = 0;
      for (int j = 0; j <= k + 1; ++j)
        if (j != i) tau[pos++] = sigma[j];
      int idx = complex.simplex_index(k, tau);
      triplets.push_back({static_cast<int>(s), idx, (i % 2 == 0) ? 1.0 : -1.0});
    }
  }
  return SparseMatrix::from_triplets(static_cast<int>(upper.size()), complex.skeleton_size(k),
                                     std::move(triplets));
}

MeshStats mesh_stats(const SimplicialComplex& complex) {
  const int n = complex.dim();
  MeshStats stats;
  stats.h_min = std::numeric_limits<double>::max();
  stats.shape_constant = 1.0;
  for (int c = 0; c < complex.num_cells(); ++c) {
    const Simplex& cell = complex.cells()[c];
    double diam = 0.0;
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        diam = std::max(diam, norm(complex.vertex(cell[a]) - complex.vertex(cell[b])));
    stats.h_max = std::max(stats.h_max, diam);
    stats.h_min = std::min(stats.h_min, diam);

    // Inscribed ball: r = n*vol / (sum of facet measures).
    double surface = 0.0;
    auto subsets = combinations(n + 1, n);
    for (const Simplex& s : subsets) {
      std::array<Point, 3> fv;
      for (int i = 0; i < n; ++i) fv[i] = complex.vertex(cell[s[i]]);
      surface += simplex_volume(std::span<const Point>(fv.data(), n));
    }
    double rho = 2.0 * n * complex.cell_volume(c) / surface;
    stats.shape_constant = std::min(stats.shape_constant, rho / diam);
  }
  return stats;
}

void write_mesh(const SimplicialComplex& complex, std::ostream& out) {
  const int n = complex.dim();
  out << n << ' ' << complex.num_vertices() << ' ' << complex.num_cells() << '\n';
  out << std::setprecision(17);
  for (int i = 0; i < complex.num_vertices(); ++i) {
    const Point& p = complex.vertex(i);
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << p[j];
    out << '\n';
  }
  for (const Simplex& cell : complex.cells()) {
    for (int j = 0; j <= n; ++j) out << (j ? " " : "") << cell[j];
    out << '\n';
  }
}

SimplicialComplex read_mesh(std::istream& in) {
  int dim = 0, nv = 0, nc = 0;
  if (!(in >> dim >> nv >> nc)) throw std::runtime_error("read_mesh: bad header");
  std::vector<Point> vertices(nv, Point{0.0, 0.0, 0.0});
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(in >> vertices[i][j])) throw std::runtime_error("read_mesh: bad vertex line");
  std::vector<Simplex> cells(nc, Simplex{-1, -1, -1, -1});
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j <= dim; ++j)
      if (!(in >> cells[i][j])) throw std::runtime_error("read_mesh: bad cell line");
  return SimplicialComplex::build(dim, std::move(vertices), std::move(cells));
}

void write_mesh_file(const SimplicialComplex& complex, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_mesh_file: cannot open " + path);
  write_mesh(complex, out);
}

SimplicialComplex read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_mesh_file: cannot open " + path);
  return read_mesh(in);
}

}  // namespace whitney
