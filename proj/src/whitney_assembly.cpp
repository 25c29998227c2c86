#include "whitney/whitney_assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace whitney {

namespace {

double det_k(const std::array<std::array<double, 3>, 3>& m, int k) {
  switch (k) {
    case 0: return 1.0;
    case 1: return m[0][0];
    case 2: return det2(m[0][0], m[0][1], m[1][0], m[1][1]);
    default: return det3(m);
  }
}

// Gram determinant of the gradient covectors of two (k+1)-faces with one
// vertex position omitted from each.
double wedge_gram(const std::array<std::array<double, 4>, 4>& g, const Simplex& fa, int omit_a,
                  const Simplex& fb, int omit_b, int k) {
  std::array<std::array<double, 3>, 3> m{};
  int r = 0;
  for (int a = 0; a <= k; ++a) {
    if (a == omit_a) continue;
    int cidx = 0;
    for (int b = 0; b <= k; ++b) {
      if (b == omit_b) continue;
      m[r][cidx++] = g[fa[a]][fb[b]];
    }
    ++r;
  }
  return det_k(m, k);
}

// Components of d(lambda_{p0}) ^ ... ^ d(lambda_{pk}) with position `omit`
// dropped, on the increasing coordinate tuple basis.
void wedge_components(const BarycentricFrame& frame, const Simplex& positions, int omit, int k,
                      const std::vector<Simplex>& tuples, double* out) {
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    std::array<std::array<double, 3>, 3> m{};
    int r = 0;
    for (int a = 0; a <= k; ++a) {
      if (a == omit) continue;
      for (int b = 0; b < k; ++b) m[r][b] = frame.grad[positions[a]][tuples[t][b]];
      ++r;
    }
    out[t] = det_k(m, k);
  }
}

struct CellBasis {
  // wedges[face][omit][component]
  std::vector<std::array<std::array<double, 3>, 4>> wedges;
};

void cell_basis(const BarycentricFrame& frame, int k, const std::vector<Simplex>& faces,
                const std::vector<Simplex>& tuples, CellBasis& basis) {
  basis.wedges.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int i = 0; i <= k; ++i)
      wedge_components(frame, faces[f], i, k, tuples, basis.wedges[f][i].data());
}

}  // namespace

BarycentricFrame barycentric_frame(const SimplicialComplex& complex, int cell) {
  const int n = complex.dim();
  const Simplex& c = complex.cells()[cell];
  BarycentricFrame frame;
  frame.signed_volume = complex.cell_signed_volume(cell);
  frame.volume = std::abs(frame.signed_volume);

  std::array<Point, 3> e;
  for (int j = 0; j < n; ++j) e[j] = complex.vertex(c[j + 1]) - complex.vertex(c[0]);
  if (n == 2) {
    double det = e[0][0] * e[1][1] - e[1][0] * e[0][1];
    frame.grad[1] = {e[1][1] / det, -e[1][0] / det, 0.0};
    frame.grad[2] = {-e[0][1] / det, e[0][0] / det, 0.0};
    frame.grad[3] = {0.0, 0.0, 0.0};
  } else {
    std::array<std::array<double, 3>, 3> m;
    for (int j = 0; j < 3; ++j) m[j] = {e[j][0], e[j][1], e[j][2]};
    double det = det3(m);
    // rows of the inverse of [e0 e1 e2]^T via cross products
    std::array<Point, 3> inv{cross(e[1], e[2]), cross(e[2], e[0]), cross(e[0], e[1])};
    for (int j = 0; j < 3; ++j) frame.grad[j + 1] = (1.0 / det) * inv[j];
  }
  frame.grad[0] = {0.0, 0.0, 0.0};
  for (int j = 1; j <= n; ++j) frame.grad[0] = frame.grad[0] - frame.grad[j];
  return frame;
}

std::vector<double> eval_whitney_basis(const BarycentricFrame& frame, int n, int k,
                                       const Simplex& face_positions,
                                       std::span<const double> bary) {
  auto tuples = combinations(n, k);
  std::vector<double> out(tuples.size(), 0.0);
  const double kf = factorial(k);
  std::array<double, 3> wedge{};
  for (int i = 0; i <= k; ++i) {
    wedge_components(frame, face_positions, i, k, tuples, wedge.data());
    double s = (i % 2 == 0 ? 1.0 : -1.0) * kf * bary[face_positions[i]];
    for (std::size_t t = 0; t < tuples.size(); ++t) out[t] += s * wedge[t];
  }
  return out;
}

namespace {

SparseMatrix assemble_mass(const SimplicialComplex& complex, int k, int threads) {
  const int n = complex.dim();
  const auto faces = combinations(n + 1, k + 1);
  const int nfaces = static_cast<int>(faces.size());
  const QuadratureRule rule = simplex_rule(n, kInnerProductDegree);

  // Reference integrals of lambda_a lambda_b (normalized by the measure).
  std::array<std::array<double, 4>, 4> ref_ll{};
  for (std::size_t q = 0; q < rule.size(); ++q)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        ref_ll[a][b] += rule.weights[q] * rule.points[q][a] * rule.points[q][b];

  const double kf2 = factorial(k) * factorial(k);
  const int ncells = complex.num_cells();
  std::vector<std::vector<Triplet>> buffers(num_chunks(ncells));

  parallel_chunks(ncells, threads, [&](int chunk, int begin, int end) {
    std::vector<Triplet>& buf = buffers[chunk];
    for (int cell = begin; cell < end; ++cell) {
      BarycentricFrame frame = barycentric_frame(complex, cell);
      std::array<std::array<double, 4>, 4> g{};
      for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) g[a][b] = g[b][a] = dot(frame.grad[a], frame.grad[b]);

      auto cf = complex.cell_faces(k, cell);
      for (int fa = 0; fa < nfaces; ++fa) {
        for (int fb = fa; fb < nfaces; ++fb) {
          double val = 0.0;
          for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
              double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
              val += sign * ref_ll[faces[fa][i]][faces[fb][j]] *
                     wedge_gram(g, faces[fa], i, faces[fb], j, k);
            }
          }
          val *= kf2 * frame.volume;
          buf.push_back({cf[fa], cf[fb], val});
          if (fb != fa) buf.push_back({cf[fb], cf[fa], val});
        }
      }
    }
  });

  std::vector<Triplet> triplets;
  std::size_t total = 0;
  for (const auto& b : buffers) total += b.size();
  triplets.reserve(total);
  for (const auto& b : buffers) triplets.insert(triplets.end(), b.begin(), b.end());
  const int sz = complex.skeleton_size(k);
  return SparseMatrix::from_triplets(sz, sz, std::move(triplets));
}

}  // namespace

WhitneySpace::WhitneySpace(const SimplicialComplex& complex, int k, int threads)
    : complex_(&complex), k_(k), threads_(threads) {
  if (k < 0 || k > complex.dim()) throw std::invalid_argument("WhitneySpace: k out of range");
  mass_ = assemble_mass(complex, k, threads);
}

Cochain de_rham_map(const SimplicialComplex& complex, int k, const AnalyticForm& u) {
  if (u.degree() != k || u.dim() != complex.dim())
    throw std::invalid_argument("de_rham_map: form degree mismatch");
  const int n = complex.dim();
  Cochain c;
  c.degree = k;
  c.coeffs.assign(complex.skeleton_size(k), 0.0);

  if (k == 0) {
    for (int v = 0; v < complex.num_vertices(); ++v)
      c.coeffs[v] = u.component(0, complex.vertex(v));
    return c;
  }

  const QuadratureRule rule = simplex_rule(k, kDeRhamDegree);
  const auto tuples = combinations(n, k);
  const int ntuples = static_cast<int>(tuples.size());
  const auto& skel = complex.skeleton(k);
  const double inv_kf = 1.0 / factorial(k);

  parallel_chunks(static_cast<int>(skel.size()), 1, [&](int, int begin, int end) {
    std::array<double, 3> uval{};
    for (int s = begin; s < end; ++s) {
      const Simplex& simplex = skel[s];
      std::array<Point, 4> verts;
      for (int i = 0; i <= k; ++i) verts[i] = complex.vertex(simplex[i]);
      // k x k minors of the affine parametrization Jacobian, one per tuple
      std::array<double, 3> minors{};
      for (int t = 0; t < ntuples; ++t) {
        std::array<std::array<double, 3>, 3> m{};
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) m[a][b] = (verts[b + 1] - verts[0])[tuples[t][a]];
        minors[t] = det_k(m, k);
      }
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        Point x{0.0, 0.0, 0.0};
        for (int i = 0; i <= k; ++i) x = x + rule.points[q][i] * verts[i];
        u.evaluate(x, uval.data());
        double val = 0.0;
        for (int t = 0; t < ntuples; ++t) val += uval[t] * minors[t];
        sum += rule.weights[q] * val;
      }
      c.coeffs[s] = inv_kf * sum;
    }
  });
  return c;
}

Cochain canonical_projection(const WhitneySpace& space, const AnalyticForm& u) {
  return de_rham_map(space.complex(), space.degree(), u);
}

double l2_error(const WhitneySpace& space, const Cochain& c, const AnalyticForm& g) {
  const SimplicialComplex& complex = space.complex();
  const int n = complex.dim();
  const int k = space.degree();
  if (c.degree != k || g.degree() != k || g.dim() != n)
    throw std::invalid_argument("l2_error: degree mismatch");
  if (static_cast<int>(c.coeffs.size()) != space.dim())
    throw std::invalid_argument("l2_error: cochain size mismatch");

  const QuadratureRule rule = simplex_rule(n, kInnerProductDegree);
  const auto faces = combinations(n + 1, k + 1);
  const auto tuples = combinations(n, k);
  const int nfaces = static_cast<int>(faces.size());
  const int ntuples = static_cast<int>(tuples.size());
  const double kf = factorial(k);
  const int ncells = complex.num_cells();

  std::vector<double> partials(num_chunks(ncells), 0.0);
  parallel_chunks(ncells, space.threads(), [&](int chunk, int begin, int end) {
    CellBasis basis;
    std::array<double, 3> gval{};
    double local = 0.0;
    for (int cell = begin; cell < end; ++cell) {
      BarycentricFrame frame = barycentric_frame(complex, cell);
      cell_basis(frame, k, faces, tuples, basis);
      auto cf = complex.cell_faces(k, cell);
      std::array<Point, 4> verts;
      for (int i = 0; i <= n; ++i) verts[i] = complex.vertex(complex.cells()[cell][i]);

      double acc = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        Point x{0.0, 0.0, 0.0};
        for (int i = 0; i <= n; ++i) x = x + rule.points[q][i] * verts[i];
        g.evaluate(x, gval.data());
        std::array<double, 3> val{};
        for (int f = 0; f < nfaces; ++f) {
          double coeff = c.coeffs[cf[f]];
          if (coeff == 0.0) continue;
          for (int i = 0; i <= k; ++i) {
            double s = (i % 2 == 0 ? 1.0 : -1.0) * kf * coeff * rule.points[q][faces[f][i]];
            for (int t = 0; t < ntuples; ++t) val[t] += s * basis.wedges[f][i][t];
          }
        }
        double diff2 = 0.0;
        for (int t = 0; t < ntuples; ++t) {
          double d = val[t] - gval[t];
          diff2 += d * d;
        }
        acc += rule.weights[q] * diff2;
      }
      local += frame.volume * acc;
    }
    partials[chunk] = local;
  });

  double total = 0.0;
  for (double p : partials) total += p;
  return std::sqrt(std::max(0.0, total));
}

double l2_norm(const SimplicialComplex& complex, const AnalyticForm& g, int threads) {
  const int n = complex.dim();
  if (g.dim() != n) throw std::invalid_argument("l2_norm: dimension mismatch");
  const QuadratureRule rule = simplex_rule(n, kInnerProductDegree);
  const int ncomp = g.num_components();
  const int ncells = complex.num_cells();

  std::vector<double> partials(num_chunks(ncells), 0.0);
  parallel_chunks(ncells, threads, [&](int chunk, int begin, int end) {
    std::array<double, 3> gval{};
    double local = 0.0;
    for (int cell = begin; cell < end; ++cell) {
      std::array<Point, 4> verts;
      for (int i = 0; i <= n; ++i) verts[i] = complex.vertex(complex.cells()[cell][i]);
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        Point x{0.0, 0.0, 0.0};
        for (int i = 0; i <= n; ++i) x = x + rule.points[q][i] * verts[i];
        g.evaluate(x, gval.data());
        double s = 0.0;
        for (int t = 0; t < ncomp; ++t) s += gval[t] * gval[t];
        acc += rule.weights[q] * s;
      }
      local += complex.cell_volume(cell) * acc;
    }
    partials[chunk] = local;
  });

  double total = 0.0;
  for (double p : partials) total += p;
  return std::sqrt(std::max(0.0, total));
}

std::vector<double> form_moments(const WhitneySpace& space, const AnalyticForm& u) {
  const SimplicialComplex& complex = space.complex();
  const int n = complex.dim();
  const int k = space.degree();
  if (u.degree() != k || u.dim() != n)
    throw std::invalid_argument("form_moments: degree mismatch");

  const QuadratureRule rule = simplex_rule(n, kInnerProductDegree);
  const auto faces = combinations(n + 1, k + 1);
  const auto tuples = combinations(n, k);
  const int nfaces = static_cast<int>(faces.size());
  const int ntuples = static_cast<int>(tuples.size());
  const double kf = factorial(k);
  const int ncells = complex.num_cells();

  std::vector<std::vector<std::pair<int, double>>> buffers(num_chunks(ncells));
  parallel_chunks(ncells, space.threads(), [&](int chunk, int begin, int end) {
    auto& buf = buffers[chunk];
    CellBasis basis;
    std::array<double, 3> uval{};
    for (int cell = begin; cell < end; ++cell) {
      BarycentricFrame frame = barycentric_frame(complex, cell);
      cell_basis(frame, k, faces, tuples, basis);
      auto cf = complex.cell_faces(k, cell);
      std::array<Point, 4> verts;
      for (int i = 0; i <= n; ++i) verts[i] = complex.vertex(complex.cells()[cell][i]);

      std::array<double, 6> local{};
      for (std::size_t q = 0; q < rule.size(); ++q) {
        Point x{0.0, 0.0, 0.0};
        for (int i = 0; i <= n; ++i) x = x + rule.points[q][i] * verts[i];
        u.evaluate(x, uval.data());
        for (int f = 0; f < nfaces; ++f) {
          double val = 0.0;
          for (int i = 0; i <= k; ++i) {
            double udotw = 0.0;
            for (int t = 0; t < ntuples; ++t) udotw += uval[t] * basis.wedges[f][i][t];
            double s = (i % 2 == 0 ? 1.0 : -1.0) * rule.points[q][faces[f][i]];
            val += s * udotw;
          }
          local[f] += rule.weights[q] * val;
        }
      }
      for (int f = 0; f < nfaces; ++f)
        buf.emplace_back(cf[f], kf * frame.volume * local[f]);
    }
  });

  std::vector<double> t(space.dim(), 0.0);
  for (const auto& buf : buffers)
    for (const auto& [idx, val] : buf) t[idx] += val;
  return t;
}

}  // namespace whitney
