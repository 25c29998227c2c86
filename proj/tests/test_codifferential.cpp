#include <cmath>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "whitney/codifferential.hpp"
#include "whitney/mesh_generators.hpp"

using namespace whitney;
using whitney::testing::make_whitney_field;
using whitney::testing::random_cochain;

TEST_CASE("codifferential of the zero cochain is zero") {
  SimplicialComplex mesh = crisscross_sequence(2);
  WhitneySpace s1(mesh, 1), s0(mesh, 0);
  Cochain zero{1, std::vector<double>(s1.dim(), 0.0)};
  Cochain w = discrete_codifferential(s1, s0, zero);
  for (double v : w.coeffs) CHECK(v == 0.0);
}

TEST_CASE("discrete codifferential is adjoint to the coboundary") {
  std::mt19937 rng(53);
  auto check = [&](const SimplicialComplex& mesh, int k) {
    WhitneySpace sk(mesh, k), skm1(mesh, k - 1);
    SparseMatrix d = coboundary_matrix(mesh, k - 1);
    for (int trial = 0; trial < 5; ++trial) {
      Cochain a = random_cochain(rng, k, sk.dim());
      Cochain b = random_cochain(rng, k - 1, skm1.dim());
      Cochain da = discrete_codifferential(sk, skm1, a, 1e-13);
      std::vector<double> m_da = skm1.mass().multiply(da.coeffs);
      double lhs = 0.0;
      for (int i = 0; i < skm1.dim(); ++i) lhs += b.coeffs[i] * m_da[i];
      std::vector<double> db = d.multiply(b.coeffs);
      std::vector<double> ma = sk.mass().multiply(a.coeffs);
      double rhs = 0.0;
      for (int i = 0; i < sk.dim(); ++i) rhs += db[i] * ma[i];
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  };
  check(crisscross_sequence(2), 1);
  check(crisscross_sequence(2), 2);
  SimplicialComplex cube = refine(cube_six_tet(), RefinementRule::RegularRed3D);
  check(cube, 1);
  check(cube, 2);
  check(cube, 3);
}

TEST_CASE("closed-form vertex values of w_h on crisscross meshes") {
  // Frozen against an exact rational Gaussian elimination of the weak problem
  // at h = 1/2 (see the x column values below, all exact fractions).
  CHECK(crisscross_closed_form_wh(0.5, -1.0) == doctest::Approx(-0.5));    // -1/2
  CHECK(crisscross_closed_form_wh(0.5, -0.75) == doctest::Approx(-4.25));  // -17/4
  CHECK(crisscross_closed_form_wh(0.5, -0.5) == doctest::Approx(0.0));
  CHECK(crisscross_closed_form_wh(0.5, -0.25) == doctest::Approx(-1.5));   // -3/2
  CHECK(crisscross_closed_form_wh(0.5, 0.0) == doctest::Approx(0.0));
  CHECK(crisscross_closed_form_wh(0.5, 0.25) == doctest::Approx(1.5));
  CHECK(crisscross_closed_form_wh(0.5, 0.75) == doctest::Approx(4.25));
  CHECK(crisscross_closed_form_wh(0.5, 1.0) == doctest::Approx(0.5));
  // h = 1/4: boundary-adjacent is -(6 - 7h/2), interior odd multiples are 6x
  CHECK(crisscross_closed_form_wh(0.25, -0.875) == doctest::Approx(-5.125));
  CHECK(crisscross_closed_form_wh(0.25, 0.375) == doctest::Approx(2.25));
  CHECK(crisscross_closed_form_wh(0.25, 0.5) == doctest::Approx(0.0));

  CHECK_THROWS(crisscross_closed_form_wh(2.0, 0.0));
  CHECK_THROWS(crisscross_closed_form_wh(0.5, 0.3));
}

TEST_CASE("computed w_h matches the closed form on crisscross meshes") {
  AnalyticForm u = builtin("square1form");
  for (int m = 3; m <= 4; ++m) {
    SimplicialComplex mesh = crisscross_sequence(m);
    const double h = 4.0 / (1 << m);
    WhitneySpace s1(mesh, 1), s0(mesh, 0);
    Cochain cu = de_rham_map(mesh, 1, u);
    Cochain w = discrete_codifferential(s1, s0, cu);
    double max_dev = 0.0;
    for (int v = 0; v < mesh.num_vertices(); ++v)
      max_dev = std::max(max_dev,
                         std::abs(w.coeffs[v] - crisscross_closed_form_wh(h, mesh.vertex(v)[0])));
    CHECK(max_dev <= 1e-8);
  }
}

TEST_CASE("weak-problem right-hand side at interior diamond vertices equals 4xm") {
  AnalyticForm u = builtin("square1form");
  const int m = 3;
  SimplicialComplex mesh = crisscross_sequence(m);
  const double h = 4.0 / (1 << m);
  const double cell_area = h * h / 4.0;
  WhitneySpace s1(mesh, 1);
  Cochain cu = de_rham_map(mesh, 1, u);
  std::vector<double> rhs =
      coboundary_matrix(mesh, 0).multiply_transpose(s1.mass().multiply(cu.coeffs));
  int checked = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Point& p = mesh.vertex(v);
    double ratio = p[0] / (h / 2.0);
    bool odd = std::abs(ratio - std::round(ratio)) < 1e-12 &&
               std::llround(ratio) % 2 != 0;
    bool interior = p[0] > -1.0 + h / 2.0 + 1e-12 && p[0] < 1.0 - h / 2.0 - 1e-12;
    if (odd && interior) {
      CHECK(rhs[v] == doctest::Approx(4.0 * p[0] * cell_area).epsilon(1e-10));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("consistency error carries the sandwich inequality") {
  AnalyticForm u = builtin("square1form");
  for (int m = 2; m <= 4; ++m) {
    SimplicialComplex mesh = crisscross_sequence(m);
    WhitneySpace s1(mesh, 1);
    ConsistencyResult r = consistency_error(s1, u);
    CHECK(r.a_h <= r.error + 1e-8);
    CHECK(r.error <= r.dist + r.a_h + 1e-8);
    CHECK(r.cell_count == mesh.num_cells());
    CHECK(r.h == doctest::Approx(4.0 / (1 << m)));
  }
}

TEST_CASE("A_h vanishes on Whitney forms and in the top degree") {
  std::mt19937 rng(59);
  SimplicialComplex mesh = crisscross_sequence(2);
  // u already in the Whitney space
  {
    WhitneySpace s1(mesh, 1);
    Cochain c = random_cochain(rng, 1, s1.dim());
    AnalyticForm field = make_whitney_field(mesh, 1, c);
    CHECK(a_h(s1, field) <= 1e-10);
  }
  // top degree: 2-forms on 2D meshes
  AnalyticForm top = square_top_form();
  for (int m = 1; m <= 3; ++m) {
    SimplicialComplex cc = crisscross_sequence(m);
    WhitneySpace s2(cc, 2);
    CHECK(a_h(s2, top) <= 1e-10);
  }
  {
    SimplicialComplex pw = piecewise_uniform_2d_sequence(2);
    WhitneySpace s2(pw, 2);
    CHECK(a_h(s2, top) <= 1e-10);
  }
}

TEST_CASE("A_h stays bounded away from zero on crisscross meshes") {
  AnalyticForm u = builtin("square1form");
  for (int m = 3; m <= 4; ++m) {
    SimplicialComplex mesh = crisscross_sequence(m);
    WhitneySpace s1(mesh, 1);
    CHECK(a_h(s1, u) > 1.0);
  }
}

TEST_CASE("best approximation distance") {
  std::mt19937 rng(61);
  SimplicialComplex mesh = crisscross_sequence(2);
  WhitneySpace s1(mesh, 1);
  // member of the space: distance ~ 0 (Pythagoras cancellation noise only)
  Cochain c = random_cochain(rng, 1, s1.dim());
  AnalyticForm field = make_whitney_field(mesh, 1, c);
  CHECK(best_approx_distance(s1, field) <= 1e-7);

  // 2x is globally affine, hence already in the degree-0 space on every mesh
  AnalyticForm u = builtin("square1form");
  for (int m = 2; m <= 4; ++m) {
    SimplicialComplex cc = crisscross_sequence(m);
    WhitneySpace s0(cc, 0);
    CHECK(best_approx_distance(s0, u.codifferential()) <= 1e-7);
  }

  // a curved 1-form target: dist decays at first order
  AnalyticForm g = square_top_form();  // its codifferential is a cubic 1-form
  std::vector<double> dists;
  for (int m = 2; m <= 5; ++m) {
    SimplicialComplex cc = crisscross_sequence(m);
    WhitneySpace s1m(cc, 1);
    dists.push_back(best_approx_distance(s1m, g.codifferential()));
  }
  CHECK(whitney::testing::observed_rate(dists) >= 0.9);
}

TEST_CASE("combinatorial laplacian: constants, symmetry, nonnegativity") {
  std::mt19937 rng(67);
  SimplicialComplex mesh = crisscross_sequence(2);
  {
    WhitneySpace s0(mesh, 0);
    Cochain ones{0, std::vector<double>(s0.dim(), 1.0)};
    Cochain lap = combinatorial_laplacian_apply(s0, ones);
    for (double v : lap.coeffs) CHECK(std::abs(v) <= 1e-10);
  }
  for (int k = 0; k <= 2; ++k) {
    WhitneySpace sk(mesh, k);
    Cochain a = random_cochain(rng, k, sk.dim());
    Cochain b = random_cochain(rng, k, sk.dim());
    Cochain la = combinatorial_laplacian_apply(sk, a);
    Cochain lb = combinatorial_laplacian_apply(sk, b);
    std::vector<double> mlb = sk.mass().multiply(lb.coeffs);
    std::vector<double> mla = sk.mass().multiply(la.coeffs);
    double ab = 0.0, ba = 0.0, aa = 0.0;
    for (int i = 0; i < sk.dim(); ++i) {
      ab += a.coeffs[i] * mlb[i];
      ba += b.coeffs[i] * mla[i];
      aa += a.coeffs[i] * mla[i];
    }
    CHECK(std::abs(ab - ba) <= 1e-8 * std::max(1.0, std::abs(ab)));
    CHECK(aa >= -1e-10);
  }
}

TEST_CASE("inverse estimate ratio stays level-independent on crisscross meshes") {
  // a constant 0-form has zero ratio
  {
    SimplicialComplex mesh = crisscross_sequence(2);
    WhitneySpace s0(mesh, 0), s1(mesh, 1);
    Cochain ones{0, std::vector<double>(s0.dim(), 1.0)};
    CHECK(inverse_estimate_ratio_for(s0, s1, ones, mesh_stats(mesh).h_min) == 0.0);
  }
  std::vector<double> ratios, hs;
  for (int m = 2; m <= 6; ++m) {
    SimplicialComplex mesh = crisscross_sequence(m);
    WhitneySpace s0(mesh, 0);
    ratios.push_back(inverse_estimate_ratio(s0));
    hs.push_back(mesh_stats(mesh).h_min);
  }
  // bounded on levels 2..5
  double lo = *std::min_element(ratios.begin(), ratios.end() - 1);
  double hi = *std::max_element(ratios.begin(), ratios.end() - 1);
  CHECK(hi / lo <= 1.5);
  // log-log regression slope of ratio vs h_min over the asymptotic levels 3..6
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(ratios.size()) - 1;
  for (int i = 1; i <= n; ++i) {
    double x = std::log(hs[i]), y = std::log(ratios[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope) <= 0.1);
}
