// Acceptance suite: runs every reproduction criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria. Pass --heavy (or set WHITNEY_ACCEPT_HEAVY=1) to include the
// optional level-5 3D runs.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "whitney/codifferential.hpp"
#include "whitney/experiment.hpp"
#include "whitney/mesh_generators.hpp"
#include "test_helpers.hpp"
#include "whitney/quadrature.hpp"

using namespace whitney;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++failures;
}

void info(const std::string& line) { std::cout << "      " << line << std::endl; }

std::string row_summary(const ExperimentTable& t) {
  std::string s;
  char buf[64];
  for (const TableRow& r : t.rows) {
    std::snprintf(buf, sizeof(buf), "%.3g", r.error);
    s += buf;
    s += " ";
  }
  return s;
}

bool sandwich_holds(const ExperimentTable& t) {
  for (const TableRow& r : t.rows) {
    if (!r.a_h || !r.dist) continue;
    if (!(*r.a_h <= r.error + 1e-8)) return false;
    if (!(r.error <= *r.dist + *r.a_h + 1e-8)) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = std::getenv("WHITNEY_ACCEPT_HEAVY") != nullptr;
  int threads = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--heavy") == 0) heavy = true;
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) threads = std::atoi(argv[i + 1]);
  }

  RunOptions options;
  options.threads = threads;

  std::vector<ExperimentTable> consistency_tables;

  // 1. crisscross counterexample, exact meshes
  {
    ExperimentTable t = run_case("table2", options);
    consistency_tables.push_back(t);
    const double expect_err[] = {1.15, 1.50, 1.60, 1.62, 1.63, 1.63};
    const double expect_ord[] = {-0.38, -0.09, -0.02, -0.01, -0.00};
    bool ok = t.rows.size() == 6;
    for (int i = 0; ok && i < 6; ++i) ok = std::abs(t.rows[i].error - expect_err[i]) <= 0.01;
    for (int i = 1; ok && i < 6; ++i)
      ok = t.rows[i].order && std::abs(*t.rows[i].order - expect_ord[i - 1]) <= 0.02;
    report(1, "crisscross 1-form errors plateau at 1.63", ok, row_summary(t));
  }

  // 2. closed-form oracle for the crisscross solution
  {
    RunOptions opt = options;
    opt.max_level = 5;  // h = 1, 1/2, 1/4, 1/8
    ExperimentTable t = run_case("oracle", opt);
    bool ok = t.rows.size() == 4;
    double worst = 0.0;
    for (const TableRow& r : t.rows) worst = std::max(worst, r.error);
    ok = ok && worst <= 1e-8;
    report(2, "vertex values match the closed form to 1e-8", ok,
           "max deviation " + std::to_string(worst));
  }

  // 3. uniform 3D sequence, 1-forms: first-order convergence
  {
    RunOptions opt = options;
    opt.max_level = heavy ? 5 : 4;
    ExperimentTable t = run_case("table3", opt);
    consistency_tables.push_back(t);
    const double expect_err[] = {1.69, 0.970, 0.513, 0.263};
    const double expect_ord[] = {0.80, 0.92, 0.96};
    bool ok = t.rows.size() >= 4;
    for (int i = 0; ok && i < 4; ++i)
      ok = std::abs(t.rows[i].error - expect_err[i]) <= 0.01 * expect_err[i];
    for (int i = 1; ok && i < 4; ++i)
      ok = t.rows[i].order && std::abs(*t.rows[i].order - expect_ord[i - 1]) <= 0.02;
    report(3, "uniform 3D 1-form errors converge at first order", ok, row_summary(t));
    if (heavy && t.rows.size() >= 5) {
      bool ok5 = std::abs(t.rows[4].error - 0.133) <= 0.01 * 0.133 && t.rows[4].order &&
                 std::abs(*t.rows[4].order - 0.98) <= 0.02;
      info(std::string("level 5: error ") + std::to_string(t.rows[4].error) +
           (ok5 ? " (matches 1.33e-1, order 0.98)" : " (OFF the published 1.33e-1)"));
    }
  }

  // 4. 2-forms on the uniform 3D sequence stay inconsistent
  {
    RunOptions opt = options;
    opt.max_level = heavy ? 5 : 4;
    ExperimentTable t = run_case("table5", opt);
    consistency_tables.push_back(t);
    const double expect_err[] = {1.59, 1.18, 1.00, 0.947};
    bool ok = t.rows.size() >= 4;
    for (int i = 0; ok && i < 4; ++i)
      ok = std::abs(t.rows[i].error - expect_err[i]) <= 0.01 * expect_err[i];
    report(4, "uniform 3D 2-form errors do not vanish", ok, row_summary(t));
    if (heavy && t.rows.size() >= 5)
      info("level 5 reported (not asserted): error " + std::to_string(t.rows[4].error));
  }

  // 5. standard subdivision in 3D: plateau
  {
    RunOptions opt = options;
    opt.max_level = heavy ? 4 : 3;
    ExperimentTable t = run_case("table4", opt);
    consistency_tables.push_back(t);
    bool ok = t.rows.size() >= 4;
    for (std::size_t i = 2; ok && i < t.rows.size(); ++i)
      ok = t.rows[i].error >= t.rows[i - 1].error - 1e-9;
    ok = ok && t.rows[3].error >= 2.8 && t.rows[3].error <= 3.4;
    report(5, "3D standard-subdivision errors plateau in [2.8, 3.4]", ok, row_summary(t));
    const double stretch[] = {1.81, 2.71, 3.02, 3.11};
    bool stretch_ok = true;
    for (int i = 0; i < 4 && stretch_ok; ++i)
      stretch_ok = std::abs(t.rows[i].error - stretch[i]) <= 0.02 * stretch[i];
    info(std::string("stretch digit match (1.81, 2.71, 3.02, 3.11 within 2%): ") +
         (stretch_ok ? "yes" : "no"));
  }

  // 6. piecewise uniform 2D sequence: first-order convergence
  {
    ExperimentTable t = run_case("table1", options);
    consistency_tables.push_back(t);
    bool ok = t.rows.size() == 6;
    for (std::size_t i = 3; ok && i < 6; ++i)
      ok = t.rows[i].order && *t.rows[i].order >= 0.9 && *t.rows[i].order <= 1.1;
    report(6, "piecewise-uniform 2D order over the last three refinements in [0.9, 1.1]", ok,
           row_summary(t));
  }

  // 7. sandwich inequality on every run above
  {
    bool ok = true;
    for (const ExperimentTable& t : consistency_tables) ok = ok && sandwich_holds(t);
    report(7, "A_h <= error <= dist + A_h + 1e-8 on every run", ok);
  }

  // 8. top-degree identity: A_h vanishes for 2-forms on 2D meshes
  {
    AnalyticForm top = square_top_form();
    bool ok = true;
    double worst = 0.0;
    for (int m = 1; m <= 4 && ok; ++m) {
      SimplicialComplex mesh = crisscross_sequence(m);
      WhitneySpace s2(mesh, 2, threads);
      worst = std::max(worst, a_h(s2, top));
      ok = worst <= 1e-10;
    }
    for (int level = 1; level <= 3 && ok; ++level) {
      SimplicialComplex mesh = piecewise_uniform_2d_sequence(level);
      WhitneySpace s2(mesh, 2, threads);
      worst = std::max(worst, a_h(s2, top));
      ok = worst <= 1e-10;
    }
    report(8, "A_h <= 1e-10 in the top degree on all 2D meshes", ok,
           "max " + std::to_string(worst));
  }

  // 9. uniformity checker on the three families
  {
    ExperimentTable t = run_case("uniformity", options);
    bool ok = !t.rows.empty();
    for (const TableRow& r : t.rows) ok = ok && r.error == 0.0;
    report(9, "uniformity checker: red-3D uniform, crisscross cond1-only, whitney-3D fails", ok);
  }

  // 10. property suites
  {
    bool ok = true;
    std::string detail;

    // d o d = 0 exactly on integer-valued cochains
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> val(-8, 8);
    auto dd_zero = [&](const SimplicialComplex& mesh) {
      for (int k = 0; k + 1 < mesh.dim(); ++k) {
        SparseMatrix dk = coboundary_matrix(mesh, k);
        SparseMatrix dk1 = coboundary_matrix(mesh, k + 1);
        std::vector<double> x(dk.cols());
        for (double& v : x) v = val(rng);
        for (double v : dk1.multiply(dk.multiply(x)))
          if (v != 0.0) return false;
      }
      return true;
    };
    ok = ok && dd_zero(crisscross_sequence(3)) && dd_zero(piecewise_uniform_2d_sequence(2)) &&
         dd_zero(refine(cube_six_tet(), RefinementRule::RegularRed3D)) &&
         dd_zero(refine(cube_six_tet(), RefinementRule::WhitneyStandard3D));
    if (!ok) detail = "d o d != 0";

    // quadrature exactness sweep
    if (ok) {
      for (int dim = 1; dim <= 3 && ok; ++dim) {
        for (int degree = 0; degree <= 10 && ok; ++degree) {
          QuadratureRule rule = simplex_rule(dim, degree);
          std::array<int, 3> a{0, 0, 0};
          for (a[0] = 0; a[0] <= degree && ok; ++a[0])
            for (a[1] = 0; a[1] <= (dim > 1 ? degree - a[0] : 0) && ok; ++a[1])
              for (a[2] = 0; a[2] <= (dim > 2 ? degree - a[0] - a[1] : 0) && ok; ++a[2]) {
                double expected = factorial(dim);
                int total = 0;
                for (int i = 0; i < dim; ++i) {
                  expected *= factorial(a[i]);
                  total += a[i];
                }
                expected /= factorial(total + dim);
                double got = 0.0;
                for (std::size_t q = 0; q < rule.size(); ++q) {
                  double mono = 1.0;
                  for (int i = 0; i < dim; ++i)
                    for (int e = 0; e < a[i]; ++e) mono *= rule.points[q][i + 1];
                  got += rule.weights[q] * mono;
                }
                ok = std::abs(got - expected) <= 1e-12 * std::abs(expected);
              }
        }
      }
      if (!ok) detail = "quadrature sweep";
    }

    // SPD probes and adjointness of d*_h
    if (ok) {
      SimplicialComplex mesh = crisscross_sequence(3);
      WhitneySpace s0(mesh, 0, threads), s1(mesh, 1, threads);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int probe = 0; probe < 100 && ok; ++probe) {
        std::vector<double> x(s1.dim());
        for (double& v : x) v = gauss(rng);
        std::vector<double> mx = s1.mass().multiply(x);
        double q = 0.0;
        for (int i = 0; i < s1.dim(); ++i) q += x[i] * mx[i];
        ok = q > 0.0;
      }
      if (ok) {
        std::vector<double> b(s0.dim());
        for (double& v : b) v = gauss(rng);
        auto [x, rep] = cg_solve(s0.mass(), b, {1e-10, 500});
        ok = rep.converged && rep.iterations < 500;
      }
      if (ok) {
        SparseMatrix d0 = coboundary_matrix(mesh, 0);
        for (int trial = 0; trial < 5 && ok; ++trial) {
          Cochain a;
          a.degree = 1;
          a.coeffs.resize(s1.dim());
          for (double& v : a.coeffs) v = gauss(rng);
          std::vector<double> bb(s0.dim());
          for (double& v : bb) v = gauss(rng);
          Cochain da = discrete_codifferential(s1, s0, a);
          std::vector<double> mda = s0.mass().multiply(da.coeffs);
          double lhs = 0.0;
          for (int i = 0; i < s0.dim(); ++i) lhs += bb[i] * mda[i];
          std::vector<double> dbb = d0.multiply(bb);
          std::vector<double> ma = s1.mass().multiply(a.coeffs);
          double rhs = 0.0;
          for (int i = 0; i < s1.dim(); ++i) rhs += dbb[i] * ma[i];
          ok = std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs));
        }
      }
      if (!ok) detail = "SPD / adjointness";
    }

    // projection identity R_h W_h = id on random cochains
    if (ok) {
      auto identity_on = [&](const SimplicialComplex& mesh, int k) {
        WhitneySpace space(mesh, k, threads);
        Cochain c = whitney::testing::random_cochain(rng, k, space.dim());
        AnalyticForm field = whitney::testing::make_whitney_field(mesh, k, c);
        Cochain back = canonical_projection(space, field);
        double dev = 0.0;
        for (int i = 0; i < space.dim(); ++i)
          dev = std::max(dev, std::abs(back.coeffs[i] - c.coeffs[i]));
        return dev <= 1e-12 * std::max(1.0, std::abs(c.coeffs[0]));
      };
      SimplicialComplex mesh2 = crisscross_sequence(2);
      SimplicialComplex mesh3 = cube_six_tet();
      ok = identity_on(mesh2, 0) && identity_on(mesh2, 1) && identity_on(mesh2, 2) &&
           identity_on(mesh3, 1) && identity_on(mesh3, 2) && identity_on(mesh3, 3);
      if (!ok) detail = "projection identity";
    }

    // projection error order for the builtin 1-forms (regression rate)
    if (ok) {
      using whitney::testing::observed_rate;
      AnalyticForm u2 = builtin("square1form");
      std::vector<double> errs;
      for (int m = 2; m <= 6; ++m) {
        SimplicialComplex mesh = crisscross_sequence(m);
        WhitneySpace s1(mesh, 1, threads);
        errs.push_back(l2_error(s1, canonical_projection(s1, u2), u2));
      }
      ok = observed_rate(errs) >= 0.9;
      if (ok) {
        AnalyticForm u3 = builtin("cube1form");
        std::vector<double> errs3;
        SimplicialComplex mesh = cube_six_tet();
        for (int r = 1; r <= 3; ++r) {
          mesh = refine(mesh, RefinementRule::RegularRed3D);
          WhitneySpace s1(mesh, 1, threads);
          errs3.push_back(l2_error(s1, canonical_projection(s1, u3), u3));
        }
        ok = observed_rate(errs3) >= 0.9;
      }
      if (!ok) detail = "projection error order";
    }

    report(10, "property suites (d o d, quadrature, SPD, adjointness, projection)", ok, detail);
  }

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
  return failures;
}
