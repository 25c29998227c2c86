#include "whitney/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "whitney/codifferential.hpp"
#include "whitney/mesh_generators.hpp"

namespace whitney {

namespace {

constexpr std::int64_t kBytesPerCell2D = 2048;
constexpr std::int64_t kBytesPerCell3D = 8192;

void guard_memory(std::int64_t cells, int dim, double budget_gb) {
  const std::int64_t bytes = cells * (dim == 2 ? kBytesPerCell2D : kBytesPerCell3D);
  const double gb = static_cast<double>(bytes) / (1024.0 * 1024.0 * 1024.0);
  if (gb > budget_gb) {
    std::ostringstream msg;
    msg << "resource guard: " << cells << " cells need about " << gb
        << " GB, over the budget of " << budget_gb << " GB";
    throw ResourceGuardError(msg.str());
  }
}

std::string sci3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void maybe_dump_mesh(const SimplicialComplex& mesh, const RunOptions& options,
                     const std::string& case_id, int level) {
  if (options.mesh_out_dir.empty()) return;
  std::filesystem::create_directories(options.mesh_out_dir);
  std::ostringstream name;
  name << case_id << "_level" << level << ".txt";
  write_mesh_file(mesh, (std::filesystem::path(options.mesh_out_dir) / name.str()).string());
}

void push_consistency_row(ExperimentTable& table, int level, double h_display,
                          const ConsistencyResult& r) {
  TableRow row;
  row.level = level;
  row.h = h_display;
  row.cells = r.cell_count;
  row.error = r.error;
  row.a_h = r.a_h;
  row.dist = r.dist;
  if (!table.rows.empty())
    row.order = std::log2(table.rows.back().error / r.error);
  table.rows.push_back(row);
}

ExperimentTable run_consistency_case(const std::string& case_id, const RunOptions& options) {
  ExperimentTable table;
  table.case_id = case_id;
  table.tol = options.tol;

  struct CaseSpec {
    std::string form_name;
    std::string rule;
    int k = 1;
    int dim = 2;
    int first_level = 1;
    int default_max = 4;
    double h0 = 1.0;  // display h at the first level
  };
  CaseSpec spec;
  if (case_id == "table1") {
    spec = {"square1form", "RegularStandard2D", 1, 2, 1, 6, 0.5};
  } else if (case_id == "table2") {
    spec = {"square1form", "WhitneyStandard2D", 1, 2, 1, 6, 0.5};
  } else if (case_id == "table3") {
    spec = {"cube1form", "RegularRed3D", 1, 3, 1, 4, 1.0};
  } else if (case_id == "table4") {
    spec = {"cube1form", "WhitneyStandard3D", 1, 3, 0, 3, 1.0};
  } else {
    spec = {"cube2form", "RegularRed3D", 2, 3, 1, 4, 1.0};
  }
  table.rule = spec.rule;
  table.form = spec.form_name;
  const int max_level = options.max_level > 0 ? options.max_level : spec.default_max;
  const AnalyticForm u = builtin(spec.form_name);

  auto cells_at = [&](int level) -> std::int64_t {
    if (case_id == "table1") return 20LL << (2 * (level - 1));
    if (case_id == "table2") return 1LL << (2 * (level + 1));
    if (case_id == "table4") return 6LL << (3 * (level + 1));
    return 6LL << (3 * level);
  };
  guard_memory(cells_at(max_level), spec.dim, options.mem_budget_gb);

  SimplicialComplex mesh = spec.dim == 2 ? pwuniform20_base() : cube_six_tet();
  int refinements_done = 0;
  for (int level = spec.first_level; level <= max_level; ++level) {
    int want;  // refinements applied to the base mesh at this level
    if (case_id == "table1") {
      want = level - 1;
    } else if (case_id == "table4") {
      want = level + 1;
    } else if (case_id == "table2") {
      want = 0;  // direct generator
    } else {
      want = level;
    }
    if (case_id == "table2") {
      mesh = crisscross_sequence(level + 1);
    } else {
      for (; refinements_done < want; ++refinements_done)
        mesh = refine(mesh, rule_from_name(spec.rule));
    }
    maybe_dump_mesh(mesh, options, case_id, level);
    WhitneySpace space(mesh, spec.k, options.threads);
    ConsistencyResult r = consistency_error(space, u, options.tol);
    double h_display = spec.h0 / (1 << (level - spec.first_level));
    push_consistency_row(table, level, h_display, r);
  }
  return table;
}

ExperimentTable run_oracle_case(const RunOptions& options) {
  ExperimentTable table;
  table.case_id = "oracle";
  table.rule = "WhitneyStandard2D";
  table.form = "square1form";
  table.tol = options.tol;
  table.notes.push_back(
      "error = max over vertices of |d*_h pi_h u - closed-form w_h|; pass iff <= 1e-8");

  const int max_m = options.max_level > 0 ? std::max(options.max_level, 2) : 5;
  const AnalyticForm u = builtin("square1form");
  for (int m = 2; m <= max_m; ++m) {
    guard_memory(1LL << (2 * m), 2, options.mem_budget_gb);
    SimplicialComplex mesh = crisscross_sequence(m);
    maybe_dump_mesh(mesh, options, "oracle", m);
    const double h = 4.0 / (1 << m);
    WhitneySpace space1(mesh, 1, options.threads);
    WhitneySpace space0(mesh, 0, options.threads);
    Cochain c_u = de_rham_map(mesh, 1, u);
    Cochain w = discrete_codifferential(space1, space0, c_u, options.tol);
    double max_dev = 0.0;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      double expected = crisscross_closed_form_wh(h, mesh.vertex(v)[0]);
      max_dev = std::max(max_dev, std::abs(w.coeffs[v] - expected));
    }
    TableRow row;
    row.level = m;
    row.h = h;
    row.cells = mesh.num_cells();
    row.error = max_dev;
    table.rows.push_back(row);
  }
  return table;
}

ExperimentTable run_uniformity_case(const RunOptions& options) {
  ExperimentTable table;
  table.case_id = "uniformity";
  table.rule = "mixed";
  table.form = "none";
  table.tol = options.tol;
  table.notes.push_back("error = 0 iff observed conditions match the expected pattern;");
  table.notes.push_back("a_h column = condition 1 (parallel edges), dist column = condition 2 "
                        "(patch symmetry)");

  const std::vector<Point> axes3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const std::vector<Point> diag2 = {{1, 1, 0}, {1, -1, 0}};

  struct Check {
    std::string family;
    SimplicialComplex mesh;
    std::vector<Point> directions;
    bool expect1, expect2;
    int level;
  };
  std::vector<Check> checks;
  {
    SimplicialComplex mesh = cube_six_tet();
    for (int r = 1; r <= 2; ++r) {
      mesh = refine(mesh, RefinementRule::RegularRed3D);
      checks.push_back({"regular-red-3d", mesh, axes3, true, true, r});
    }
  }
  for (int m = 2; m <= 3; ++m)
    checks.push_back({"crisscross", crisscross_sequence(m), diag2, true, false, m});
  {
    SimplicialComplex mesh = cube_six_tet();
    for (int r = 1; r <= 2; ++r) {
      mesh = refine(mesh, RefinementRule::WhitneyStandard3D);
      checks.push_back({"whitney-standard-3d", mesh, axes3, false, false, r});
    }
  }

  for (const Check& check : checks) {
    UniformityReport report = check_uniform(check.mesh, check.directions);
    // whitney-standard-3d just has to fail somewhere; the other families must
    // match both expected flags exactly.
    bool ok = check.family == "whitney-standard-3d"
                  ? !report.uniform()
                  : report.cond1_ok == check.expect1 && report.cond2_ok == check.expect2;
    TableRow row;
    row.level = check.level;
    row.h = mesh_stats(check.mesh).h_max;
    row.cells = check.mesh.num_cells();
    row.error = ok ? 0.0 : 1.0;
    row.a_h = report.cond1_ok ? 1.0 : 0.0;
    row.dist = report.cond2_ok ? 1.0 : 0.0;
    table.rows.push_back(row);
    std::ostringstream note;
    note << check.family << " level " << check.level << ": cond1="
         << (report.cond1_ok ? "yes" : "no") << " cond2=" << (report.cond2_ok ? "yes" : "no")
         << " -> " << (ok ? "as expected" : "UNEXPECTED");
    table.notes.push_back(note.str());
  }
  return table;
}

}  // namespace

const std::vector<std::string>& known_cases() {
  static const std::vector<std::string> cases = {"table1", "table2", "table3", "table4",
                                                 "table5", "oracle", "uniformity"};
  return cases;
}

ExperimentTable run_case(const std::string& case_id, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentTable table;
  if (case_id == "oracle") {
    table = run_oracle_case(options);
  } else if (case_id == "uniformity") {
    table = run_uniformity_case(options);
  } else if (case_id == "table1" || case_id == "table2" || case_id == "table3" ||
             case_id == "table4" || case_id == "table5") {
    table = run_consistency_case(case_id, options);
  } else {
    throw std::invalid_argument("run_case: unknown case '" + case_id + "'");
  }
  table.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return table;
}

namespace {

void emit_csv(const ExperimentTable& table, std::ostream& out) {
  out << "level,h,cells,error,order,a_h,dist\n";
  for (const TableRow& r : table.rows) {
    out << r.level << ',' << full(r.h) << ',' << r.cells << ',' << full(r.error) << ',';
    if (r.order) out << full(*r.order);
    out << ',';
    if (r.a_h) out << full(*r.a_h);
    out << ',';
    if (r.dist) out << full(*r.dist);
    out << '\n';
  }
}

void emit_txt(const ExperimentTable& table, std::ostream& out) {
  out << "case: " << table.case_id << "  rule: " << table.rule << "  form: " << table.form
      << "  tol: " << sci3(table.tol) << "\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%5s %10s %10s %10s %7s %10s %10s\n", "level", "h", "cells",
                "error", "order", "a_h", "dist");
  out << line;
  for (const TableRow& r : table.rows) {
    std::snprintf(line, sizeof(line), "%5d %10s %10lld %10s %7s %10s %10s\n", r.level,
                  sci3(r.h).c_str(), static_cast<long long>(r.cells), sci3(r.error).c_str(),
                  r.order ? fixed2(*r.order).c_str() : "", r.a_h ? sci3(*r.a_h).c_str() : "",
                  r.dist ? sci3(*r.dist).c_str() : "");
    out << line;
  }
  for (const std::string& note : table.notes) out << "# " << note << "\n";
}

void emit_md(const ExperimentTable& table, std::ostream& out) {
  out << "# " << table.case_id << "\n\n";
  out << "rule: " << table.rule << ", form: " << table.form << ", tol: " << sci3(table.tol)
      << "\n\n";
  out << "| level | h | cells | error | order | a_h | dist |\n";
  out << "|------:|--:|------:|------:|------:|----:|-----:|\n";
  for (const TableRow& r : table.rows) {
    out << "| " << r.level << " | " << sci3(r.h) << " | " << r.cells << " | " << sci3(r.error)
        << " | " << (r.order ? fixed2(*r.order) : "") << " | "
        << (r.a_h ? sci3(*r.a_h) : "") << " | " << (r.dist ? sci3(*r.dist) : "") << " |\n";
  }
  if (!table.notes.empty()) {
    out << "\n";
    for (const std::string& note : table.notes) out << "- " << note << "\n";
  }
}

}  // namespace

void emit(const ExperimentTable& table, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    emit_csv(table, out);
  } else if (format == "txt") {
    emit_txt(table, out);
  } else if (format == "md") {
    emit_md(table, out);
  } else {
    throw std::invalid_argument("emit: unknown format '" + format + "'");
  }
}

void emit_file(const ExperimentTable& table, const std::string& format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_file: cannot open " + path);
  emit(table, format, out);
}

}  // namespace whitney
