#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace whitney {

struct TableRow {
  int level = 0;
  double h = 0.0;
  std::int64_t cells = 0;
  double error = 0.0;
  std::optional<double> order;  // undefined on the first row of a sequence
  std::optional<double> a_h;
  std::optional<double> dist;
};

/// Result of one experiment case. The h column follows the mesh-size
/// convention of the structured generators (vertex grid spacing), halving
/// per row within each case.
struct ExperimentTable {
  std::string case_id;
  std::string rule;
  std::string form;
  double tol = 0.0;
  std::vector<TableRow> rows;
  std::vector<std::string> notes;  // extra lines for txt/md output
  double seconds = 0.0;            // wall time; never written to files
};

struct RunOptions {
  int max_level = 0;  // 0 means the case default
  double tol = 1e-10;
  int threads = 1;
  std::string mesh_out_dir;     // dump meshes in the text format if nonempty
  double mem_budget_gb = 10.0;  // resource guard for 3D levels
};

struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Known cases: table1..table5, oracle, uniformity.
const std::vector<std::string>& known_cases();

ExperimentTable run_case(const std::string& case_id, const RunOptions& options = {});

/// format is one of csv, txt, md. CSV carries full-precision values with
/// columns level,h,cells,error,order,a_h,dist; txt/md show 3 significant
/// digits, orders with two decimals.
void emit(const ExperimentTable& table, const std::string& format, std::ostream& out);
void emit_file(const ExperimentTable& table, const std::string& format,
               const std::string& path);

}  // namespace whitney
