#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hdbf/mean_tests.hpp"
#include "hdbf/mixture.hpp"
#include "hdbf/simulation.hpp"
#include "hdbf/traces.hpp"

namespace hdbf {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvOptions {
  char delimiter = ',';
  bool has_header = false;
};

// Numeric CSV to matrix. Ragged rows and non-numeric cells raise ParseError
// naming the file and 1-based line.
Matrix read_csv_matrix(const std::string& path, const CsvOptions& opt,
                       std::vector<std::string>* header = nullptr);

// Two-file layout: one matrix per group.
TwoSampleData load_two_files(const std::string& path1, const std::string& path2,
                             const CsvOptions& opt);

struct LabeledLoad {
  TwoSampleData data;
  std::string label1;  // lexicographically smaller label -> group 1
  std::string label2;
};
// Labeled single-file layout. label_col is a header name (requires
// has_header) or a 1-based column index. Exactly two distinct labels.
LabeledLoad load_labeled_file(const std::string& path, const std::string& label_col,
                              const CsvOptions& opt);

const char* innovation_name(Innovation m);  // "normal" / "t4" / "chi1"
int innovation_number(Innovation m);        // 1 / 2 / 3
const char* family_name(CovFamily f);       // "cs" / "drd"
Innovation parse_innovation(const std::string& s);
CovFamily parse_family(const std::string& s);

// ---- simulation grids ----

enum class GridKind { Size, Power, Df };

struct GridSpec {
  std::string name;
  GridKind kind = GridKind::Size;
  std::vector<SimConfig> cells;
};

std::vector<std::string> preset_names();
// Built-in grids reproducing the published table layouts. reps/alpha/seed
// overrides apply to every cell (0 = keep preset default).
GridSpec preset_grid(const std::string& name, std::size_t reps_override = 0,
                     double alpha_override = 0.0, std::uint64_t seed_base = 1);

// Plain key-value grid files; see the README for the schema.
GridSpec load_grid_file(const std::string& path);

// ---- rendering ----

std::string render_test_reports(const RunAllResult& res);
void write_test_reports_csv(const std::string& path, const RunAllResult& res);

std::string render_grid_results(const GridSpec& grid, const std::vector<CellResult>& cells);
// Machine-readable results: proportions, not percentages.
void write_grid_results_csv(const std::string& path, const GridSpec& grid,
                            const std::vector<CellResult>& cells);

// Eigenvalue spectra from a 3-column CSV (lambda_omega, lambda1, lambda2,
// descending).
MixtureSpec load_spectra_file(const std::string& path, std::size_t n1, std::size_t n2,
                              const CsvOptions& opt);

// Analytic cumulants, approximation parameters, Monte Carlo moments of the
// ratio mixture, and its KS distance to the approximating F distribution.
std::string render_oracle_report(const MixtureSpec& spec, std::size_t n_draws,
                                 std::uint64_t seed);

}  // namespace hdbf
