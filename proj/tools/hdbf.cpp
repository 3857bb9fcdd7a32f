// Command-line front end: run the three mean tests on CSV data, run
// simulation grids, and run mixture-oracle diagnostics.
//
// Exit codes: 0 = ran, no rejection; 1 = ran, rejection at alpha;
//             2 = usage or parse error; 3 = numerical failure.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hdbf/io.hpp"
#include "hdbf/mean_tests.hpp"
#include "hdbf/mixture.hpp"
#include "hdbf/simulation.hpp"

namespace {

constexpr int kExitNoRejection = 0;
constexpr int kExitRejection = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::vector<hdbf::Method> parse_methods(const std::string& arg) {
  std::vector<hdbf::Method> out;
  std::string cur;
  const auto push = [&](const std::string& name) {
    if (name == "tcq")
      out.push_back(hdbf::Method::TCQ);
    else if (name == "tnp")
      out.push_back(hdbf::Method::TNP);
    else if (name == "fnp")
      out.push_back(hdbf::Method::FNP);
    else
      throw hdbf::ParseError("unknown method '" + name + "' (tcq|tnp|fnp)");
  };
  for (char c : arg) {
    if (c == ',') {
      push(cur);
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  push(cur);
  return out;
}

int cmd_test(const std::vector<std::string>& files, const std::string& label_col,
             double alpha, const std::string& methods_arg, char delimiter, bool header,
             const std::string& out_csv) {
  const hdbf::CsvOptions opt{delimiter, header};
  hdbf::TwoSampleData data;
  if (files.size() == 2) {
    data = hdbf::load_two_files(files[0], files[1], opt);
  } else {
    if (label_col.empty()) throw hdbf::ParseError("single-file layout needs --label-col");
    const auto loaded = hdbf::load_labeled_file(files[0], label_col, opt);
    std::cerr << "groups: '" << loaded.label1 << "' (n1=" << loaded.data.n1() << "), '"
              << loaded.label2 << "' (n2=" << loaded.data.n2()
              << "), p=" << loaded.data.p() << "\n";
    data = loaded.data;
  }
  const auto result = hdbf::run_all(data, alpha, parse_methods(methods_arg));
  std::cout << hdbf::render_test_reports(result);
  if (!out_csv.empty()) hdbf::write_test_reports_csv(out_csv, result);
  if (result.any_failure()) return kExitNumerical;
  return result.any_rejection() ? kExitRejection : kExitNoRejection;
}

int cmd_simulate(const std::string& preset, const std::string& config_file,
                 std::size_t reps, double alpha, std::uint64_t seed,
                 const std::string& out_csv) {
  hdbf::GridSpec grid;
  if (!preset.empty()) {
    grid = hdbf::preset_grid(preset, reps, alpha, seed);
  } else if (!config_file.empty()) {
    grid = hdbf::load_grid_file(config_file);
    for (auto& cell : grid.cells) {
      if (reps) cell.n_reps = reps;
      if (alpha > 0.0) cell.alpha = alpha;
    }
  } else {
    throw hdbf::ParseError("simulate needs --preset or --config");
  }
  std::vector<hdbf::CellResult> cells;
  cells.reserve(grid.cells.size());
  bool any_cell_failed = false;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const auto& c = grid.cells[i];
    std::cerr << "cell " << (i + 1) << "/" << grid.cells.size()
              << ": model=" << hdbf::innovation_number(c.model)
              << " family=" << hdbf::family_name(c.cov_family) << " p=" << c.p << " n=("
              << c.n1 << "," << c.n2 << ") rho2=" << c.rho2 << " delta=" << c.delta
              << " reps=" << c.n_reps << " ..." << std::flush;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cells.push_back(hdbf::run_cell(c));
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::fprintf(stderr, " done (%.1fs)\n", secs);
      if (cells.back().n_failed_reps)
        std::cerr << "  note: " << cells.back().n_failed_reps
                  << " replications had failed methods\n";
    } catch (const std::exception& e) {
      std::cerr << " FAILED: " << e.what() << "\n";
      any_cell_failed = true;
      hdbf::CellResult empty;
      empty.config = c;
      cells.push_back(empty);  // keeps the table shape; all counts zero
    }
  }
  std::cout << hdbf::render_grid_results(grid, cells);
  if (!out_csv.empty()) {
    hdbf::write_grid_results_csv(out_csv, grid, cells);
    std::cerr << "wrote " << out_csv << "\n";
  }
  return any_cell_failed ? kExitNumerical : kExitNoRejection;
}

int cmd_oracle(const std::string& spectra_file, const std::string& family, std::size_t p,
               std::size_t n1, std::size_t n2, double rho1, double rho2, double sigma1_sq,
               double sigma2_sq, std::size_t draws, std::uint64_t seed, char delimiter,
               bool header) {
  hdbf::MixtureSpec spec;
  if (!spectra_file.empty()) {
    spec = hdbf::load_spectra_file(spectra_file, n1, n2, hdbf::CsvOptions{delimiter, header});
  } else {
    hdbf::SimConfig c;
    c.cov_family = hdbf::parse_family(family);
    c.p = p;
    c.n1 = n1;
    c.n2 = n2;
    c.rho1 = rho1;
    c.rho2 = rho2;
    c.sigma1_sq = sigma1_sq;
    c.sigma2_sq = sigma2_sq;
    spec = hdbf::mixture_spec_from_covariances(hdbf::covariance_matrix(c, 1),
                                               hdbf::covariance_matrix(c, 2), n1, n2);
  }
  std::cout << hdbf::render_oracle_report(spec, draws, seed);
  return kExitNoRejection;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normal-reference F-type tests for high-dimensional two-sample means"};
  app.require_subcommand(1);

  auto* t = app.add_subcommand("test", "run the mean tests on CSV data");
  std::vector<std::string> files;
  std::string label_col, methods = "tcq,tnp,fnp", out_csv;
  double alpha = 0.05;
  std::string delimiter = ",";
  bool header = false;
  t->add_option("files", files, "one labeled CSV or two group CSVs")
      ->required()
      ->expected(1, 2);
  t->add_option("--label-col", label_col, "label column (header name or 1-based index)");
  t->add_option("--alpha", alpha, "significance level")->check(CLI::Range(1e-9, 1.0));
  t->add_option("--methods", methods, "comma list of tcq,tnp,fnp");
  t->add_option("--delimiter", delimiter, "field delimiter (default ',')");
  t->add_flag("--header", header, "first row is a header");
  t->add_option("--out", out_csv, "write a machine-readable results CSV");

  auto* s = app.add_subcommand("simulate", "run a size/power/df simulation grid");
  std::string preset, config_file, sim_out;
  std::size_t reps = 0;
  double sim_alpha = 0.0;
  std::uint64_t seed = 1;
  bool list_presets = false;
  s->add_option("--preset", preset, "built-in grid (see --list)");
  s->add_option("--config", config_file, "grid description file");
  s->add_option("--reps", reps, "override replication count for every cell");
  s->add_option("--alpha", sim_alpha, "override nominal size for every cell");
  s->add_option("--seed", seed, "base seed (cells derive their own)");
  s->add_option("--out", sim_out, "write per-cell results CSV (proportions)");
  s->add_flag("--list", list_presets, "list preset names and exit");

  auto* o = app.add_subcommand("oracle", "mixture-distribution diagnostics");
  std::string spectra_file, family = "cs";
  std::size_t p = 50, n1 = 30, n2 = 50, draws = 100000;
  double rho1 = 0.1, rho2 = 0.1, sigma1_sq = 1.0, sigma2_sq = 2.0;
  std::uint64_t oracle_seed = 1;
  std::string oracle_delim = ",";
  bool oracle_header = false;
  o->add_option("--spectra", spectra_file, "CSV with columns lambda_omega,lambda1,lambda2");
  o->add_option("--family", family, "covariance family cs|drd");
  o->add_option("--p", p, "dimension");
  o->add_option("--n1", n1, "group 1 size");
  o->add_option("--n2", n2, "group 2 size");
  o->add_option("--rho1", rho1, "group 1 correlation parameter");
  o->add_option("--rho2", rho2, "group 2 correlation parameter");
  o->add_option("--sigma1-sq", sigma1_sq, "group 1 variance scale");
  o->add_option("--sigma2-sq", sigma2_sq, "group 2 variance scale");
  o->add_option("--draws", draws, "Monte Carlo draw count");
  o->add_option("--seed", oracle_seed, "RNG seed");
  o->add_option("--delimiter", oracle_delim, "spectra file delimiter");
  o->add_flag("--header", oracle_header, "spectra file has a header");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (t->parsed())
      return cmd_test(files, label_col, alpha, methods,
                      delimiter.empty() ? ',' : delimiter[0], header, out_csv);
    if (s->parsed()) {
      if (list_presets) {
        for (const auto& name : hdbf::preset_names()) std::cout << name << "\n";
        return kExitNoRejection;
      }
      return cmd_simulate(preset, config_file, reps, sim_alpha, seed, sim_out);
    }
    if (o->parsed())
      return cmd_oracle(spectra_file, family, p, n1, n2, rho1, rho2, sigma1_sq, sigma2_sq,
                        draws, oracle_seed, oracle_delim.empty() ? ',' : oracle_delim[0],
                        oracle_header);
  } catch (const hdbf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
