#include "hdbf/io.hpp"

#include "hdbf/special_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace hdbf {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& msg) {
  std::ostringstream os;
  os << path << ":" << line << ": " << msg;
  throw ParseError(os.str());
}

struct RawCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // trimmed cells
  std::vector<std::size_t> line_numbers;       // 1-based source lines
};

RawCsv read_raw_csv(const std::string& path, const CsvOptions& opt) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  RawCsv raw;
  std::string line;
  std::size_t lineno = 0;
  bool header_pending = opt.has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line, opt.delimiter);
    if (header_pending) {
      raw.header = std::move(cells);
      header_pending = false;
      continue;
    }
    raw.rows.push_back(std::move(cells));
    raw.line_numbers.push_back(lineno);
  }
  if (header_pending) parse_fail(path, 1, "expected a header row, file is empty");
  if (raw.rows.empty()) parse_fail(path, lineno ? lineno : 1, "no data rows");
  const std::size_t width = raw.rows.front().size();
  for (std::size_t r = 0; r < raw.rows.size(); ++r)
    if (raw.rows[r].size() != width)
      parse_fail(path, raw.line_numbers[r],
                 "ragged row: expected " + std::to_string(width) + " fields, got " +
                     std::to_string(raw.rows[r].size()));
  if (!raw.header.empty() && raw.header.size() != width)
    parse_fail(path, 1, "header width differs from data width");
  return raw;
}

}  // namespace

Matrix read_csv_matrix(const std::string& path, const CsvOptions& opt,
                       std::vector<std::string>* header) {
  RawCsv raw = read_raw_csv(path, opt);
  if (header) *header = raw.header;
  Matrix m(raw.rows.size(), raw.rows.front().size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    for (std::size_t c = 0; c < raw.rows[r].size(); ++c) {
      double v;
      if (!parse_double(raw.rows[r][c], v))
        parse_fail(path, raw.line_numbers[r],
                   "non-numeric cell '" + raw.rows[r][c] + "' in column " +
                       std::to_string(c + 1));
      if (!std::isfinite(v))
        parse_fail(path, raw.line_numbers[r], "non-finite value in column " +
                                                  std::to_string(c + 1));
      m(r, c) = v;
    }
  }
  return m;
}

TwoSampleData load_two_files(const std::string& path1, const std::string& path2,
                             const CsvOptions& opt) {
  TwoSampleData data;
  data.x1 = read_csv_matrix(path1, opt);
  data.x2 = read_csv_matrix(path2, opt);
  if (data.x1.cols() != data.x2.cols())
    throw ParseError(path1 + ", " + path2 + ": groups have " +
                     std::to_string(data.x1.cols()) + " and " +
                     std::to_string(data.x2.cols()) + " columns");
  validate(data);
  return data;
}

LabeledLoad load_labeled_file(const std::string& path, const std::string& label_col,
                              const CsvOptions& opt) {
  RawCsv raw = read_raw_csv(path, opt);
  const std::size_t width = raw.rows.front().size();

  std::size_t col = width;  // resolve the label column
  if (!raw.header.empty()) {
    for (std::size_t c = 0; c < raw.header.size(); ++c)
      if (raw.header[c] == label_col) col = c;
  }
  if (col == width) {
    double idx;
    if (parse_double(label_col, idx) && idx >= 1 && idx <= static_cast<double>(width) &&
        idx == std::floor(idx))
      col = static_cast<std::size_t>(idx) - 1;
    else
      throw ParseError(path + ": label column '" + label_col +
                       "' not found (use a header name or a 1-based index)");
  }

  std::set<std::string> labels;
  for (const auto& row : raw.rows) labels.insert(row[col]);
  if (labels.size() != 2)
    throw ParseError(path + ": expected exactly 2 distinct labels, found " +
                     std::to_string(labels.size()));
  LabeledLoad out;
  out.label1 = *labels.begin();
  out.label2 = *std::next(labels.begin());

  std::vector<std::vector<double>> g1, g2;
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    std::vector<double> vals;
    vals.reserve(width - 1);
    for (std::size_t c = 0; c < width; ++c) {
      if (c == col) continue;
      double v;
      if (!parse_double(raw.rows[r][c], v))
        parse_fail(path, raw.line_numbers[r],
                   "non-numeric cell '" + raw.rows[r][c] + "' in column " +
                       std::to_string(c + 1));
      vals.push_back(v);
    }
    (raw.rows[r][col] == out.label1 ? g1 : g2).push_back(std::move(vals));
  }
  const auto to_matrix = [](const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  };
  out.data.x1 = to_matrix(g1);
  out.data.x2 = to_matrix(g2);
  validate(out.data);
  return out;
}

const char* innovation_name(Innovation m) {
  switch (m) {
    case Innovation::Normal: return "normal";
    case Innovation::ScaledT4: return "t4";
    case Innovation::ScaledCenteredChi1: return "chi1";
  }
  return "?";
}

int innovation_number(Innovation m) {
  switch (m) {
    case Innovation::Normal: return 1;
    case Innovation::ScaledT4: return 2;
    case Innovation::ScaledCenteredChi1: return 3;
  }
  return 0;
}

const char* family_name(CovFamily f) {
  return f == CovFamily::CompoundSymmetry ? "cs" : "drd";
}

Innovation parse_innovation(const std::string& s) {
  if (s == "normal" || s == "1") return Innovation::Normal;
  if (s == "t4" || s == "2") return Innovation::ScaledT4;
  if (s == "chi1" || s == "3") return Innovation::ScaledCenteredChi1;
  throw ParseError("unknown innovation model '" + s + "' (normal|t4|chi1)");
}

CovFamily parse_family(const std::string& s) {
  if (s == "cs") return CovFamily::CompoundSymmetry;
  if (s == "drd") return CovFamily::DRD;
  throw ParseError("unknown covariance family '" + s + "' (cs|drd)");
}

// ---------------------------------------------------------------------------
// presets

namespace {

struct NPair {
  std::size_t n1, n2;
};
constexpr NPair kN1{30, 50}, kN2{120, 200}, kN3{240, 400};
constexpr double kRhos[3] = {0.1, 0.5, 0.9};

// delta used by the published power table, per (p, n) block
double power_delta(std::size_t p, const NPair& n) {
  if (p == 50) return n.n1 == 30 ? 1.5 : (n.n1 == 120 ? 0.7 : 0.5);
  if (p == 500) return n.n1 == 30 ? 4.0 : (n.n1 == 120 ? 2.0 : 1.3);
  return n.n1 == 30 ? 5.4 : (n.n1 == 120 ? 2.5 : 1.9);
}

SimConfig base_cell(Innovation model, CovFamily family, std::size_t p, const NPair& n,
                    double rho2, double delta, std::size_t reps) {
  SimConfig c;
  c.model = model;
  c.cov_family = family;
  c.p = p;
  c.n1 = n.n1;
  c.n2 = n.n2;
  c.rho1 = 0.1;
  c.rho2 = rho2;
  c.sigma1_sq = 1.0;
  c.sigma2_sq = 2.0;
  c.delta = delta;
  c.n_reps = reps;
  c.alpha = 0.05;
  return c;
}

void push_block(GridSpec& g, Innovation model, CovFamily family,
                const std::vector<std::pair<std::size_t, NPair>>& pn, bool power,
                std::size_t reps) {
  for (const auto& [p, n] : pn)
    for (double rho2 : kRhos)
      g.cells.push_back(base_cell(model, family, p, n, rho2,
                                  power ? power_delta(p, n) : 0.0, reps));
}

const std::vector<std::pair<std::size_t, NPair>> kQuickPN = {
    {50, kN1}, {50, kN2}, {500, kN1}};
const std::vector<std::pair<std::size_t, NPair>> kDfQuickPN = {
    {50, kN1}, {50, kN2}, {50, kN3}};
const std::vector<std::pair<std::size_t, NPair>> kFullPN = {
    {50, kN1},  {50, kN2},  {50, kN3},  {500, kN1},  {500, kN2},
    {500, kN3}, {1000, kN1}, {1000, kN2}, {1000, kN3}};

}  // namespace

std::vector<std::string> preset_names() {
  return {"table1-quick", "table1-full", "table2-quick", "table2-full",
          "table3-quick", "table3-full", "table4-quick", "table4-full",
          "table5-quick", "table5-full"};
}

GridSpec preset_grid(const std::string& name, std::size_t reps_override,
                     double alpha_override, std::uint64_t seed_base) {
  GridSpec g;
  g.name = name;
  const bool quick = name.size() > 6 && name.substr(name.size() - 6) == "-quick";
  const bool full = name.size() > 5 && name.substr(name.size() - 5) == "-full";
  if (!quick && !full) throw ParseError("unknown preset '" + name + "'");
  const std::string table = name.substr(0, name.find('-'));
  const CovFamily family =
      (table == "table4" || table == "table5") ? CovFamily::DRD : CovFamily::CompoundSymmetry;
  const std::vector<Innovation> models =
      quick ? std::vector<Innovation>{Innovation::Normal}
            : std::vector<Innovation>{Innovation::Normal, Innovation::ScaledT4,
                                      Innovation::ScaledCenteredChi1};

  if (table == "table1" || table == "table4") {
    g.kind = GridKind::Size;
    for (Innovation m : models)
      push_block(g, m, family, quick ? kQuickPN : kFullPN, false,
                 quick ? 2000 : 10000);
  } else if (table == "table2" || table == "table5") {
    g.kind = GridKind::Df;
    for (Innovation m : models)
      push_block(g, m, family, quick ? kDfQuickPN : kFullPN, false,
                 quick ? 1000 : 10000);
  } else if (table == "table3") {
    g.kind = GridKind::Power;
    for (Innovation m : models)
      push_block(g, m, family, quick ? std::vector<std::pair<std::size_t, NPair>>{{50, kN1}}
                                     : kFullPN,
                 true, quick ? 2000 : 10000);
  } else {
    throw ParseError("unknown preset '" + name + "'");
  }

  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    auto& c = g.cells[i];
    if (reps_override) c.n_reps = reps_override;
    if (alpha_override > 0.0) c.alpha = alpha_override;
    c.seed = seed_base + 1000003ULL * i;  // distinct stream families per cell
  }
  return g;
}

GridSpec load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  GridSpec g;
  g.name = path;
  SimConfig defaults;
  bool in_cell = false;
  SimConfig cur;
  std::string line;
  std::size_t lineno = 0;

  const auto apply = [&](SimConfig& c, const std::string& key, const std::string& value,
                         std::size_t ln) {
    double num = 0.0;
    const bool is_num = parse_double(value, num);
    if (key == "model")
      c.model = parse_innovation(value);
    else if (key == "family")
      c.cov_family = parse_family(value);
    else if (key == "p" && is_num)
      c.p = static_cast<std::size_t>(num);
    else if (key == "n1" && is_num)
      c.n1 = static_cast<std::size_t>(num);
    else if (key == "n2" && is_num)
      c.n2 = static_cast<std::size_t>(num);
    else if (key == "rho1" && is_num)
      c.rho1 = num;
    else if (key == "rho2" && is_num)
      c.rho2 = num;
    else if (key == "sigma1_sq" && is_num)
      c.sigma1_sq = num;
    else if (key == "sigma2_sq" && is_num)
      c.sigma2_sq = num;
    else if (key == "delta" && is_num)
      c.delta = num;
    else if (key == "reps" && is_num)
      c.n_reps = static_cast<std::size_t>(num);
    else if (key == "alpha" && is_num)
      c.alpha = num;
    else if (key == "seed" && is_num)
      c.seed = static_cast<std::uint64_t>(num);
    else
      parse_fail(path, ln, "unknown or malformed entry '" + key + " = " + value + "'");
  };

  const auto flush = [&]() {
    if (in_cell) {
      validate(cur);
      g.cells.push_back(cur);
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "[cell]") {
      flush();
      in_cell = true;
      cur = defaults;
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) parse_fail(path, lineno, "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!in_cell && key == "kind") {
      if (value == "size")
        g.kind = GridKind::Size;
      else if (value == "power")
        g.kind = GridKind::Power;
      else if (value == "df")
        g.kind = GridKind::Df;
      else
        parse_fail(path, lineno, "kind must be size|power|df");
    } else if (!in_cell && key == "name") {
      g.name = value;
    } else {
      apply(in_cell ? cur : defaults, key, value, lineno);
    }
  }
  flush();
  if (g.cells.empty()) throw ParseError(path + ": grid file defines no [cell]");
  return g;
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string fmt(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

void render_rows(std::ostringstream& os, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << pad(r[c], widths[c]);
      if (c + 1 < r.size()) os << "  ";
    }
    os << "\n";
  }
}

std::string p_value_str(double p) { return fmt(p, 5); }

}  // namespace

std::string render_test_reports(const RunAllResult& res) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Method", "Statistic", "p-value", "d1", "d2", "Decision"});
  for (const auto& o : res.outcomes) {
    if (!o.report) {
      rows.push_back({method_name(o.method), "error: " + o.error, "-", "-", "-", "-"});
      continue;
    }
    const TestReport& r = *o.report;
    rows.push_back({method_name(o.method), fmt(r.standardized, 2), p_value_str(r.p_value),
                    std::isnan(r.d1_hat) ? "-" : fmt(r.d1_hat, 2),
                    std::isnan(r.d2_hat) ? "-" : fmt(r.d2_hat, 2),
                    o.reject ? "reject" : "no rejection"});
  }
  std::ostringstream os;
  render_rows(os, rows);
  os << "(alpha = " << fmt(res.alpha, 4) << ", one-sided upper-tail p-values)\n";
  return os.str();
}

void write_test_reports_csv(const std::string& path, const RunAllResult& res) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "method,statistic,standardized,p_value,d1_hat,d2_hat,reject,error\n";
  for (const auto& o : res.outcomes) {
    out << method_name(o.method) << ",";
    if (o.report) {
      const TestReport& r = *o.report;
      out << fmt_g(r.statistic) << "," << fmt_g(r.standardized) << "," << fmt_g(r.p_value)
          << "," << (std::isnan(r.d1_hat) ? "" : fmt_g(r.d1_hat)) << ","
          << (std::isnan(r.d2_hat) ? "" : fmt_g(r.d2_hat)) << ","
          << (o.reject ? "1" : "0") << ",\n";
    } else {
      out << ",,,,,,\"" << o.error << "\"\n";
    }
  }
}

std::string render_grid_results(const GridSpec& grid, const std::vector<CellResult>& cells) {
  // cross-tab: one row per (model, p, n, delta), method columns per rho2
  std::vector<double> rhos;
  struct RowKey {
    int model;
    std::size_t p, n1, n2;
    double delta;
    bool operator<(const RowKey& o) const {
      return std::tie(model, p, n1, n2, delta) < std::tie(o.model, o.p, o.n1, o.n2, o.delta);
    }
  };
  std::vector<RowKey> row_keys;
  std::map<std::pair<std::size_t, std::size_t>, const CellResult*> lookup;  // (row, rho idx)

  const auto rho_index = [&](double rho) {
    for (std::size_t i = 0; i < rhos.size(); ++i)
      if (std::fabs(rhos[i] - rho) < 1e-12) return i;
    rhos.push_back(rho);
    return rhos.size() - 1;
  };
  const auto row_index = [&](const RowKey& k) {
    for (std::size_t i = 0; i < row_keys.size(); ++i)
      if (!(row_keys[i] < k) && !(k < row_keys[i])) return i;
    row_keys.push_back(k);
    return row_keys.size() - 1;
  };

  for (const auto& cell : cells) {
    const SimConfig& c = cell.config;
    const RowKey key{innovation_number(c.model), c.p, c.n1, c.n2, c.delta};
    lookup[{row_index(key), rho_index(c.rho2)}] = &cell;
  }

  const bool df_table = grid.kind == GridKind::Df;
  const char* value_label = grid.kind == GridKind::Size    ? "empirical size (%)"
                            : grid.kind == GridKind::Power ? "empirical power (%)"
                                                           : "mean estimated df";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head1{"Model", "p", "n", "delta"};
  std::vector<std::string> head2{"", "", "", ""};
  for (double rho : rhos) {
    if (df_table) {
      head1.insert(head1.end(), {"rho2=" + fmt(rho, 1), ""});
      head2.insert(head2.end(), {"d1", "d2"});
    } else {
      head1.insert(head1.end(), {"rho2=" + fmt(rho, 1), "", ""});
      head2.insert(head2.end(), {"T_CQ", "T_np", "F_np"});
    }
  }
  rows.push_back(head1);
  rows.push_back(head2);

  for (std::size_t r = 0; r < row_keys.size(); ++r) {
    const RowKey& k = row_keys[r];
    std::vector<std::string> row{std::to_string(k.model), std::to_string(k.p),
                                 "(" + std::to_string(k.n1) + "," + std::to_string(k.n2) + ")",
                                 fmt(k.delta, 2)};
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      const auto it = lookup.find({r, i});
      if (it == lookup.end()) {
        row.insert(row.end(), df_table ? 2 : 3, "-");
        continue;
      }
      const CellResult& cell = *it->second;
      if (df_table) {
        row.push_back(fmt(cell.mean_d1_hat, 0));
        row.push_back(fmt(cell.mean_d2_hat, 0));
      } else {
        for (Method m : {Method::TCQ, Method::TNP, Method::FNP})
          row.push_back(fmt(100.0 * cell.rejection_rate(m), 2));
      }
    }
    rows.push_back(row);
  }

  if (grid.kind == GridKind::Size) {
    std::vector<std::string> are_row{"ARE", "", "", ""};
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      for (Method m : {Method::TCQ, Method::TNP, Method::FNP}) {
        std::vector<double> sizes;
        for (std::size_t r = 0; r < row_keys.size(); ++r) {
          const auto it = lookup.find({r, i});
          if (it != lookup.end()) sizes.push_back(it->second->rejection_rate(m));
        }
        are_row.push_back(sizes.empty() ? "-" : fmt(are_metric(sizes, cells.front().config.alpha), 2));
      }
    }
    rows.push_back(are_row);
  }

  std::ostringstream os;
  os << grid.name << ": " << value_label << "\n";
  render_rows(os, rows);
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.n_failed_reps;
  if (failed) os << "(" << failed << " replications with failed methods were excluded)\n";
  return os.str();
}

MixtureSpec load_spectra_file(const std::string& path, std::size_t n1, std::size_t n2,
                              const CsvOptions& opt) {
  const Matrix m = read_csv_matrix(path, opt);
  if (m.cols() != 3)
    throw ParseError(path + ": spectra file needs exactly 3 columns "
                            "(lambda_omega, lambda1, lambda2)");
  MixtureSpec spec;
  spec.n1 = n1;
  spec.n2 = n2;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    spec.lambda_omega.push_back(m(i, 0));
    spec.lambda1.push_back(m(i, 1));
    spec.lambda2.push_back(m(i, 2));
  }
  validate(spec);
  return spec;
}

std::string render_oracle_report(const MixtureSpec& spec, std::size_t n_draws,
                                 std::uint64_t seed) {
  const Cumulants ct = cumulants_t_star(spec);
  const Cumulants cs = cumulants_s_star(spec);
  const FStarCumulants cf = cumulants_f_star(spec);
  const ApproxParams ap = population_approx(spec);
  Vector draws = sample_f_star(spec, n_draws, seed);
  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= static_cast<double>(draws.size());
  double var = 0.0, third = 0.0;
  for (double v : draws) {
    const double d = v - mean;
    var += d * d;
    third += d * d * d;
  }
  var /= static_cast<double>(draws.size());
  third /= static_cast<double>(draws.size());
  const double ks = ks_distance(std::move(draws),
                                [&](double x) { return sf::f_cdf(x, ap.d1, ap.d2); });
  std::ostringstream os;
  os << "mixture oracle: p=" << spec.lambda_omega.size() << " n1=" << spec.n1
     << " n2=" << spec.n2 << "\n";
  char line[256];
  std::snprintf(line, sizeof(line),
                "numerator cumulants    K1=%-12.6g K2=%-12.6g K3=%-12.6g\n", ct.k1,
                ct.k2, ct.k3);
  os << line;
  std::snprintf(line, sizeof(line),
                "denominator cumulants  K1=%-12.6g K2=%-12.6g K3=%-12.6g\n", cs.k1,
                cs.k2, cs.k3);
  os << line;
  std::snprintf(line, sizeof(line),
                "ratio cumulants        K1=%-12.6g K2=%-12.6g K3=%-12.6g\n", cf.k1,
                cf.k2, cf.k3);
  os << line;
  std::snprintf(line, sizeof(line), "skewness=%.6g  d*=%.6g\n", cf.skewness, cf.d_star);
  os << line;
  std::snprintf(line, sizeof(line), "approximation: beta1=%.6g d1=%.6g beta2=%.6g d2=%.6g\n",
                ap.beta1, ap.d1, ap.beta2, ap.d2);
  os << line;
  std::snprintf(line, sizeof(line),
                "monte carlo (%zu draws, seed %llu): mean=%.6g var=%.6g third=%.6g\n",
                n_draws, static_cast<unsigned long long>(seed), mean, var, third);
  os << line;
  std::snprintf(line, sizeof(line), "KS distance to F(d1,d2): %.6g\n", ks);
  os << line;
  return os.str();
}

void write_grid_results_csv(const std::string& path, const GridSpec& grid,
                            const std::vector<CellResult>& cells) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "grid,model,family,p,n1,n2,rho1,rho2,sigma1_sq,sigma2_sq,delta,reps,alpha,seed,"
         "rate_tcq,rate_tnp,rate_fnp,mean_d1_hat,mean_d2_hat,n_failed_reps\n";
  for (const auto& cell : cells) {
    const SimConfig& c = cell.config;
    out << grid.name << "," << innovation_name(c.model) << "," << family_name(c.cov_family)
        << "," << c.p << "," << c.n1 << "," << c.n2 << "," << fmt_g(c.rho1) << ","
        << fmt_g(c.rho2) << "," << fmt_g(c.sigma1_sq) << "," << fmt_g(c.sigma2_sq) << ","
        << fmt_g(c.delta) << "," << c.n_reps << "," << fmt_g(c.alpha) << "," << c.seed << ","
        << fmt_g(cell.rejection_rate(Method::TCQ)) << ","
        << fmt_g(cell.rejection_rate(Method::TNP)) << ","
        << fmt_g(cell.rejection_rate(Method::FNP)) << "," << fmt_g(cell.mean_d1_hat) << ","
        << fmt_g(cell.mean_d2_hat) << "," << cell.n_failed_reps << "\n";
  }
}

}  // namespace hdbf
