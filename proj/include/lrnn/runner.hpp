#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lrnn/assembly.hpp"
#include "lrnn/basis.hpp"
#include "lrnn/config.hpp"
#include "lrnn/error.hpp"
#include "lrnn/linsolve.hpp"
#include "lrnn/mesh.hpp"
#include "lrnn/postproc.hpp"
#include "lrnn/problem.hpp"
#include "lrnn/system.hpp"

namespace lrnn {

struct SolveSummary {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index nonzeros = 0;
  Eigen::Index effective_rank = 0;
  double relative_residual = 0.0;
  double constraint_residual = 0.0;
  double cutoff = 0.0;
  double reduce_tol = 0.0;
  std::string method;
};

/// Outcome of one (config, seed) pair.
struct RunRecord {
  std::string name;
  CaseId case_id = CaseId::Example1;
  Scheme scheme = Scheme::LrnnDg;
  int neurons = 0;
  double tau = 0.0;
  double h = 0.0;
  std::uint64_t seed = 0;
  ErrorReport errors;
  double assemble_s = 0.0;  // basis construction, compression and assembly
  double solve_s = 0.0;
  SolveSummary solve;
};

/// Objects kept alive after a run for sampling or inspection.
struct RunArtifacts {
  std::shared_ptr<const SpaceTimeMesh> mesh;
  std::shared_ptr<const DiscreteSpace> space;
  std::optional<AssembledSystem> system;
  std::optional<Solution> solution;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string context(const RunConfig& c, std::uint64_t seed) {
  return c.name + " (seed " + std::to_string(seed) + "): ";
}

}  // namespace detail

/// Build, assemble, solve and measure errors for one seed.
inline RunRecord run_seed(const RunConfig& cfg, std::uint64_t seed, RunArtifacts* keep = nullptr) {
  try {
    validate(cfg);
    const ManufacturedCase mc = make_case(cfg.case_id);
    const auto t0 = std::chrono::steady_clock::now();
    auto mesh = std::make_shared<const SpaceTimeMesh>(
        build_mesh(mc.domain, mc.final_time, cfg.time_slabs, cfg.cells, mc.boundary));
    RnnConfig rnn = cfg.rnn;
    rnn.seed = seed;
    BuiltSpace built =
        build_space(*mesh, build_local_bases(*mesh, rnn), cfg.reduce_tol, cfg.method.quad_points, cfg.max_nonzeros);
    auto space = std::make_shared<const DiscreteSpace>(std::move(built.space));
    AssembledSystem sys = assemble(*mesh, *space, mc.problem, cfg.method);
    const double assemble_s = detail::seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    LeastSquaresReport ls = solve_least_squares(sys, cfg.solver);
    const double solve_s = detail::seconds_since(t1);

    RunRecord rec;
    rec.name = cfg.name;
    rec.case_id = cfg.case_id;
    rec.scheme = cfg.method.scheme;
    rec.neurons = cfg.rnn.neurons;
    rec.tau = mesh->time().tau;
    rec.h = mesh->grid().h;
    rec.seed = seed;
    rec.assemble_s = assemble_s;
    rec.solve_s = solve_s;
    rec.solve = {sys.rows,         sys.cols,  sys.nonzeros(), ls.effective_rank, ls.relative_residual,
                 constraint_residual(sys, ls.solution), ls.cutoff, built.reduce_tol, ls.method};

    Solution sol(mesh, space, ls.solution);
    if (mc.problem.has_exact()) {
      rec.errors = global_errors(sol, mc.problem.exact, cfg.method.quad_points);
      if (cfg.slice_time) {
        const SliceErrors se = slice_errors(sol, mc.problem.exact, *cfg.slice_time, cfg.method.quad_points);
        rec.errors.slice_l2 = se.rel_l2;
        rec.errors.slice_h1 = se.rel_h1;
      }
    }
    rec.errors.seed = seed;
    rec.errors.tau = rec.tau;
    rec.errors.h = rec.h;
    rec.errors.dof_per_element = cfg.rnn.neurons;

    if (keep) {
      keep->mesh = mesh;
      keep->space = space;
      keep->system = std::move(sys);
      keep->solution = std::move(sol);
    }
    return rec;
  } catch (const Error& e) {
    throw Error(e.kind(), detail::context(cfg, seed) + e.what());
  }
}

/// One record per seed, in seed order.
inline std::vector<RunRecord> run(const RunConfig& cfg) {
  std::vector<RunRecord> out;
  out.reserve(cfg.seeds.size());
  for (const auto seed : cfg.seeds) out.push_back(run_seed(cfg, seed));
  return out;
}

inline void write_csv_header(std::ostream& os) {
  os << "scheme,tau,h,M,seed,rel_l2,rel_h1,slice_l2,slice_h1,assemble_s,solve_s,relres\n";
}

inline void write_csv_row(std::ostream& os, const RunRecord& r) {
  auto opt = [](const std::optional<double>& v) {
    std::ostringstream s;
    s << std::setprecision(std::numeric_limits<double>::max_digits10);
    if (v) s << *v;
    return s.str();
  };
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << to_string(r.scheme) << ',' << r.tau << ',' << r.h << ',' << r.neurons << ',' << r.seed << ','
     << r.errors.rel_l2 << ',' << r.errors.rel_h1 << ',' << opt(r.errors.slice_l2) << ',' << opt(r.errors.slice_h1)
     << ',' << std::setprecision(6) << r.assemble_s << ',' << r.solve_s << ','
     << std::setprecision(std::numeric_limits<double>::max_digits10) << r.solve.relative_residual << '\n';
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Runs every seed, writing the results CSV (and optional samples / system dump) into
/// cfg.out_dir. Progress lines go to `log` when given.
inline std::vector<RunRecord> run_to_files(const RunConfig& cfg, std::ostream* log = nullptr) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory '" + cfg.out_dir + "'");
  const fs::path csv_path = fs::path(cfg.out_dir) / cfg.csv_file;
  std::ofstream csv(csv_path);
  if (!csv) fail(ErrorKind::Io, "cannot write '" + csv_path.string() + "'");
  write_csv_header(csv);

  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    const bool first = i == 0;
    const bool want_artifacts = first && (!cfg.sample_resolution.empty() || !cfg.system_file.empty());
    RunArtifacts art;
    RunRecord rec = run_seed(cfg, cfg.seeds[i], want_artifacts ? &art : nullptr);
    write_csv_row(csv, rec);
    csv.flush();
    if (log) {
      *log << cfg.name << " seed " << rec.seed << ": rel_l2 " << std::scientific << std::setprecision(3)
           << rec.errors.rel_l2 << " rel_h1 " << rec.errors.rel_h1;
      if (rec.errors.slice_l2) *log << " slice_l2 " << *rec.errors.slice_l2;
      *log << std::defaultfloat << std::setprecision(3) << " | " << rec.solve.rows << "x" << rec.solve.cols
           << " assemble " << rec.assemble_s << "s solve " << rec.solve_s << "s\n";
    }
    if (want_artifacts) {
      const ManufacturedCase mc = make_case(cfg.case_id);
      if (!cfg.sample_resolution.empty()) {
        const fs::path p = fs::path(cfg.out_dir) / cfg.samples_file;
        std::ofstream s(p);
        if (!s) fail(ErrorKind::Io, "cannot write '" + p.string() + "'");
        write_csv(s, sample_grid(*art.solution, cfg.sample_resolution, mc.problem.exact));
      }
      if (!cfg.system_file.empty()) {
        const fs::path p = fs::path(cfg.out_dir) / cfg.system_file;
        std::ofstream s(p);
        if (!s) fail(ErrorKind::Io, "cannot write '" + p.string() + "'");
        write_system(s, *art.system, true);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Published tables

struct TableColumn {
  int time_slabs = 1;
  int cells = 1;
  std::string label;  // "tau,h" as printed
};

struct TableSpec {
  std::string id;
  std::string title;
  CaseId case_id = CaseId::Example1;
  Scheme scheme = Scheme::LrnnDg;
  bool slice = false;  // errors at the final time instead of over the space-time domain
  std::vector<int> dofs;
  std::vector<TableColumn> columns;
  // reference[row][col] = {L2, H1}; reference_time only for the timed table
  std::vector<std::vector<std::array<double, 2>>> reference;
  std::vector<std::vector<double>> reference_time;
};

inline const std::vector<TableSpec>& table_specs() {
  using R = std::vector<std::vector<std::array<double, 2>>>;
  static const std::vector<TableSpec> specs = [] {
    const std::vector<TableColumn> ex1{{6, 6, "1/6,1/6"}, {8, 8, "1/8,1/8"}, {10, 10, "1/10,1/10"}};
    const std::vector<TableColumn> ex2{{2, 2, "1/4,1/2"}, {3, 3, "1/6,1/3"}, {4, 4, "1/8,1/4"}};
    const std::vector<TableColumn> ex2_fixed{{2, 4, "1/4,1/4"}, {2, 5, "1/4,1/5"}, {2, 6, "1/4,1/6"}};
    const std::vector<TableColumn> ex3{{2, 2, "5/2,1/2"}, {3, 3, "5/3,1/3"}};
    const std::vector<int> d3{80, 160, 320};
    const std::vector<int> d5{40, 80, 160, 320, 640};
    const std::vector<int> d4{40, 80, 160, 320};
    std::vector<TableSpec> t;
    t.push_back({"1", "Example 1, LRNN-DG", CaseId::Example1, Scheme::LrnnDg, false, d3, ex1,
                 R{{{{7.85e-01, 5.10e+00}}, {{6.48e-02, 4.51e-01}}, {{8.52e-03, 7.80e-02}}},
                   {{{1.14e-02, 7.81e-02}}, {{2.36e-03, 2.17e-02}}, {{3.08e-04, 3.88e-03}}},
                   {{{4.40e-03, 3.45e-02}}, {{5.00e-04, 5.53e-03}}, {{6.57e-05, 9.19e-04}}}},
                 {}});
    t.push_back({"2", "Example 1, LRNN-C0DG", CaseId::Example1, Scheme::LrnnC0Dg, false, d3, ex1,
                 R{{{{2.10e-01, 9.72e-01}}, {{5.30e-02, 3.21e-01}}, {{1.29e-02, 9.55e-02}}},
                   {{{1.29e-02, 8.31e-02}}, {{2.07e-03, 1.89e-02}}, {{2.58e-04, 2.79e-03}}},
                   {{{5.19e-03, 3.50e-02}}, {{4.88e-04, 5.10e-03}}, {{8.27e-05, 9.50e-04}}}},
                 {}});
    t.push_back({"3", "Example 1, LRNN-C1DG", CaseId::Example1, Scheme::LrnnC1Dg, false, d3, ex1,
                 R{{{{1.30e-01, 5.17e-01}}, {{2.85e-02, 1.51e-01}}, {{1.29e-02, 8.03e-02}}},
                   {{{9.29e-03, 6.23e-02}}, {{2.95e-03, 2.28e-02}}, {{4.86e-04, 4.79e-03}}},
                   {{{4.11e-03, 2.79e-02}}, {{3.62e-04, 3.65e-03}}, {{7.53e-05, 8.00e-04}}}},
                 {}});
    t.push_back({"4", "Example 2, LRNN-DG", CaseId::Example2, Scheme::LrnnDg, false, d5, ex2,
                 R{{{{1.75e+00, 3.00e+00}}, {{6.61e-01, 1.38e+00}}, {{3.36e+00, 9.64e+00}}},
                   {{{4.46e-01, 1.06e+00}}, {{5.66e-01, 1.84e+00}}, {{1.16e-01, 4.93e-01}}},
                   {{{1.17e-02, 3.73e-02}}, {{5.48e-03, 2.49e-02}}, {{3.51e-03, 1.89e-02}}},
                   {{{2.29e-04, 1.09e-03}}, {{2.73e-05, 1.95e-04}}, {{1.58e-05, 1.40e-04}}},
                   {{{3.77e-05, 2.11e-04}}, {{7.15e-06, 6.50e-05}}, {{2.94e-06, 3.50e-05}}}},
                 {}});
    t.push_back({"ex2_c0dg", "Example 2, LRNN-C0DG", CaseId::Example2, Scheme::LrnnC0Dg, false, d5, ex2,
                 R{{{{3.00e-01, 5.62e-01}}, {{5.50e-02, 1.36e-01}}, {{6.86e-02, 1.89e-01}}},
                   {{{7.13e-02, 1.64e-01}}, {{3.03e-02, 1.02e-01}}, {{8.50e-03, 3.49e-02}}},
                   {{{9.45e-03, 3.17e-02}}, {{1.85e-03, 8.26e-03}}, {{8.51e-04, 4.54e-03}}},
                   {{{5.80e-05, 2.83e-04}}, {{3.05e-05, 1.58e-04}}, {{5.76e-06, 4.73e-05}}},
                   {{{2.18e-05, 1.07e-04}}, {{7.24e-06, 5.12e-05}}, {{2.99e-06, 2.56e-05}}}},
                 {}});
    t.push_back({"ex2_c1dg", "Example 2, LRNN-C1DG", CaseId::Example2, Scheme::LrnnC1Dg, false, d5, ex2,
                 R{{{{4.51e-01, 5.36e-01}}, {{1.69e-01, 2.05e-01}}, {{2.00e-01, 2.50e-01}}},
                   {{{3.81e-02, 7.74e-02}}, {{2.97e-02, 6.39e-02}}, {{1.22e-02, 3.01e-02}}},
                   {{{1.23e-02, 2.87e-02}}, {{1.33e-03, 4.34e-03}}, {{7.08e-04, 2.73e-03}}},
                   {{{6.82e-05, 1.84e-04}}, {{9.92e-06, 3.52e-05}}, {{3.91e-06, 1.53e-05}}},
                   {{{4.11e-05, 1.08e-04}}, {{5.33e-06, 2.02e-05}}, {{2.81e-06, 1.03e-05}}}},
                 {}});
    t.push_back({"ex2_fixed_tau", "Example 2, LRNN-DG, tau = 1/4", CaseId::Example2, Scheme::LrnnDg, false, d5,
                 ex2_fixed,
                 R{{{{1.64e+00, 5.36e+00}}, {{1.40e-01, 6.13e-01}}, {{2.10e-01, 9.24e-01}}},
                   {{{5.59e-02, 2.59e-01}}, {{5.29e-01, 2.66e+00}}, {{5.90e-02, 3.86e-01}}},
                   {{{2.42e-03, 1.40e-02}}, {{1.50e-03, 1.18e-02}}, {{8.38e-04, 7.27e-03}}},
                   {{{1.20e-05, 1.04e-04}}, {{5.15e-06, 5.45e-05}}, {{3.17e-06, 4.40e-05}}},
                   {{{2.51e-06, 2.85e-05}}, {{1.33e-06, 1.98e-05}}, {{8.21e-07, 1.61e-05}}}},
                 {}});
    t.push_back({"5", "Example 3, LRNN-DG, t = 5", CaseId::Example3, Scheme::LrnnDg, true, d4, ex3,
                 R{{{{9.54e-02, 2.15e-01}}, {{5.35e-02, 1.48e-01}}},
                   {{{2.53e-02, 6.37e-02}}, {{7.44e-02, 1.97e-01}}},
                   {{{9.28e-03, 3.25e-02}}, {{4.81e-03, 3.52e-02}}},
                   {{{2.22e-04, 1.19e-03}}, {{3.56e-05, 2.89e-04}}}},
                 {{9.46e-01, 3.74e+00}, {2.28e+00, 2.85e+01}, {8.31e+00, 1.98e+02}, {3.35e+01, 1.13e+03}}});
    t.push_back({"6", "Example 3, LRNN-C0DG, t = 5", CaseId::Example3, Scheme::LrnnC0Dg, true, d4, ex3,
                 R{{{{1.35e-01, 3.33e-01}}, {{5.02e-02, 1.96e-01}}},
                   {{{1.10e-01, 3.08e-01}}, {{3.80e-02, 1.54e-01}}},
                   {{{1.33e-02, 4.14e-02}}, {{2.22e-03, 1.01e-02}}},
                   {{{4.61e-04, 2.26e-03}}, {{4.24e-05, 2.36e-04}}}},
                 {}});
    t.push_back({"7", "Example 3, LRNN-C1DG, t = 5", CaseId::Example3, Scheme::LrnnC1Dg, true, d4, ex3,
                 R{{{{2.29e-01, 4.08e-01}}, {{2.62e-01, 3.96e-01}}},
                   {{{8.90e-02, 1.79e-01}}, {{2.75e-02, 6.51e-02}}},
                   {{{3.63e-02, 6.34e-02}}, {{5.67e-03, 1.87e-02}}},
                   {{{2.33e-03, 6.74e-03}}, {{8.68e-05, 4.39e-04}}}},
                 {}});
    return t;
  }();
  return specs;
}

inline const TableSpec& table_spec(std::string_view id) {
  for (const auto& t : table_specs()) {
    if (t.id == id) return t;
  }
  std::string ids;
  for (const auto& t : table_specs()) ids += (ids.empty() ? "" : ", ") + t.id;
  fail(ErrorKind::ValidationError, "unknown table '" + std::string(id) + "' (known: " + ids + ")");
}

/// Configuration of one table cell: the case preset plus the cell's mesh and DoF.
inline RunConfig table_cell_config(const TableSpec& t, std::size_t col, int dof, const RunConfig& base) {
  RunConfig c = base;
  c.case_id = t.case_id;
  c.method.scheme = t.scheme;
  apply_preset(c);
  c.time_slabs = t.columns[col].time_slabs;
  c.cells.fill(t.columns[col].cells);
  c.rnn.neurons = dof;
  c.name = "table" + t.id + "_M" + std::to_string(dof) + "_" + std::to_string(c.time_slabs) + "x" +
           std::to_string(t.columns[col].cells);
  validate(c);
  return c;
}

struct TableCell {
  double l2 = std::numeric_limits<double>::quiet_NaN();  // medians over seeds
  double h1 = std::numeric_limits<double>::quiet_NaN();
  double seconds = std::numeric_limits<double>::quiet_NaN();
  bool computed = false;
};

struct TableResult {
  const TableSpec* spec = nullptr;
  std::vector<std::vector<TableCell>> cells;  // [dof row][column]
  std::vector<RunRecord> records;
  std::vector<std::string> warnings;
};

struct ReproduceOptions {
  RunConfig base;          // seeds, compression and solver settings are taken from here
  std::vector<int> dofs;   // restrict to these DoF rows; empty: all rows
  std::vector<int> columns;  // restrict to these column indices; empty: all columns
};

/// Soft check: within each column the median error at M = 320 must be below the one at M = 80.
inline std::vector<std::string> trend_warnings(const TableResult& r) {
  std::vector<std::string> out;
  const TableSpec& t = *r.spec;
  const auto row_of = [&](int dof) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < t.dofs.size(); ++i) {
      if (t.dofs[i] == dof) return i;
    }
    return std::nullopt;
  };
  const auto lo = row_of(80), hi = row_of(320);
  if (!lo || !hi) return out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    const TableCell& a = r.cells[*lo][c];
    const TableCell& b = r.cells[*hi][c];
    if (!a.computed || !b.computed) continue;
    if (!(b.l2 < a.l2)) {
      std::ostringstream s;
      s << "table " << t.id << " column (" << t.columns[c].label << "): L2 at M=320 (" << b.l2
        << ") is not below M=80 (" << a.l2 << ")";
      out.push_back(s.str());
    }
  }
  return out;
}

inline TableResult reproduce_table(const TableSpec& t, const ReproduceOptions& opt, std::ostream* log = nullptr) {
  TableResult r;
  r.spec = &t;
  r.cells.assign(t.dofs.size(), std::vector<TableCell>(t.columns.size()));
  for (std::size_t i = 0; i < t.dofs.size(); ++i) {
    if (!opt.dofs.empty() && std::find(opt.dofs.begin(), opt.dofs.end(), t.dofs[i]) == opt.dofs.end()) continue;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (!opt.columns.empty() &&
          std::find(opt.columns.begin(), opt.columns.end(), static_cast<int>(c)) == opt.columns.end()) {
        continue;
      }
      const RunConfig cfg = table_cell_config(t, c, t.dofs[i], opt.base);
      std::vector<double> l2, h1, secs;
      for (const auto seed : cfg.seeds) {
        RunRecord rec = run_seed(cfg, seed);
        l2.push_back(t.slice ? rec.errors.slice_l2.value_or(NAN) : rec.errors.rel_l2);
        h1.push_back(t.slice ? rec.errors.slice_h1.value_or(NAN) : rec.errors.rel_h1);
        secs.push_back(rec.assemble_s + rec.solve_s);
        if (log) {
          *log << "table " << t.id << " M=" << t.dofs[i] << " (" << t.columns[c].label << ") seed " << seed
               << ": L2 " << l2.back() << " H1 " << h1.back() << " [" << secs.back() << " s]\n";
        }
        r.records.push_back(std::move(rec));
      }
      r.cells[i][c] = {median(l2), median(h1), median(secs), true};
    }
  }
  r.warnings = trend_warnings(r);
  return r;
}

/// Wide layout mirroring the printed table: one row per DoF, each (tau, h) column followed by
/// the published values.
inline void write_table_csv(std::ostream& os, const TableResult& r) {
  const TableSpec& t = *r.spec;
  const bool timed = !t.reference_time.empty();
  os << "M";
  for (const auto& c : t.columns) {
    const std::string tag = "(tau,h=" + c.label + ")";
    os << ",rel_l2" << tag << ",rel_h1" << tag << ",ref_l2" << tag << ",ref_h1" << tag;
    if (timed) os << ",seconds" << tag << ",ref_seconds" << tag;
  }
  os << '\n';
  auto num = [&os](double v, bool have) {
    os << ',';
    if (have) os << v;
  };
  os << std::setprecision(6);
  for (std::size_t i = 0; i < t.dofs.size(); ++i) {
    os << t.dofs[i];
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const TableCell& cell = r.cells[i][c];
      num(cell.l2, cell.computed);
      num(cell.h1, cell.computed);
      num(t.reference[i][c][0], true);
      num(t.reference[i][c][1], true);
      if (timed) {
        num(cell.seconds, cell.computed);
        num(t.reference_time[i][c], true);
      }
    }
    os << '\n';
  }
}

/// Reproduces the listed tables into out_dir/table_<id>.csv; returns all trend warnings.
inline std::vector<std::string> reproduce_tables(const std::vector<std::string>& ids, const ReproduceOptions& opt,
                                                 const std::string& out_dir, std::ostream* log = nullptr) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory '" + out_dir + "'");
  std::vector<const TableSpec*> specs;
  for (const auto& id : ids) specs.push_back(&table_spec(id));  // fail early on unknown ids
  std::vector<std::string> warnings;
  for (const TableSpec* t : specs) {
    const TableResult r = reproduce_table(*t, opt, log);
    const fs::path p = fs::path(out_dir) / ("table_" + t->id + ".csv");
    std::ofstream os(p);
    if (!os) fail(ErrorKind::Io, "cannot write '" + p.string() + "'");
    write_table_csv(os, r);
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
  }
  return warnings;
}

}  // namespace lrnn
