// Command-line front end: run a configuration, reproduce the error tables, or run the
// built-in property checks. Failures print one JSON line on stderr and exit nonzero.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrnn/lrnn.hpp"

namespace {

int report_failure(std::string_view kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
  return 1;
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::vector<std::uint64_t>& seeds) {
  lrnn::RunConfig cfg = lrnn::load_config(config_path);
  if (out) cfg.out_dir = *out;
  if (!seeds.empty()) cfg.seeds = seeds;
  lrnn::validate(cfg);
  const auto records = lrnn::run_to_files(cfg, &std::cout);
  std::vector<double> l2;
  for (const auto& r : records) l2.push_back(r.errors.slice_l2.value_or(r.errors.rel_l2));
  std::cout << cfg.name << ": median rel_l2 " << lrnn::median(l2) << " over " << records.size() << " seed(s)\n";
  return 0;
}

int cmd_reproduce(std::vector<std::string> ids, const std::string& out, const std::optional<std::string>& config_path,
                  const std::vector<std::uint64_t>& seeds, const std::vector<int>& dofs,
                  const std::vector<int>& columns) {
  lrnn::ReproduceOptions opt;
  if (config_path) opt.base = lrnn::load_config(*config_path);
  if (!seeds.empty()) opt.base.seeds = seeds;
  opt.dofs = dofs;
  opt.columns = columns;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
    ids.clear();
    for (const auto& t : lrnn::table_specs()) ids.push_back(t.id);
  }
  const auto warnings = lrnn::reproduce_tables(ids, opt, out, &std::cout);
  for (const auto& w : warnings) std::cout << "warning: " << w << '\n';
  return 0;
}

int cmd_check() {
  bool all = true;
  for (const auto& r : lrnn::run_all_checks()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.value << " (tol " << r.tolerance << ") "
              << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time DG solver with local randomized neural network bases"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out;
  std::vector<std::uint64_t> seeds;
  auto* run = app.add_subcommand("run", "Solve one configuration for each of its seeds");
  run->add_option("--config,-c", config_path, "TOML configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--out,-o", out, "Output directory (overrides output.dir)");
  run->add_option("--seed-override,--seeds", seeds, "Seeds to run instead of the configured ones");

  std::vector<std::string> ids;
  std::string table_out = "tables";
  std::optional<std::string> base_config;
  std::vector<int> dofs, columns;
  auto* rep = app.add_subcommand("reproduce", "Recompute error tables (ids or 'all')");
  rep->add_option("tables", ids, "Table ids");
  rep->add_option("--out,-o", table_out, "Output directory");
  rep->add_option("--config,-c", base_config, "Base configuration for solver and compression settings")
      ->check(CLI::ExistingFile);
  rep->add_option("--seed-override,--seeds", seeds, "Seeds per cell");
  rep->add_option("--dofs", dofs, "Only these DoF rows");
  rep->add_option("--columns", columns, "Only these column indices");

  auto* chk = app.add_subcommand("check", "Run the built-in property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(config_path, out, seeds);
    if (*rep) return cmd_reproduce(ids, table_out, base_config, seeds, dofs, columns);
    if (*chk) return cmd_check();
  } catch (const lrnn::Error& e) {
    return report_failure(lrnn::to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_failure("internal", e.what());
  }
  return 0;
}
