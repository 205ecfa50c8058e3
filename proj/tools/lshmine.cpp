// lshmine: frequent-itemset mining with LSH-accelerated candidate generation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lshmine/dataset.hpp"
#include "lshmine/engine.hpp"
#include "lshmine/error.hpp"
#include "lshmine/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;

struct UsageError : lshmine::Error {
  using Error::Error;
};

struct CommonFlags {
  std::string input;
  std::string output;
  std::string format = "json";
  double theta = 0.0;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::string variant = "exact";
  std::uint64_t seed = lshmine::kDefaultSeed;
  std::optional<std::size_t> max_level;
  std::size_t mask_dim_cap = lshmine::covering::kDefaultMaskDimCap;
  bool covering_early_exit = false;
  unsigned workers = 1;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_variant) {
  cmd->add_option("--input", f.input, "FIMI transaction file")->required();
  cmd->add_option("--output", f.output, "Report path (default stdout)");
  cmd->add_option("--theta", f.theta, "Support threshold fraction")->required();
  cmd->add_option("--epsilon", f.epsilon, "Tolerance (LSH variants)");
  cmd->add_option("--delta", f.delta, "Error probability (LSH variants)");
  if (with_variant) {
    cmd->add_option("--variant", f.variant, "exact | hamming | minhash | covering");
  }
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--max-level", f.max_level, "Stop after this level");
  cmd->add_option("--mask-dim-cap", f.mask_dim_cap, "Largest covering mask dimension");
  cmd->add_flag("--covering-early-exit", f.covering_early_exit,
                "Enable the inspection budget for the covering variant");
  cmd->add_option("--workers", f.workers, "Threads per level")->check(CLI::Range(1U, 256U));
  cmd->add_flag("--timings", f.timings, "Include wall-clock fields in reports");
}

lshmine::MiningConfig make_config(const CommonFlags& f, lshmine::Variant variant) {
  lshmine::MiningConfig c;
  c.theta = f.theta;
  c.variant = variant;
  if (variant != lshmine::Variant::exact) {
    const std::string name(lshmine::to_string(variant));
    if (!f.epsilon) throw UsageError("--epsilon is required for variant " + name);
    if (!f.delta) throw UsageError("--delta is required for variant " + name);
  }
  if (f.epsilon) c.epsilon = *f.epsilon;
  if (f.delta) c.delta = *f.delta;
  c.seed = f.seed;
  c.max_level = f.max_level;
  c.mask_dim_cap = f.mask_dim_cap;
  c.covering_early_exit = f.covering_early_exit;
  c.workers = f.workers;
  try {
    c.validate();
  } catch (const lshmine::Error& e) {
    throw UsageError(e.what());
  }
  return c;
}

lshmine::Variant variant_flag(const std::string& name) {
  try {
    return lshmine::parse_variant(name);
  } catch (const lshmine::Error& e) {
    throw UsageError(e.what());
  }
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw UsageError("--format must be json or csv");
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lshmine::Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw lshmine::Error("write to '" + path + "' failed");
}

std::string csv_for(const std::vector<lshmine::MiningReport>& reports, bool timings) {
  std::ostringstream out;
  out << lshmine::csv_header() << '\n';
  for (const auto& r : reports) lshmine::write_csv_rows(out, r, timings);
  return out.str();
}

int cmd_mine(const CommonFlags& f) {
  check_format(f.format);
  const auto config = make_config(f, variant_flag(f.variant));
  const auto db = lshmine::load_transactions(f.input);
  const auto report = lshmine::lsh_apriori_mine(db, config);
  emit(f.output, f.format == "csv" ? csv_for({report}, f.timings)
                                   : lshmine::to_json_string(lshmine::make_document(report, f.timings)));
  return kExitOk;
}

int cmd_compare(const CommonFlags& f, std::size_t trials) {
  check_format(f.format);
  if (trials == 0) throw UsageError("--trials must be at least 1");
  const auto variant = variant_flag(f.variant);
  const auto config = make_config(f, variant);
  const auto db = lshmine::load_transactions(f.input);
  const auto cmp = lshmine::compare_with_oracle(db, config);

  auto doc = lshmine::make_document(cmp, f.timings);
  std::size_t misses = cmp.missed.size();
  std::size_t spurious = cmp.spurious.size();
  if (trials > 1) {
    auto summary = lshmine::run_trials(db, config, trials);
    misses = summary.total_misses;
    spurious = summary.spurious;
    doc.comparison->trials = std::move(summary);
  }
  if (f.format == "csv") {
    emit(f.output, csv_for({cmp.report}, f.timings));
  } else {
    emit(f.output, lshmine::to_json_string(doc));
  }
  std::cerr << "compare: variant=" << lshmine::to_string(variant) << " trials=" << trials
            << " misses=" << misses << " spurious=" << spurious << '\n';
  const bool covering_missed = variant == lshmine::Variant::covering && misses > 0;
  return covering_missed || spurious > 0 ? kExitMismatch : kExitOk;
}

int cmd_bench(const CommonFlags& f, const std::vector<std::string>& names) {
  std::vector<lshmine::Variant> variants;
  for (const auto& name : names) variants.push_back(variant_flag(name));
  std::vector<lshmine::MiningConfig> configs;
  for (auto v : variants) configs.push_back(make_config(f, v));
  const auto db = lshmine::load_transactions(f.input);
  std::vector<lshmine::MiningReport> reports;
  for (const auto& c : configs) reports.push_back(lshmine::lsh_apriori_mine(db, c));
  emit(f.output, csv_for(reports, f.timings));
  return kExitOk;
}

struct GenerateFlags {
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.5;
  std::uint64_t seed = lshmine::kDefaultSeed;
  std::string output;
};

int cmd_generate(const GenerateFlags& g) {
  if (!(g.density > 0.0 && g.density <= 1.0)) throw UsageError("density must be in (0,1]");
  if (g.n == 0 || g.m == 0) throw UsageError("--transactions and --items must be positive");
  const auto db = lshmine::generate_synthetic(g.n, g.m, g.density, g.seed);
  std::ostringstream out;
  lshmine::write_transactions(db, out);
  emit(g.output, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent-itemset mining with LSH candidate generation"};
  app.require_subcommand(1);

  CommonFlags mine_flags;
  auto* mine = app.add_subcommand("mine", "Mine frequent itemsets and write a report");
  add_common(mine, mine_flags, true);
  mine->add_option("--format", mine_flags.format, "json | csv");

  CommonFlags cmp_flags;
  std::size_t trials = 1;
  auto* compare = app.add_subcommand("compare", "Diff a variant against brute-force enumeration");
  add_common(compare, cmp_flags, true);
  compare->add_option("--format", cmp_flags.format, "json | csv");
  compare->add_option("--trials", trials, "Repeat with seeds seed, seed+1, ...");

  CommonFlags bench_flags;
  std::vector<std::string> bench_variants{"exact", "hamming", "minhash", "covering"};
  auto* bench = app.add_subcommand("bench", "Per-level read accounting for several variants (CSV)");
  add_common(bench, bench_flags, false);
  bench->add_option("--variants", bench_variants, "Variants to run")->delimiter(',');

  GenerateFlags gen_flags;
  auto* generate = app.add_subcommand("generate", "Write a random FIMI database");
  generate->add_option("--transactions,-n", gen_flags.n, "Transaction count")->required();
  generate->add_option("--items,-m", gen_flags.m, "Item count")->required();
  generate->add_option("--density", gen_flags.density, "Probability of each item per transaction");
  generate->add_option("--seed", gen_flags.seed, "Random seed");
  generate->add_option("--output", gen_flags.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*mine) return cmd_mine(mine_flags);
    if (*compare) return cmd_compare(cmp_flags, trials);
    if (*bench) return cmd_bench(bench_flags, bench_variants);
    if (*generate) return cmd_generate(gen_flags);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
