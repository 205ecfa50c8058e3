#include "lshmine/report.hpp"

#include <ostream>

#include "lshmine/error.hpp"

namespace lshmine {

using json = nlohmann::ordered_json;

namespace {

std::vector<ItemsetEntry> flatten(const FrequentItemsetSet& result) {
  std::vector<ItemsetEntry> out;
  for (const auto& group : result.by_level) {
    for (const auto& rec : group) out.push_back({rec.items, rec.support});
  }
  return out;
}

json config_json(const MiningConfig& c) {
  json j;
  j["theta"] = c.theta;
  j["epsilon"] = c.epsilon;
  j["delta"] = c.delta;
  j["variant"] = std::string(to_string(c.variant));
  j["seed"] = c.seed;
  j["max_level"] = c.max_level ? json(*c.max_level) : json(nullptr);
  j["covering_early_exit"] = c.covering_early_exit;
  j["hamming_early_exit"] = c.hamming_early_exit;
  j["mask_dim_cap"] = c.mask_dim_cap;
  return j;
}

MiningConfig config_from(const json& j) {
  MiningConfig c;
  c.theta = j.at("theta").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.delta = j.at("delta").get<double>();
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("max_level").is_null()) c.max_level = j.at("max_level").get<std::size_t>();
  c.covering_early_exit = j.at("covering_early_exit").get<bool>();
  c.hamming_early_exit = j.at("hamming_early_exit").get<bool>();
  c.mask_dim_cap = j.at("mask_dim_cap").get<std::size_t>();
  return c;
}

json level_json(const LevelStats& s, bool timings) {
  json j;
  j["level"] = s.level;
  j["method"] = s.method;
  j["fallback_reason"] = s.fallback_reason;
  j["source_itemsets"] = s.source_itemsets;
  j["candidates"] = s.candidates;
  j["frequent"] = s.frequent;
  j["apriori_candidates"] = s.apriori_candidates;
  j["apriori_frequent"] = s.apriori_frequent;
  j["verification_reads"] = s.verification_reads;
  j["hash_bits_read"] = s.hash_bits_read;
  j["transactions_read"] = s.transactions_read;
  j["phi"] = s.phi;
  j["overhead_hashes"] = s.overhead_hashes;
  j["true_negatives"] = s.true_negatives;
  j["false_positives"] = s.false_positives;
  j["savings"] = s.savings;
  json params = json::object();
  for (const auto& [name, value] : s.params) params[name] = value;
  j["params"] = std::move(params);
  j["misses_vs_oracle"] = s.misses_vs_oracle ? json(*s.misses_vs_oracle) : json(nullptr);
  if (timings) {
    j["timings_ms"] = {{"build", s.build_ms}, {"query", s.query_ms}, {"verify", s.verify_ms}};
  }
  return j;
}

LevelStats level_from(const json& j) {
  LevelStats s;
  s.level = j.at("level").get<std::size_t>();
  s.method = j.at("method").get<std::string>();
  s.fallback_reason = j.at("fallback_reason").get<std::string>();
  s.source_itemsets = j.at("source_itemsets").get<std::size_t>();
  s.candidates = j.at("candidates").get<std::size_t>();
  s.frequent = j.at("frequent").get<std::size_t>();
  s.apriori_candidates = j.at("apriori_candidates").get<std::size_t>();
  s.apriori_frequent = j.at("apriori_frequent").get<std::size_t>();
  s.verification_reads = j.at("verification_reads").get<std::uint64_t>();
  s.hash_bits_read = j.at("hash_bits_read").get<std::uint64_t>();
  s.transactions_read = j.at("transactions_read").get<std::uint64_t>();
  s.phi = j.at("phi").get<std::size_t>();
  s.overhead_hashes = j.at("overhead_hashes").get<std::size_t>();
  s.true_negatives = j.at("true_negatives").get<std::size_t>();
  s.false_positives = j.at("false_positives").get<std::size_t>();
  s.savings = j.at("savings").get<std::int64_t>();
  for (const auto& [name, value] : j.at("params").items()) {
    s.params.emplace_back(name, value.get<double>());
  }
  if (!j.at("misses_vs_oracle").is_null()) {
    s.misses_vs_oracle = j.at("misses_vs_oracle").get<std::size_t>();
  }
  if (j.contains("timings_ms")) {
    const auto& t = j.at("timings_ms");
    s.build_ms = t.at("build").get<double>();
    s.query_ms = t.at("query").get<double>();
    s.verify_ms = t.at("verify").get<double>();
  }
  return s;
}

json trials_json(const TrialSummary& t) {
  json j;
  j["trials"] = t.trials;
  j["spurious"] = t.spurious;
  j["total_misses"] = t.total_misses;
  j["accounting_ok"] = t.accounting_ok;
  json levels = json::array();
  for (const auto& l : t.levels) {
    levels.push_back({{"level", l.level},
                      {"oracle_itemsets", l.oracle_itemsets},
                      {"misses", l.misses},
                      {"miss_rate", l.miss_rate},
                      {"max_itemset_miss_rate", l.max_itemset_miss_rate},
                      {"bound", l.bound}});
  }
  j["levels"] = std::move(levels);
  return j;
}

TrialSummary trials_from(const json& j) {
  TrialSummary t;
  t.trials = j.at("trials").get<std::size_t>();
  t.spurious = j.at("spurious").get<std::size_t>();
  t.total_misses = j.at("total_misses").get<std::size_t>();
  t.accounting_ok = j.at("accounting_ok").get<bool>();
  for (const auto& l : j.at("levels")) {
    LevelMissRate r;
    r.level = l.at("level").get<std::size_t>();
    r.oracle_itemsets = l.at("oracle_itemsets").get<std::size_t>();
    r.misses = l.at("misses").get<std::size_t>();
    r.miss_rate = l.at("miss_rate").get<double>();
    r.max_itemset_miss_rate = l.at("max_itemset_miss_rate").get<double>();
    r.bound = l.at("bound").get<double>();
    t.levels.push_back(r);
  }
  return t;
}

}  // namespace

ReportDocument make_document(const MiningReport& report, bool timings) {
  ReportDocument doc;
  doc.config = report.config;
  doc.n = report.n;
  doc.m = report.m;
  doc.levels = report.levels;
  doc.itemsets = flatten(report.result);
  doc.timings = timings;
  doc.total_ms = timings ? report.total_ms : 0.0;
  return doc;
}

ReportDocument make_document(const OracleComparison& cmp, bool timings) {
  ReportDocument doc = make_document(cmp.report, timings);
  doc.comparison = ComparisonSection{cmp.missed, cmp.spurious, cmp.accounting_ok, std::nullopt};
  return doc;
}

json to_json(const ReportDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["config"] = config_json(doc.config);
  j["database"] = {{"n", doc.n}, {"m", doc.m}};
  json levels = json::array();
  for (const auto& s : doc.levels) levels.push_back(level_json(s, doc.timings));
  j["levels"] = std::move(levels);
  json itemsets = json::array();
  for (const auto& e : doc.itemsets) itemsets.push_back({{"items", e.items}, {"support", e.support}});
  j["itemsets"] = std::move(itemsets);
  if (doc.comparison) {
    const auto& c = *doc.comparison;
    json cj;
    cj["missed"] = c.missed;
    cj["spurious"] = c.spurious;
    cj["accounting_ok"] = c.accounting_ok;
    if (c.trials) cj["trials"] = trials_json(*c.trials);
    j["comparison"] = std::move(cj);
  }
  if (doc.timings) j["total_ms"] = doc.total_ms;
  return j;
}

ReportDocument document_from_json(const json& j) {
  try {
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    if (doc.schema_version != kReportSchema) {
      throw Error("unsupported report schema '" + doc.schema_version + "'");
    }
    doc.config = config_from(j.at("config"));
    doc.n = j.at("database").at("n").get<std::size_t>();
    doc.m = j.at("database").at("m").get<std::size_t>();
    for (const auto& l : j.at("levels")) doc.levels.push_back(level_from(l));
    for (const auto& e : j.at("itemsets")) {
      doc.itemsets.push_back({e.at("items").get<Itemset>(), e.at("support").get<std::size_t>()});
    }
    if (j.contains("comparison")) {
      const auto& cj = j.at("comparison");
      ComparisonSection c;
      c.missed = cj.at("missed").get<std::vector<Itemset>>();
      c.spurious = cj.at("spurious").get<std::vector<Itemset>>();
      c.accounting_ok = cj.at("accounting_ok").get<bool>();
      if (cj.contains("trials")) c.trials = trials_from(cj.at("trials"));
      doc.comparison = std::move(c);
    }
    if (j.contains("total_ms")) {
      doc.timings = true;
      doc.total_ms = j.at("total_ms").get<double>();
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string to_json_string(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string csv_header() {
  return "variant,level,frequent,candidates,apriori_candidates,transactions_read,"
         "verification_reads,hash_bits_read,hash_overhead,true_negatives,false_positives,"
         "savings,fallback,wall_ms";
}

void write_csv_rows(std::ostream& out, const MiningReport& report, bool timings) {
  for (const auto& s : report.levels) {
    const double wall = timings ? s.build_ms + s.query_ms + s.verify_ms : 0.0;
    out << to_string(report.config.variant) << ',' << s.level << ',' << s.frequent << ','
        << s.candidates << ',' << s.apriori_candidates << ',' << s.transactions_read << ','
        << s.verification_reads << ',' << s.hash_bits_read << ',' << s.overhead_hashes << ','
        << s.true_negatives << ',' << s.false_positives << ',' << s.savings << ','
        << (s.fallback_reason.empty() ? 0 : 1) << ',' << wall << '\n';
  }
}

}  // namespace lshmine
