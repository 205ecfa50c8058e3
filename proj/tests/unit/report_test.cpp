#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "lshmine/error.hpp"
#include "lshmine/report.hpp"
#include "test_support.hpp"

namespace lshmine {
namespace {

std::size_t columns(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

MiningReport sample(Variant v = Variant::hamming) {
  MiningConfig c;
  c.variant = v;
  c.theta = 0.25;
  c.max_level = 4;
  return lsh_apriori_mine(testing::random_db(5, 40, 8, 0.5), c);
}

TEST(Report, JsonRoundTrips) {
  auto doc = make_document(sample());
  const auto text = to_json_string(doc);
  const auto back = document_from_json(nlohmann::ordered_json::parse(text));
  EXPECT_EQ(to_json_string(back), text);
  EXPECT_EQ(back.itemsets, doc.itemsets);
  EXPECT_EQ(back.config.max_level, doc.config.max_level);
}

TEST(Report, ComparisonAndTimingsRoundTrip) {
  MiningConfig c;
  c.variant = Variant::minhash;
  c.theta = 0.3;
  const auto db = testing::random_db(6, 30, 7, 0.5);
  auto doc = make_document(compare_with_oracle(db, c), true);
  doc.comparison->trials = run_trials(db, c, 3);
  const auto text = to_json_string(doc);
  const auto j = nlohmann::ordered_json::parse(text);
  EXPECT_TRUE(j.contains("total_ms"));
  EXPECT_TRUE(j["levels"][0].contains("timings_ms"));
  EXPECT_EQ(to_json_string(document_from_json(j)), text);
}

TEST(Report, DefaultOmitsWallClock) {
  const auto j = to_json(make_document(sample()));
  EXPECT_FALSE(j.contains("total_ms"));
  EXPECT_FALSE(j["levels"][0].contains("timings_ms"));
  EXPECT_EQ(j["schema_version"], "lshmine-report/1");
}

TEST(Report, ItemsetsSortedBySizeThenItems) {
  const auto doc = make_document(sample(Variant::exact));
  ASSERT_FALSE(doc.itemsets.empty());
  for (std::size_t i = 1; i < doc.itemsets.size(); ++i) {
    const auto& a = doc.itemsets[i - 1].items;
    const auto& b = doc.itemsets[i].items;
    EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
  }
}

TEST(Report, RejectsForeignSchema) {
  auto j = to_json(make_document(sample()));
  j["schema_version"] = "other/2";
  EXPECT_THROW(document_from_json(j), Error);
  j.erase("schema_version");
  EXPECT_THROW(document_from_json(j), Error);
}

TEST(Report, CsvHasFixedColumnCount) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (auto v : {Variant::exact, Variant::hamming, Variant::minhash, Variant::covering}) {
    write_csv_rows(out, sample(v));
  }
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  const auto width = columns(line);
  EXPECT_EQ(width, 14u);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(columns(line), width) << line;
    if (line.rfind("exact,", 0) == 0) EXPECT_NE(line.find(",0,0,0,0,0,"), std::string::npos);
    ++rows;
  }
  EXPECT_GT(rows, 4u);
}

}  // namespace
}  // namespace lshmine
