#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "llp/data_io.hpp"
#include "llp/errors.hpp"
#include "llp/metrics.hpp"

namespace llp {
namespace {

double angle_between(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) dot += a[c] * b[c];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

TEST(RandomBags, ShapeAndConsistency) {
  SyntheticConfig cfg;
  cfg.n_bags = 200;
  cfg.seed = 4;
  const SyntheticData data = gen_random_bags(cfg);
  ASSERT_EQ(data.train.size(), 200u);
  EXPECT_EQ(data.test.size(), cfg.n_test);
  for (const Bag& b : data.train.bags()) {
    EXPECT_EQ(b.size(), cfg.q);
    long sum = 0;
    for (std::size_t id : b.members) {
      EXPECT_FALSE(data.train.table().has_label(id));
      EXPECT_EQ(*data.labeled->label(id), data.target.predict(data.labeled->coords(id)));
      sum += *data.labeled->label(id);
    }
    EXPECT_EQ(sum, b.sigma);
  }
  EXPECT_DOUBLE_EQ(instance_accuracy(data.target, data.test), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(data.target, data.train), 1.0);
}

TEST(RandomBags, ClassBalance) {
  SyntheticConfig cfg;
  cfg.n_bags = 2000;
  cfg.seed = 8;
  const SyntheticData data = gen_random_bags(cfg);
  double ones = 0.0;
  for (std::size_t id = 0; id < data.labeled->size(); ++id) ones += *data.labeled->label(id);
  EXPECT_NEAR(ones / static_cast<double>(data.labeled->size()), 0.5, 0.02);
}

TEST(RandomBags, Deterministic) {
  SyntheticConfig cfg;
  cfg.n_bags = 10;
  cfg.seed = 99;
  const SyntheticData a = gen_random_bags(cfg);
  const SyntheticData b = gen_random_bags(cfg);
  for (std::size_t id = 0; id < a.labeled->size(); ++id) {
    const auto x = a.labeled->coords(id);
    const auto y = b.labeled->coords(id);
    EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin()));
  }
}

TEST(HardBags, PairGeometry) {
  SyntheticConfig cfg;
  cfg.style = BagStyle::kHard;
  cfg.n_bags = 200;
  cfg.seed = 6;
  const SyntheticData data = gen_hard_bags(cfg);
  std::size_t close = 0;
  std::size_t antipodal = 0;
  for (const Bag& b : data.train.bags()) {
    ASSERT_EQ(b.size(), cfg.q);
    for (std::size_t k = 0; k + 1 < b.size(); k += 2) {
      const std::size_t u = b.members[k];
      const std::size_t v = b.members[k + 1];
      const double angle = angle_between(data.labeled->coords(u), data.labeled->coords(v));
      if (angle <= cfg.eta + 1e-12) {
        ++close;
        EXPECT_NE(*data.labeled->label(u), *data.labeled->label(v));
      } else {
        ++antipodal;
        EXPECT_GE(angle, std::numbers::pi - cfg.eta - 1e-12);
        EXPECT_EQ(*data.labeled->label(u), *data.labeled->label(v));
      }
    }
  }
  EXPECT_GT(close, 150u);
  EXPECT_GT(antipodal, 150u);
}

TEST(HardBags, Preconditions) {
  SyntheticConfig cfg;
  cfg.style = BagStyle::kHard;
  cfg.q = 4;
  EXPECT_THROW(gen_hard_bags(cfg), ParameterError);
  cfg.q = 5;
  cfg.max_attempts = 1;
  cfg.eta = 1e-9;
  EXPECT_THROW(gen_hard_bags(cfg), GenerationError);
  EXPECT_THROW(gen_random_bags(cfg), ParameterError);
}

const char* kCsv =
    "age,color,score,target\n"
    "30,red,1.5,yes\n"
    "40,blue,2.5,no\n"
    "50,red,?,yes\n"
    "60,green,4.5,no\n"
    "70,blue,3.0,yes\n";

DatasetSchema csv_schema() {
  DatasetSchema schema;
  schema.target = "target";
  schema.positive_values = {"yes"};
  schema.categorical = {"color"};
  return schema;
}

TEST(LoadTabular, NormalizesAndEncodes) {
  std::istringstream in(kCsv);
  const TabularData data = read_tabular(in, csv_schema());
  EXPECT_EQ(data.report.rows_read, 5u);
  EXPECT_EQ(data.report.rows_dropped, 1u);
  EXPECT_EQ(data.report.rows_kept, 4u);
  EXPECT_EQ(data.report.positives, 2u);
  const std::vector<std::string> names{"age", "score", "color=blue", "color=green", "color=red"};
  EXPECT_EQ(data.report.feature_names, names);
  ASSERT_EQ(data.table.size(), 4u);
  for (std::size_t c = 0; c < 2; ++c) {
    double mean = 0.0;
    double sq = 0.0;
    for (std::size_t r = 0; r < 4; ++r) mean += data.table.coords(r)[c] / 4.0;
    for (std::size_t r = 0; r < 4; ++r) sq += std::pow(data.table.coords(r)[c] - mean, 2) / 4.0;
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(sq, 1.0, 1e-6);
  }
  // Row 2 (40, blue) is the second retained row.
  EXPECT_EQ(data.table.coords(1)[2], 1.0);
  EXPECT_EQ(data.table.coords(1)[4], 0.0);
  EXPECT_EQ(*data.table.label(1), 0);
}

TEST(LoadTabular, Errors) {
  std::istringstream ragged("a,target\n1,0\n2\n");
  DatasetSchema schema;
  schema.target = "target";
  try {
    read_tabular(ragged, schema);
    FAIL() << "expected IngestionError";
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
  std::istringstream text("a,target\nx,0\n");
  EXPECT_THROW(read_tabular(text, schema), IngestionError);
  std::istringstream missing_col("a,b\n1,0\n");
  EXPECT_THROW(read_tabular(missing_col, schema), IngestionError);
  std::istringstream bad_target("a,target\n1,7\n");
  EXPECT_THROW(read_tabular(bad_target, schema), IngestionError);
  EXPECT_THROW(load_tabular("/nonexistent/file.csv", schema), IngestionError);
}

TEST(LoadTabular, HeaderOnlyGivesEmptyTableAndWarning) {
  std::istringstream in("a,target\n");
  DatasetSchema schema;
  schema.target = "target";
  const TabularData data = read_tabular(in, schema);
  EXPECT_TRUE(data.table.empty());
  EXPECT_FALSE(data.report.warnings.empty());
}

TEST(LoadTabular, Deterministic) {
  std::istringstream a(kCsv);
  std::istringstream b(kCsv);
  const TabularData x = read_tabular(a, csv_schema());
  const TabularData y = read_tabular(b, csv_schema());
  for (std::size_t r = 0; r < x.table.size(); ++r) {
    const auto p = x.table.coords(r);
    const auto q = y.table.coords(r);
    EXPECT_TRUE(std::equal(p.begin(), p.end(), q.begin()));
  }
}

InstanceTable labeled_rows(std::size_t n) {
  InstanceTable table(1);
  for (std::size_t i = 0; i < n; ++i) table.add(std::vector<double>{static_cast<double>(i)}, static_cast<int>(i % 3 == 0));
  return table;
}

TEST(SplitTest, RoundingRule) {
  EXPECT_EQ(test_size(690, 0.15), 104u);
  EXPECT_EQ(test_size(303, 0.15), 45u);
  EXPECT_EQ(test_size(10, 0.25), 3u);
  EXPECT_THROW(test_size(10, 0.0), ParameterError);
  EXPECT_THROW(test_size(10, 1.0), ParameterError);
  Rng rng(1);
  auto [train, test] = split_test(labeled_rows(690), 0.15, rng);
  EXPECT_EQ(test.size(), 104u);
  EXPECT_EQ(train.size(), 586u);
  std::set<double> seen;
  for (std::size_t i = 0; i < train.size(); ++i) seen.insert(train.coords(i)[0]);
  for (std::size_t i = 0; i < test.size(); ++i) seen.insert(test.coords(i)[0]);
  EXPECT_EQ(seen.size(), 690u);
}

TEST(PartitionIntoBags, BlocksAndDrops) {
  const InstanceTable table = labeled_rows(103);
  Rng rng(2);
  const Partition p = partition_into_bags(table, 5, rng);
  EXPECT_EQ(p.bags.size(), 20u);
  EXPECT_EQ(p.dropped, 3u);
  std::set<std::size_t> ids;
  for (const Bag& b : p.bags.bags()) {
    EXPECT_EQ(b.size(), 5u);
    long sum = 0;
    for (std::size_t id : b.members) {
      EXPECT_TRUE(ids.insert(id).second);
      sum += *table.label(id);
      EXPECT_FALSE(p.bags.table().has_label(id));
    }
    EXPECT_EQ(sum, b.sigma);
  }
  EXPECT_THROW(partition_into_bags(labeled_rows(3), 5, rng), ParameterError);
}

}  // namespace
}  // namespace llp
