#include "llp/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "llp/errors.hpp"

namespace llp {
namespace {

std::vector<double> unit_vector(std::size_t d, Rng& rng) {
  std::vector<double> v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : v) {
      c = rng.normal();
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return v;
}

// Rotates unit vector u by angle phi towards a uniform tangent direction.
std::vector<double> rotate(const std::vector<double>& u, double phi, Rng& rng) {
  std::vector<double> w;
  double norm = 0.0;
  do {
    w = unit_vector(u.size(), rng);
    const double dot = std::inner_product(u.begin(), u.end(), w.begin(), 0.0);
    for (std::size_t c = 0; c < u.size(); ++c) w[c] -= dot * u[c];
    norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
  } while (norm < 1e-9);
  std::vector<double> v(u.size());
  for (std::size_t c = 0; c < u.size(); ++c) v[c] = std::cos(phi) * u[c] + std::sin(phi) * w[c] / norm;
  return v;
}

using Point = std::vector<double>;

std::pair<Point, Point> hard_pair(const Classifier& target, const SyntheticConfig& cfg, Rng& rng) {
  const bool close = rng.coin();
  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    Point u = unit_vector(cfg.d, rng);
    const double phi = cfg.eta * rng.uniform01();
    Point v;
    if (close) {
      v = rotate(u, phi, rng);
    } else {
      Point minus(u.size());
      std::transform(u.begin(), u.end(), minus.begin(), [](double x) { return -x; });
      v = rotate(minus, phi, rng);
    }
    const bool differ = target.predict(u) != target.predict(v);
    if (close == differ) return {std::move(u), std::move(v)};
  }
  throw GenerationError(std::string("gen_hard_bags: no ") + (close ? "close" : "antipodal") + " pair after " +
                        std::to_string(cfg.max_attempts) + " attempts");
}

std::vector<Point> draw_bag(const Classifier& target, const SyntheticConfig& cfg, Rng& rng) {
  std::vector<Point> points;
  points.reserve(cfg.q);
  if (cfg.style == BagStyle::kRandom) {
    for (std::size_t k = 0; k < cfg.q; ++k) points.push_back(unit_vector(cfg.d, rng));
    return points;
  }
  for (std::size_t k = 0; k < cfg.q / 2; ++k) {
    auto [u, v] = hard_pair(target, cfg, rng);
    points.push_back(std::move(u));
    points.push_back(std::move(v));
  }
  points.push_back(unit_vector(cfg.d, rng));
  return points;
}

SyntheticData generate(const SyntheticConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  Rng target_rng = rng.split(0);
  Rng train_rng = rng.split(1);
  Rng test_rng = rng.split(2);
  const Classifier target = Classifier::homogeneous_halfspace(unit_vector(cfg.d, target_rng));

  auto labeled = std::make_shared<InstanceTable>(cfg.d);
  std::vector<Bag> bags;
  bags.reserve(cfg.n_bags);
  for (std::size_t j = 0; j < cfg.n_bags; ++j) {
    std::vector<std::size_t> members;
    long sigma = 0;
    for (const Point& p : draw_bag(target, cfg, train_rng)) {
      const int y = target.predict(p);
      sigma += y;
      members.push_back(labeled->add(p, y));
    }
    bags.push_back(Bag::llp(std::move(members), sigma));
  }
  InstanceTable test(cfg.d);
  for (std::size_t k = 0; k < cfg.n_test; ++k) {
    std::vector<Point> bag = draw_bag(target, cfg, test_rng);
    const Point& p = bag[test_rng.uniform_index(bag.size())];
    test.add(p, target.predict(p));
  }
  auto stripped = std::make_shared<const InstanceTable>(labeled->without_labels());
  return SyntheticData{BagCollection(Mode::kLLP, std::move(stripped), std::move(bags)), std::move(labeled), target,
                       std::move(test)};
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      return out;
    }
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

const char* to_string(BagStyle style) { return style == BagStyle::kRandom ? "random" : "hard"; }

BagStyle parse_bag_style(const std::string& text) {
  if (text == "random") return BagStyle::kRandom;
  if (text == "hard") return BagStyle::kHard;
  throw ParameterError("unknown bag style '" + text + "' (expected random or hard)");
}

void validate(const SyntheticConfig& cfg) {
  if (cfg.q < 1) throw ParameterError("synthetic: q must be at least 1");
  if (cfg.d < 1) throw ParameterError("synthetic: d must be at least 1");
  if (cfg.style == BagStyle::kHard) {
    if (cfg.q % 2 == 0) throw ParameterError("synthetic: hard bags need an odd q");
    if (cfg.d < 2) throw ParameterError("synthetic: hard bags need d >= 2");
    if (!(cfg.eta > 0.0 && cfg.eta < std::numbers::pi / 2)) {
      throw ParameterError("synthetic: eta must lie in (0, pi/2)");
    }
    if (cfg.max_attempts == 0) throw ParameterError("synthetic: max_attempts must be positive");
  }
}

SyntheticData gen_random_bags(const SyntheticConfig& cfg) {
  if (cfg.style != BagStyle::kRandom) throw ParameterError("gen_random_bags: style must be random");
  return generate(cfg);
}

SyntheticData gen_hard_bags(const SyntheticConfig& cfg) {
  if (cfg.style != BagStyle::kHard) throw ParameterError("gen_hard_bags: style must be hard");
  return generate(cfg);
}

SyntheticData gen_synthetic(const SyntheticConfig& cfg) { return generate(cfg); }

void IngestionReport::write(std::ostream& out) const {
  out << "rows_read: " << rows_read << '\n'
      << "rows_dropped: " << rows_dropped << '\n'
      << "rows_kept: " << rows_kept << '\n'
      << "positives: " << positives << '\n'
      << "features: " << feature_names.size() << '\n';
  for (const ColumnStats& c : columns) {
    if (c.categorical) {
      out << "column." << c.name << ": categorical";
      for (const std::string& v : c.categories) out << ' ' << v;
      out << '\n';
    } else {
      out << "column." << c.name << ": numeric mean " << c.mean << " std " << c.stddev << '\n';
    }
  }
  for (const std::string& w : warnings) out << "warning: " << w << '\n';
}

TabularData load_tabular(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open '" + path + "'");
  return read_tabular(in, schema);
}

TabularData read_tabular(std::istream& in, const DatasetSchema& schema) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_fields(line, schema.delimiter);
      break;
    }
  }
  if (header.empty()) throw IngestionError("input has no header line");

  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!index.emplace(header[c], c).second) throw IngestionError("duplicate column '" + header[c] + "'");
  }
  auto require = [&](const std::string& name) {
    if (!index.count(name)) throw IngestionError("schema column '" + name + "' not in header");
  };
  require(schema.target);
  for (const std::string& name : schema.categorical) require(name);
  for (const std::string& name : schema.ignore) require(name);
  if (schema.categorical.count(schema.target) || schema.ignore.count(schema.target)) {
    throw IngestionError("target column '" + schema.target + "' cannot be categorical or ignored");
  }

  std::vector<std::size_t> numeric_cols;
  std::vector<std::size_t> categorical_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (name == schema.target || schema.ignore.count(name)) continue;
    (schema.categorical.count(name) ? categorical_cols : numeric_cols).push_back(c);
  }
  const std::size_t target_col = index.at(schema.target);

  TabularData out{InstanceTable(1), {}};
  IngestionReport& report = out.report;
  std::vector<std::vector<double>> numeric_values;
  std::vector<std::vector<std::string>> categorical_values;
  std::vector<int> targets;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++report.rows_read;
    const std::vector<std::string> fields = split_fields(line, schema.delimiter);
    if (fields.size() != header.size()) {
      throw IngestionError("row " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(fields.size()));
    }
    bool missing = false;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (schema.ignore.count(header[c])) continue;
      if (schema.missing_tokens.count(fields[c])) missing = true;
    }
    if (missing) {
      ++report.rows_dropped;
      continue;
    }
    std::vector<double> nums;
    nums.reserve(numeric_cols.size());
    for (std::size_t c : numeric_cols) {
      double v = 0.0;
      if (!parse_double(fields[c], v)) {
        throw IngestionError("row " + std::to_string(line_no) + ": column '" + header[c] + "' value '" + fields[c] +
                             "' is not numeric");
      }
      nums.push_back(v);
    }
    std::vector<std::string> cats;
    cats.reserve(categorical_cols.size());
    for (std::size_t c : categorical_cols) cats.push_back(fields[c]);
    const std::string& t = fields[target_col];
    int y = 0;
    if (!schema.positive_values.empty()) {
      y = std::find(schema.positive_values.begin(), schema.positive_values.end(), t) != schema.positive_values.end();
    } else if (t == "1") {
      y = 1;
    } else if (t != "0") {
      throw IngestionError("row " + std::to_string(line_no) + ": target '" + t + "' is not 0 or 1");
    }
    numeric_values.push_back(std::move(nums));
    categorical_values.push_back(std::move(cats));
    targets.push_back(y);
  }
  report.rows_kept = targets.size();
  report.positives = static_cast<std::size_t>(std::count(targets.begin(), targets.end(), 1));
  if (report.rows_kept == 0) report.warnings.push_back("no data rows retained");
  if (report.rows_dropped > 0) {
    report.warnings.push_back(std::to_string(report.rows_dropped) + " rows with missing values dropped");
  }

  const double n = static_cast<double>(report.rows_kept);
  std::vector<double> means(numeric_cols.size(), 0.0);
  std::vector<double> stds(numeric_cols.size(), 0.0);
  for (std::size_t k = 0; k < numeric_cols.size(); ++k) {
    ColumnStats stats{header[numeric_cols[k]], false, 0.0, 0.0, {}};
    if (report.rows_kept > 0) {
      double sum = 0.0;
      for (const auto& row : numeric_values) sum += row[k];
      means[k] = sum / n;
      double sq = 0.0;
      for (const auto& row : numeric_values) sq += (row[k] - means[k]) * (row[k] - means[k]);
      stds[k] = std::sqrt(sq / n);
      if (stds[k] == 0.0) report.warnings.push_back("column '" + stats.name + "' is constant; centered only");
    }
    stats.mean = means[k];
    stats.stddev = stds[k];
    report.columns.push_back(stats);
    report.feature_names.push_back(stats.name);
  }
  std::vector<std::vector<std::string>> levels(categorical_cols.size());
  for (std::size_t k = 0; k < categorical_cols.size(); ++k) {
    std::set<std::string> seen;
    for (const auto& row : categorical_values) seen.insert(row[k]);
    levels[k].assign(seen.begin(), seen.end());
    ColumnStats stats{header[categorical_cols[k]], true, 0.0, 0.0, levels[k]};
    for (const std::string& v : levels[k]) report.feature_names.push_back(stats.name + "=" + v);
    report.columns.push_back(std::move(stats));
  }

  const std::size_t dim = std::max<std::size_t>(report.feature_names.size(), 1);
  out.table = InstanceTable(dim);
  std::vector<double> x(dim);
  for (std::size_t r = 0; r < targets.size(); ++r) {
    std::fill(x.begin(), x.end(), 0.0);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < numeric_cols.size(); ++k, ++pos) {
      const double centered = numeric_values[r][k] - means[k];
      x[pos] = stds[k] > 0.0 ? centered / stds[k] : centered;
    }
    for (std::size_t k = 0; k < categorical_cols.size(); ++k) {
      const auto it = std::lower_bound(levels[k].begin(), levels[k].end(), categorical_values[r][k]);
      x[pos + static_cast<std::size_t>(it - levels[k].begin())] = 1.0;
      pos += levels[k].size();
    }
    out.table.add(x, targets[r]);
  }
  return out;
}

std::size_t test_size(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ParameterError("split_test: fraction must lie in (0, 1)");
  // The epsilon keeps products like 0.15 * 690 on the tie-up side of .5.
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5 + 1e-9));
}

std::pair<InstanceTable, InstanceTable> split_test(const InstanceTable& table, double fraction, Rng& rng) {
  const std::size_t n_test = test_size(table.size(), fraction);
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  const std::span<const std::size_t> ids(order);
  return {table.subset(ids.subspan(n_test)), table.subset(ids.first(n_test))};
}

Partition partition_into_bags(const InstanceTable& table, std::size_t q, Rng& rng) {
  if (q == 0) throw ParameterError("partition_into_bags: q must be positive");
  if (q > table.size()) {
    throw ParameterError("partition_into_bags: q = " + std::to_string(q) + " exceeds table size " +
                         std::to_string(table.size()));
  }
  for (std::size_t id = 0; id < table.size(); ++id) {
    if (!table.has_label(id)) throw PreconditionError("partition_into_bags: instance " + std::to_string(id) + " has no label");
  }
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  const std::size_t m = table.size() / q;
  std::vector<Bag> bags;
  bags.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::size_t> members(order.begin() + static_cast<std::ptrdiff_t>(j * q),
                                     order.begin() + static_cast<std::ptrdiff_t>((j + 1) * q));
    long sigma = 0;
    for (std::size_t id : members) sigma += *table.label(id);
    bags.push_back(Bag::llp(std::move(members), sigma));
  }
  auto stripped = std::make_shared<const InstanceTable>(table.without_labels());
  return Partition{BagCollection(Mode::kLLP, std::move(stripped), std::move(bags)), table.size() - m * q};
}

}  // namespace llp
