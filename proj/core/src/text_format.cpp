#include "llp/text_format.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "llp/errors.hpp"

namespace llp {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) fail(std::string("unexpected end of input, expected ") + what);
    return line;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DataError("line " + std::to_string(number_) + ": " + message);
  }

  [[nodiscard]] std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <typename T>
T parse_token(const std::string& token, const LineReader& reader, const char* what) {
  std::istringstream ss(token);
  T value{};
  if (!(ss >> value) || !ss.eof()) {
    reader.fail(std::string("cannot parse ") + what + " from '" + token + "'");
  }
  return value;
}

double parse_real(const std::string& token, const LineReader& reader, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) {
    reader.fail(std::string("cannot parse ") + what + " from '" + token + "'");
  }
  return value;
}

std::size_t header_value(LineReader& reader, const char* key) {
  std::istringstream ss(reader.require(key));
  std::string name;
  std::string value;
  ss >> name >> value;
  if (name != key) reader.fail(std::string("expected '") + key + "', found '" + name + "'");
  return parse_token<std::size_t>(value, reader, key);
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_collection(std::ostream& out, const BagCollection& coll, const Provenance& provenance) {
  const InstanceTable& table = coll.table();
  out << "llp-bags 1\n";
  out << "mode " << to_string(coll.mode()) << "\n";
  out << "dim " << table.dim() << "\n";
  out << "instances " << table.size() << "\n";
  out << "bags " << coll.size() << "\n";
  out << "weighted " << (coll.is_weighted() ? 1 : 0) << "\n";
  for (std::size_t id = 0; id < table.size(); ++id) {
    out << "i " << id << ' ';
    const auto label = table.label(id);
    if (label) {
      out << *label;
    } else {
      out << '-';
    }
    for (double x : table.coords(id)) out << ' ' << format_real(x);
    out << '\n';
  }
  for (std::size_t j = 0; j < coll.size(); ++j) {
    const Bag& bag = coll.bag(j);
    out << "b " << bag.sigma << ' ';
    if (coll.is_weighted()) {
      out << format_real(coll.weight(j));
    } else {
      out << '-';
    }
    out << ' ' << bag.members.size();
    for (std::size_t id : bag.members) out << ' ' << id;
    if (j < provenance.size() && !provenance[j].empty()) {
      out << " # from";
      for (std::size_t src : provenance[j]) out << ' ' << src;
    }
    out << '\n';
  }
}

ParsedCollection read_collection(std::istream& in) {
  LineReader reader(in);
  {
    std::istringstream ss(reader.require("format line"));
    std::string magic;
    std::string version;
    ss >> magic >> version;
    if (magic != "llp-bags" || version != "1") {
      reader.fail("not an llp-bags v1 file");
    }
  }
  Mode mode = Mode::kLLP;
  {
    std::istringstream ss(reader.require("mode"));
    std::string key;
    std::string value;
    ss >> key >> value;
    if (key != "mode") reader.fail("expected 'mode'");
    if (value == "llp") {
      mode = Mode::kLLP;
    } else if (value == "mil") {
      mode = Mode::kMIL;
    } else {
      reader.fail("unknown mode '" + value + "'");
    }
  }
  const std::size_t dim = header_value(reader, "dim");
  const std::size_t n = header_value(reader, "instances");
  const std::size_t m = header_value(reader, "bags");
  const std::size_t weighted = header_value(reader, "weighted");
  if (weighted > 1) reader.fail("weighted must be 0 or 1");

  auto table = std::make_shared<InstanceTable>(dim);
  std::vector<double> coords(dim);
  for (std::size_t row = 0; row < n; ++row) {
    std::istringstream ss(reader.require("instance line"));
    std::string tag;
    std::string id_token;
    std::string label_token;
    ss >> tag >> id_token >> label_token;
    if (tag != "i") reader.fail("expected instance line");
    if (parse_token<std::size_t>(id_token, reader, "instance id") != row) {
      reader.fail("instance ids must be consecutive from 0");
    }
    std::optional<int> label;
    if (label_token != "-") label = parse_token<int>(label_token, reader, "label");
    for (std::size_t c = 0; c < dim; ++c) {
      std::string token;
      if (!(ss >> token)) reader.fail("missing coordinate");
      coords[c] = parse_real(token, reader, "coordinate");
    }
    std::string extra;
    if (ss >> extra) reader.fail("trailing tokens on instance line");
    try {
      table->add(coords, label);
    } catch (const DataError& e) {
      reader.fail(e.what());
    }
  }

  std::vector<Bag> bags;
  std::vector<double> weights;
  Provenance provenance;
  bags.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::string line;
    if (!reader.next(line)) reader.fail("unexpected end of input, expected bag line");
    std::string trailer;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      trailer = line.substr(hash + 1);
      line.resize(hash);
    }
    std::istringstream ss(line);
    std::string tag;
    std::string sigma_token;
    std::string weight_token;
    std::string size_token;
    ss >> tag >> sigma_token >> weight_token >> size_token;
    if (tag != "b") reader.fail("expected bag line");
    Bag bag;
    bag.mode = mode;
    bag.sigma = parse_token<long>(sigma_token, reader, "aggregate label");
    if (weighted) {
      weights.push_back(parse_real(weight_token, reader, "weight"));
    } else if (weight_token != "-") {
      reader.fail("unweighted collection carries a weight");
    }
    const auto size = parse_token<std::size_t>(size_token, reader, "bag size");
    bag.members.resize(size);
    for (std::size_t& id : bag.members) {
      std::string token;
      if (!(ss >> token)) reader.fail("bag has fewer members than declared");
      id = parse_token<std::size_t>(token, reader, "member id");
    }
    std::string extra;
    if (ss >> extra) reader.fail("bag has more members than declared");
    const long upper = mode == Mode::kLLP ? static_cast<long>(size) : 1;
    if (bag.sigma < 0 || bag.sigma > upper) {
      reader.fail("aggregate label " + std::to_string(bag.sigma) + " outside [0, " + std::to_string(upper) + "]");
    }
    for (std::size_t id : bag.members) {
      if (id >= table->size()) reader.fail("member id " + std::to_string(id) + " out of range");
    }

    std::vector<std::size_t> sources;
    if (!trailer.empty()) {
      std::istringstream ts(trailer);
      std::string word;
      ts >> word;
      if (word == "from") {
        std::string token;
        while (ts >> token) sources.push_back(parse_token<std::size_t>(token, reader, "source index"));
      }
    }
    provenance.push_back(std::move(sources));
    bags.push_back(std::move(bag));
  }
  std::string line;
  if (reader.next(line)) reader.fail("trailing content after last bag");

  try {
    std::optional<std::vector<double>> w;
    if (weighted) w = std::move(weights);
    return ParsedCollection{BagCollection(mode, std::move(table), std::move(bags), std::move(w)),
                            std::move(provenance)};
  } catch (const DataError& e) {
    throw DataError(std::string("invalid collection: ") + e.what());
  }
}

void save_collection(const std::string& path, const BagCollection& coll, const Provenance& provenance) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_collection(out, coll, provenance);
  if (!out) throw DataError("write to '" + path + "' failed");
}

ParsedCollection load_collection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return read_collection(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_classifier(std::ostream& out, const Classifier& h) {
  out << "classifier " << to_string(h.kind()) << ' ';
  if (h.kind() == ClassifierKind::kExplicitLabeling) {
    out << h.labels().size() << " labels";
    for (std::int8_t l : h.labels()) {
      if (l < 0) {
        out << " -";
      } else {
        out << ' ' << static_cast<int>(l);
      }
    }
  } else {
    out << h.dim() << " threshold " << format_real(h.threshold()) << " bias " << format_real(h.bias())
        << " weights";
    for (double w : h.weights()) out << ' ' << format_real(w);
  }
  out << '\n';
}

Classifier read_classifier(std::istream& in) {
  LineReader reader(in);
  std::istringstream ss(reader.require("classifier record"));
  std::string tag;
  std::string kind;
  std::string dim_token;
  ss >> tag >> kind >> dim_token;
  if (tag != "classifier") reader.fail("expected classifier record");
  const auto dim = parse_token<std::size_t>(dim_token, reader, "dimension");
  auto expect = [&](const char* key) {
    std::string word;
    ss >> word;
    if (word != key) reader.fail(std::string("expected '") + key + "'");
  };
  auto next_token = [&](const char* what) {
    std::string token;
    if (!(ss >> token)) reader.fail(std::string("missing ") + what);
    return token;
  };
  if (kind == "explicit-labeling") {
    expect("labels");
    Labels labels(dim);
    for (auto& l : labels) {
      const std::string token = next_token("label");
      l = token == "-" ? std::int8_t{-1}
                       : static_cast<std::int8_t>(parse_token<int>(token, reader, "label"));
    }
    return Classifier::explicit_labeling(std::move(labels));
  }
  expect("threshold");
  const double threshold = parse_real(next_token("threshold"), reader, "threshold");
  expect("bias");
  const double bias = parse_real(next_token("bias"), reader, "bias");
  expect("weights");
  std::vector<double> weights(dim);
  for (double& w : weights) w = parse_real(next_token("weight"), reader, "weight");
  if (kind == "linear-sigmoid") return Classifier::linear_sigmoid(std::move(weights), bias, threshold);
  if (kind == "homogeneous-halfspace") {
    if (bias != 0.0) reader.fail("homogeneous halfspace with non-zero bias");
    return Classifier::homogeneous_halfspace(std::move(weights));
  }
  if (kind == "affine-halfspace") return Classifier::affine_halfspace(std::move(weights), bias);
  reader.fail("unknown classifier kind '" + kind + "'");
}

}  // namespace llp
