#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"

namespace llp {

/// Line-oriented text format for bag collections.
///
///     # free-form comment lines
///     llp-bags 1
///     mode llp                      (or mil)
///     dim <d>
///     instances <n>
///     bags <m>
///     weighted <0|1>
///     i <id> <label|-> <x_1> ... <x_d>                 n lines, ids 0..n-1
///     b <sigma> <weight|-> <size> <id_1> ... <id_size> [# from <j_1> ...]
///
/// Reals are written with 17 significant digits so a write/read cycle is
/// lossless. The optional `# from` trailer records the source-bag indices a
/// union bag was built from.
using Provenance = std::vector<std::vector<std::size_t>>;

struct ParsedCollection {
  BagCollection collection;
  Provenance provenance;  // empty vectors for bags without a trailer
};

void write_collection(std::ostream& out, const BagCollection& coll, const Provenance& provenance = {});
ParsedCollection read_collection(std::istream& in);

void save_collection(const std::string& path, const BagCollection& coll, const Provenance& provenance = {});
ParsedCollection load_collection(const std::string& path);

/// One-line classifier record:
///
///     classifier <kind> <dim> threshold <t> bias <b> weights <w_1> ... <w_d>
///     classifier explicit-labeling <n> labels <l_1|-> ... <l_n|->
void write_classifier(std::ostream& out, const Classifier& h);
Classifier read_classifier(std::istream& in);

/// %.17g formatting.
std::string format_real(double x);

}  // namespace llp
