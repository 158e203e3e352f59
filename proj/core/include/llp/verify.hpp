#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "llp/constructions.hpp"

namespace llp {

enum class CheckStatus { kPass, kFail, kInfo };

const char* to_string(CheckStatus status);

struct CheckLine {
  std::string name;
  std::string value;
  CheckStatus status = CheckStatus::kInfo;
};

/// Ordered list of measured properties; written as `name: value [status]` lines.
class VerificationReport {
 public:
  explicit VerificationReport(std::string kind) : kind_(std::move(kind)) {}

  void info(std::string name, std::string value);
  void check(std::string name, std::string value, bool ok);

  [[nodiscard]] const std::string& kind() const { return kind_; }
  [[nodiscard]] const std::vector<CheckLine>& lines() const { return lines_; }
  [[nodiscard]] const CheckLine* find(const std::string& name) const;
  [[nodiscard]] bool passed() const;

  void write(std::ostream& out) const;

 private:
  std::string kind_;
  std::vector<CheckLine> lines_;
};

struct MILVerifyParams {
  CircleMILConfig construction;
  std::size_t random_weightings = 100;
  std::size_t n_dirs = 720;
  std::size_t game_rounds = 10000;
  double max_duality_gap = 1e-3;
  std::uint64_t seed = 0;
};

struct LLPVerifyParams {
  MaxCutLLPConfig construction;
  std::size_t search_budget = 200;    // local-search restarts above the brute-force limit
  std::size_t halfspace_draws = 10000;
  std::size_t menu_size = 200;        // random halfspaces in the adversarial menu
  std::size_t game_rounds = 10000;
  double max_duality_gap = 1e-3;
  std::uint64_t seed = 0;
};

VerificationReport verify_mil_construction(const MILVerifyParams& params);
VerificationReport verify_llp_construction(const LLPVerifyParams& params);

/// Mean accuracy of `draws` uniformly random homogeneous halfspaces.
double mean_random_halfspace_accuracy(const BagCollection& coll, std::size_t draws, Rng& rng);

}  // namespace llp
