#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latqd/lattice.hpp"

namespace latqd::cli {

struct VerifyOptions {
  Int cases = 200;
  std::uint64_t seed = 0;
  Int max_n = 50;
  Int max_s = 3;
  Int max_d = 4;
  unsigned threads = 1;
};

struct PropertyTally {
  std::string name;
  Int passed = 0;
  Int failed = 0;
};

struct VerifyFailure {
  std::string property;
  Int n = 0;
  std::vector<Int> g;
  Int d = 0;
  std::string detail;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<PropertyTally> properties;
  Int cases = 0;
  /// Smallest failing instance by box size, then N.
  std::optional<VerifyFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Random instances with (2d+1)^s <= 10^6; every property class is checked
/// on every instance.
VerifyReport run_verify(const VerifyOptions& options);

std::string verify_text(const VerifyReport& report);
std::string verify_json(const VerifyReport& report);

}  // namespace latqd::cli
