#pragma once

// Result documents printed by the latqd CLI.
//
// JSON field order is fixed:
//   schema_version, command, rule {N, s, g}, d, engine, coefficients,
//   degree {rho, exact, witness {k, norm}}, search {...}, residual,
//   timing {wall_ns, engine}
// Absent optional blocks are omitted. Integers are printed as integers and
// floats with 17 significant digits.
//
// The CSV form is a two-column key,value table with the same keys flattened
// in the same order (lists expand to key[i]).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latqd/lattice.hpp"
#include "latqd/search.hpp"

namespace latqd::cli {

inline constexpr const char* kSchemaVersion = "latqd/1";

struct RuleBlock {
  Int n = 0;
  Int s = 0;
  std::vector<Int> g;
  friend bool operator==(const RuleBlock&, const RuleBlock&) = default;
};

struct WitnessBlock {
  std::vector<Int> k;
  Int norm = 0;
  friend bool operator==(const WitnessBlock&, const WitnessBlock&) = default;
};

struct DegreeBlock {
  Int rho = 0;
  bool exact = false;
  std::optional<WitnessBlock> witness;
  friend bool operator==(const DegreeBlock&, const DegreeBlock&) = default;
};

struct RunnerUp {
  std::vector<Int> g;
  Int rho = 0;
  Int minimal_count = 0;
  friend bool operator==(const RunnerUp&, const RunnerUp&) = default;
};

struct SearchBlock {
  std::string strategy;
  Int minimal_count = 0;
  Int visited = 0;
  std::optional<Int> korobov_a;
  std::vector<RunnerUp> runner_ups;
  friend bool operator==(const SearchBlock&, const SearchBlock&) = default;
};

struct TimingBlock {
  Int wall_ns = 0;
  std::string engine;
  friend bool operator==(const TimingBlock&, const TimingBlock&) = default;
};

struct ResultDocument {
  std::string schema_version = kSchemaVersion;
  std::string command;
  RuleBlock rule;
  std::optional<Int> d;
  std::string engine;
  std::optional<std::vector<Int>> coefficients;
  std::optional<DegreeBlock> degree;
  std::optional<SearchBlock> search;
  std::optional<double> residual;
  std::optional<TimingBlock> timing;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

RuleBlock rule_block(const LatticeRule& rule);
DegreeBlock degree_block(const TrigDegree& t);
SearchBlock search_block(const SearchResult& r, SearchStrategy strategy);

std::string format_double(double x);

std::string to_json(const ResultDocument& doc);
/// Flattened key/value pairs in JSON field order.
std::vector<std::pair<std::string, std::string>> flatten(const ResultDocument& doc);
std::string to_csv(const ResultDocument& doc);

/// Parses output of to_json. Throws std::runtime_error on malformed input.
ResultDocument parse_json(const std::string& text);

std::string_view strategy_name(SearchStrategy s);

}  // namespace latqd::cli
