#pragma once

// Generating-vector search maximizing the trigonometric degree.
//
// Candidates are ordered by: larger rho, then fewer dual vectors of norm
// rho + 1 (M(rho + 1) at d = rho + 1), then lexicographically smaller g.
// The order is total, so the winner and the runner-up list are the same
// for serial and parallel runs.

#include <cstdint>
#include <vector>

#include "latqd/lattice.hpp"
#include "latqd/parallel.hpp"

namespace latqd {

enum class SearchStrategy { Exhaustive, Korobov, Random };

inline constexpr Int kDefaultSearchBudget = 10'000'000;
inline constexpr std::size_t kDefaultRunnerUps = 4;

struct SearchSpec {
  Int modulus = 2;
  std::size_t dimension = 1;
  SearchStrategy strategy = SearchStrategy::Exhaustive;
  Int trials = 0;           // random only
  std::uint64_t seed = 0;   // random only
  bool dedup = false;       // random only: redraw candidates already seen
  /// Exhaustive only: visit only sorted g with g_1 = 1 whenever some
  /// component is a unit. Same winner, fewer visits.
  bool symmetry_pruning = false;
  Int budget = kDefaultSearchBudget;
  std::size_t runner_ups = kDefaultRunnerUps;
  Exec exec{};
};

struct Candidate {
  std::vector<Int> g;
  Int rho = 0;
  /// Dual vectors of norm rho + 1.
  Int minimal_count = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// True if a ranks strictly ahead of b.
bool ranks_before(const Candidate& a, const Candidate& b);

struct SearchResult {
  LatticeRule best_rule;
  TrigDegree rho;
  Int minimal_count = 0;
  std::vector<Candidate> runner_ups;
  Int visited = 0;
  /// Korobov only: the multiplier that produced best_rule.
  Int korobov_a = 0;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Full objective for one rule (no pruning).
Candidate evaluate_candidate(const LatticeRule& rule);

/// (1, a, a^2, ..., a^{s-1}) mod N. Components may be 0 for composite N.
std::vector<Int> korobov_vector(Int modulus, Int a, std::size_t s);

SearchResult exhaustive_search(const SearchSpec& spec);
SearchResult korobov_search(Int modulus, std::size_t s, Exec exec = {});
SearchResult random_search(const SearchSpec& spec);

/// Dispatch on spec.strategy.
SearchResult run_search(const SearchSpec& spec);

}  // namespace latqd
