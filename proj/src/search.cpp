#include "latqd/search.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "latqd/degree.hpp"
#include "latqd/errors.hpp"
#include "latqd/rng.hpp"

namespace latqd {

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.rho != b.rho) return a.rho > b.rho;
  if (a.minimal_count != b.minimal_count) return a.minimal_count < b.minimal_count;
  return a.g < b.g;
}

Candidate evaluate_candidate(const LatticeRule& rule) {
  const TrigDegree deg = trig_degree(rule);
  const auto g = rule.generator();
  return Candidate{{g.begin(), g.end()}, deg.rho, count_dual_vectors_with_norm(rule, deg.rho + 1)};
}

std::vector<Int> korobov_vector(Int modulus, Int a, std::size_t s) {
  std::vector<Int> g(s);
  Int power = 1 % modulus;
  for (std::size_t j = 0; j < s; ++j) {
    g[j] = power;
    power = mul_mod(power, mod_floor(a, modulus), modulus);
  }
  return g;
}

namespace {

// The best `capacity` candidates seen so far, best first.
class Leaderboard {
 public:
  explicit Leaderboard(std::size_t capacity) : capacity_(capacity) {}

  // Candidates with rho below this cannot enter; -1 while not full.
  Int floor() const { return entries_.size() < capacity_ ? -1 : entries_.back().rho; }

  void offer(Candidate c) {
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), c, ranks_before);
    if (static_cast<std::size_t>(pos - entries_.begin()) >= capacity_) return;
    if (pos != entries_.end() && pos->g == c.g) return;
    entries_.insert(pos, std::move(c));
    if (entries_.size() > capacity_) entries_.pop_back();
  }

  void merge(const Leaderboard& other) {
    for (const auto& c : other.entries_) offer(c);
  }

  const std::vector<Candidate>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  std::vector<Candidate> entries_;
};

// Degree with an early exit: returns nullopt as soon as a dual vector of norm
// <= floor shows the rule cannot reach the leaderboard.
std::optional<Candidate> evaluate_pruned(const LatticeRule& rule, Int floor) {
  const Int n = rule.modulus();
  Int radius = std::clamp<Int>(floor, 1, n);
  TrigDegree deg;
  for (;;) {
    deg = trig_degree_dp(rule, BoxRadius(radius));
    if (deg.exact) break;
    radius = std::min(2 * radius, n);
  }
  if (deg.rho < floor) return std::nullopt;
  const auto g = rule.generator();
  return Candidate{{g.begin(), g.end()}, deg.rho, count_dual_vectors_with_norm(rule, deg.rho + 1)};
}

// Evaluates candidates 0..count-1 (those for which make(i) yields a vector)
// on contiguous per-worker slices and merges the leaderboards.
template <class Make>
Leaderboard scan(Int modulus, std::size_t count, std::size_t capacity, unsigned threads,
                 Make&& make, Int& visited) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::max(1u, threads), count));
  std::vector<Leaderboard> boards(workers, Leaderboard(capacity));
  std::vector<Int> seen(workers, 0);
  parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i) {
      std::optional<std::vector<Int>> g = make(i);
      if (!g) continue;
      ++seen[w];
      LatticeRule rule(modulus, std::move(*g));
      if (auto c = evaluate_pruned(rule, boards[w].floor())) boards[w].offer(std::move(*c));
    }
  });
  Leaderboard merged(capacity);
  for (const auto& b : boards) merged.merge(b);
  visited = std::accumulate(seen.begin(), seen.end(), Int{0});
  return merged;
}

SearchResult finish(Int modulus, const Leaderboard& board, Int visited) {
  if (board.entries().empty()) {
    throw Error(ErrorCode::NoValidCandidate, "no admissible generating vector");
  }
  const Candidate& best = board.entries().front();
  LatticeRule rule(modulus, best.g);
  TrigDegree deg = trig_degree(rule);
  std::vector<Candidate> rest(board.entries().begin() + 1, board.entries().end());
  return SearchResult{std::move(rule), std::move(deg), best.minimal_count, std::move(rest),
                      visited, 0};
}

void check_space(Int modulus, std::size_t s) {
  if (modulus < 2) {
    throw Error(ErrorCode::ModulusTooSmall, "modulus must be at least 2");
  }
  if (s == 0) throw Error(ErrorCode::EmptyGenerator, "dimension must be at least 1");
}

bool is_sorted_representative(std::span<const Int> g, Int modulus) {
  if (!std::is_sorted(g.begin(), g.end())) return false;
  const bool has_unit =
      std::any_of(g.begin(), g.end(), [modulus](Int x) { return std::gcd(x, modulus) == 1; });
  return !has_unit || g[0] == 1;
}

}  // namespace

SearchResult exhaustive_search(const SearchSpec& spec) {
  check_space(spec.modulus, spec.dimension);
  const Int base = spec.modulus - 1;
  Int space = 1;
  for (std::size_t j = 0; j < spec.dimension; ++j) {
    if (space > spec.budget / base) {
      throw Error(ErrorCode::BudgetExceeded,
                  "(N-1)^s exceeds the search budget of " + std::to_string(spec.budget));
    }
    space *= base;
  }
  if (space > spec.budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "(N-1)^s exceeds the search budget of " + std::to_string(spec.budget));
  }

  const std::size_t s = spec.dimension;
  auto make = [&](std::size_t index) -> std::optional<std::vector<Int>> {
    // lexicographic order: the first component is the most significant digit
    std::vector<Int> g(s);
    auto rest = static_cast<Int>(index);
    for (std::size_t j = s; j-- > 0;) {
      g[j] = rest % base + 1;
      rest /= base;
    }
    if (spec.symmetry_pruning && !is_sorted_representative(g, spec.modulus)) return std::nullopt;
    return g;
  };
  Int visited = 0;
  const auto board = scan(spec.modulus, static_cast<std::size_t>(space), spec.runner_ups + 1,
                          spec.exec.threads, make, visited);
  return finish(spec.modulus, board, visited);
}

SearchResult korobov_search(Int modulus, std::size_t s, Exec exec) {
  check_space(modulus, s);
  auto make = [&](std::size_t index) -> std::optional<std::vector<Int>> {
    auto g = korobov_vector(modulus, static_cast<Int>(index) + 1, s);
    if (std::find(g.begin(), g.end(), Int{0}) != g.end()) return std::nullopt;
    return g;
  };
  Int visited = 0;
  const auto board = scan(modulus, static_cast<std::size_t>(modulus - 1), kDefaultRunnerUps + 1,
                          exec.threads, make, visited);
  SearchResult result = finish(modulus, board, visited);
  const auto best = result.best_rule.generator();
  for (Int a = 1; a < modulus; ++a) {
    if (std::ranges::equal(korobov_vector(modulus, a, s), best)) {
      result.korobov_a = a;
      break;
    }
  }
  return result;
}

SearchResult random_search(const SearchSpec& spec) {
  if (spec.trials < 1) throw Error(ErrorCode::TrialsZero, "random search needs trials >= 1");
  check_space(spec.modulus, spec.dimension);
  if (spec.trials > spec.budget) {
    throw Error(ErrorCode::BudgetExceeded, "trials exceed the search budget");
  }

  const std::size_t s = spec.dimension;
  // Size of {1..N-1}^s, saturated at the trial count.
  Int space = 1;
  for (std::size_t j = 0; j < s && space <= spec.trials; ++j) space *= spec.modulus - 1;

  Xoshiro256 rng(spec.seed);
  std::vector<std::vector<Int>> draws;
  draws.reserve(static_cast<std::size_t>(spec.trials));
  std::set<std::vector<Int>> seen;
  for (Int t = 0; t < spec.trials; ++t) {
    if (spec.dedup && static_cast<Int>(seen.size()) == space) break;
    std::vector<Int> g(s);
    do {
      for (auto& x : g) x = rng.between(1, spec.modulus - 1);
    } while (spec.dedup && seen.contains(g));
    if (spec.dedup) seen.insert(g);
    draws.push_back(std::move(g));
  }

  auto make = [&](std::size_t index) -> std::optional<std::vector<Int>> { return draws[index]; };
  Int visited = 0;
  const auto board = scan(spec.modulus, draws.size(), spec.runner_ups + 1, spec.exec.threads,
                          make, visited);
  return finish(spec.modulus, board, visited);
}

SearchResult run_search(const SearchSpec& spec) {
  switch (spec.strategy) {
    case SearchStrategy::Exhaustive: return exhaustive_search(spec);
    case SearchStrategy::Korobov: return korobov_search(spec.modulus, spec.dimension, spec.exec);
    case SearchStrategy::Random: return random_search(spec);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown search strategy");
}

}  // namespace latqd
