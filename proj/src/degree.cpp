#include "latqd/degree.hpp"

#include <limits>
#include <string>
#include <vector>

#include "latqd/errors.hpp"

namespace latqd {

namespace {

constexpr Int kUnreached = std::numeric_limits<Int>::max();

// Per-coordinate relaxation state. Only the "some component nonzero" layer
// is stored: the all-zero layer is the single entry (residue 0, norm 0).
struct DegreeDPState {
  std::vector<Int> dist;  // min norm of a nonzero partial vector per residue
  // predecessor links, one row per coordinate
  std::vector<std::vector<Int>> step;
  std::vector<std::vector<unsigned char>> from_zero;
};

}  // namespace

TrigDegree trig_degree_dp(const LatticeRule& rule, BoxRadius d_max, Int budget) {
  const Int n = rule.modulus();
  const Int radius = d_max.value();
  const std::size_t s = rule.dimension();

  const long double ops = static_cast<long double>(n) * static_cast<long double>(2 * radius + 1) *
                          static_cast<long double>(s);
  if (ops > static_cast<long double>(budget)) {
    throw Error(ErrorCode::BudgetExceeded, "degree relaxation exceeds the op budget");
  }

  const auto cells = static_cast<std::size_t>(n);
  DegreeDPState state{std::vector<Int>(cells, kUnreached), {}, {}};
  state.step.assign(s, std::vector<Int>(cells, 0));
  state.from_zero.assign(s, std::vector<unsigned char>(cells, 0));
  std::vector<Int> next(cells);

  for (std::size_t j = 0; j < s; ++j) {
    std::fill(next.begin(), next.end(), kUnreached);
    auto& step = state.step[j];
    auto& from_zero = state.from_zero[j];
    for (Int k = -radius; k <= radius; ++k) {
      const Int offset = mul_mod(mod_floor(k, n), rule[j], n);
      const Int absk = k < 0 ? -k : k;
      if (k != 0) {
        const auto dest = static_cast<std::size_t>(offset);
        if (absk < next[dest]) {
          next[dest] = absk;
          step[dest] = k;
          from_zero[dest] = 1;
        }
      }
      for (Int r = 0; r < n; ++r) {
        const Int base = state.dist[static_cast<std::size_t>(r)];
        if (base == kUnreached) continue;
        Int dest = r + offset;
        if (dest >= n) dest -= n;
        const auto di = static_cast<std::size_t>(dest);
        if (base + absk < next[di]) {
          next[di] = base + absk;
          step[di] = k;
          from_zero[di] = 0;
        }
      }
    }
    state.dist.swap(next);
  }

  const Int shortest = state.dist[0];
  if (shortest == kUnreached || shortest > radius) {
    return TrigDegree{radius, false, std::nullopt};
  }

  std::vector<Int> k(s, 0);
  Int r = 0;
  for (std::size_t j = s; j-- > 0;) {
    const auto ri = static_cast<std::size_t>(r);
    k[j] = state.step[j][ri];
    if (state.from_zero[j][ri]) break;
    r = mod_floor(r - mul_mod(mod_floor(k[j], n), rule[j], n), n);
  }
  return TrigDegree{shortest - 1, true, make_dual_vector(rule, std::move(k))};
}

TrigDegree trig_degree(const LatticeRule& rule) {
  return trig_degree_dp(rule, BoxRadius(rule.modulus()));
}

Int count_dual_vectors_with_norm(const LatticeRule& rule, Int m, Int budget) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "norm must be nonnegative");
  const Int n = rule.modulus();
  const std::size_t s = rule.dimension();
  const Int width = m + 1;

  const long double ops = static_cast<long double>(n) * static_cast<long double>(width) *
                          static_cast<long double>(width) * static_cast<long double>(s > 2 ? s - 2 : 0);
  if (ops > static_cast<long double>(budget)) {
    throw Error(ErrorCode::BudgetExceeded, "dual-vector count exceeds the op budget");
  }

  if (s == 1) {
    if (m == 0) return 1;
    return mul_mod(m % n, rule[0], n) == 0 ? 2 : 0;
  }

  const auto cells = static_cast<std::size_t>(n * width);
  std::vector<Int> table(cells, 0);
  std::vector<Int> next(s > 2 ? cells : 0, 0);
  auto cell = [width](Int r, Int a) { return static_cast<std::size_t>(r * width + a); };

  // First coordinate straight from the zero vector.
  for (Int k = -m; k <= m; ++k) {
    ++table[cell(mul_mod(mod_floor(k, n), rule[0], n), k < 0 ? -k : k)];
  }

  for (std::size_t j = 1; j + 1 < s; ++j) {
    std::fill(next.begin(), next.end(), 0);
    for (Int k = -m; k <= m; ++k) {
      const Int offset = mul_mod(mod_floor(k, n), rule[j], n);
      const Int absk = k < 0 ? -k : k;
      for (Int r = 0; r < n; ++r) {
        Int dest = r + offset;
        if (dest >= n) dest -= n;
        const Int* src = &table[cell(r, 0)];
        Int* dst = &next[cell(dest, absk)];
        for (Int a = 0; a + absk <= m; ++a) {
          if (__builtin_add_overflow(dst[a], src[a], &dst[a])) {
            throw Error(ErrorCode::CoefficientOverflow, "dual-vector count overflows 63 bits");
          }
        }
      }
    }
    table.swap(next);
  }

  // Last coordinate: only residue 0 at norm m is needed.
  Int total = 0;
  const std::size_t last = s - 1;
  for (Int k = -m; k <= m; ++k) {
    const Int absk = k < 0 ? -k : k;
    const Int from = mod_floor(-mul_mod(mod_floor(k, n), rule[last], n), n);
    if (__builtin_add_overflow(total, table[cell(from, m - absk)], &total)) {
      throw Error(ErrorCode::CoefficientOverflow, "dual-vector count overflows 63 bits");
    }
  }
  return total;
}

}  // namespace latqd
