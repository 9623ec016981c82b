#pragma once

// Core types for rank-1 lattice rules: the rule itself, the index box used
// to truncate the dual lattice, the weight enumerator coefficients and the
// trigonometric degree.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace latqd {

using Int = std::int64_t;

/// Rank-1 lattice rule with points {n g / N}, n = 0..N-1.
class LatticeRule {
 public:
  /// Throws ModulusTooSmall, EmptyGenerator or GeneratorOutOfRange. Components
  /// must already lie in {1..N-1}; nothing is reduced.
  LatticeRule(Int modulus, std::vector<Int> generator);

  Int modulus() const noexcept { return modulus_; }
  std::size_t dimension() const noexcept { return generator_.size(); }
  std::span<const Int> generator() const noexcept { return generator_; }
  Int operator[](std::size_t j) const { return generator_[j]; }

  /// k . g mod N, in [0, N).
  Int residue(std::span<const Int> k) const;

  friend bool operator==(const LatticeRule&, const LatticeRule&) = default;

 private:
  Int modulus_;
  std::vector<Int> generator_;
};

LatticeRule validate_rule(Int modulus, std::vector<Int> generator);

/// Half-width d of the index box {-d..d}^s.
class BoxRadius {
 public:
  explicit BoxRadius(Int d);
  Int value() const noexcept { return d_; }
  friend bool operator==(BoxRadius, BoxRadius) = default;

 private:
  Int d_;
};

/// (2d+1)^s, or throws CoefficientOverflow when it does not fit in 63 bits.
Int box_points(BoxRadius d, std::size_t s);

/// Coefficients M(0..ds) of the weight enumerator polynomial W(z).
struct WeightEnumerator {
  LatticeRule rule;
  BoxRadius d;
  std::vector<Int> coeffs;
  /// Largest distance to the nearest integer seen when the coefficients came
  /// from a floating-point engine; empty for exact engines.
  std::optional<double> residual;

  /// Throws InvariantViolation unless length = ds+1, M(0) = 1, every M(a) is
  /// nonnegative and M(a) is even for a >= 1. Also rejects boxes whose point
  /// count overflows (CoefficientOverflow).
  void check_invariants() const;

  Int degree() const noexcept { return static_cast<Int>(coeffs.size()) - 1; }
};

struct DualVector {
  std::vector<Int> k;
  Int norm = 0;

  friend bool operator==(const DualVector&, const DualVector&) = default;
};

Int l1_norm(std::span<const Int> k);

/// Builds a DualVector, throwing InvariantViolation if k . g != 0 mod N.
DualVector make_dual_vector(const LatticeRule& rule, std::vector<Int> k);

struct TrigDegree {
  Int rho = 0;
  /// False when rho is only the value reachable inside the box.
  bool exact = false;
  std::optional<DualVector> witness;

  friend bool operator==(const TrigDegree&, const TrigDegree&) = default;
};

/// Degree from the leading zero run of M(1), M(2), ...; exact iff rho < d.
TrigDegree trig_degree_from_coeffs(const WeightEnumerator& w);

/// Horner evaluation of sum_a M(a) z^a.
std::complex<double> eval_poly(const WeightEnumerator& w, std::complex<double> z);

/// Replaces every g_j by (u g_j) mod N. Throws NotAUnit unless 1 <= u <= N-1
/// and gcd(u, N) = 1.
LatticeRule apply_unit(const LatticeRule& rule, Int u);

/// (a * b) mod m for 0 <= a, b < m without intermediate overflow.
inline Int mul_mod(Int a, Int b, Int m) {
  return static_cast<Int>((static_cast<__int128>(a) * b) % m);
}

/// Least nonnegative residue.
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace latqd
