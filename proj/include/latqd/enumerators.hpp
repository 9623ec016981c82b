#pragma once

// Four routes to the weight enumerator of a rank-1 lattice rule:
//
//   brute_force     enumerate the box {-d..d}^s directly
//   residue_dp      exact convolution over Z_N, one coordinate at a time
//   charsum         average over n of prod_j (1 + sum_a z^a 2 cos(2 pi n a g_j / N))
//   fft_enumerator  sample that product at roots of unity and invert
//
// The first two are exact integer computations; the last two produce real
// coefficients that go through round_coeffs.

#include <complex>
#include <cstdint>
#include <vector>

#include "latqd/lattice.hpp"
#include "latqd/parallel.hpp"

namespace latqd {

inline constexpr Int kDefaultEnumerationBudget = 100'000'000;
inline constexpr Int kDefaultOpBudget = 20'000'000'000;

/// Real coefficients [c_0..c_d] of one coordinate's factor at node n:
/// c_0 = 1, c_a = 2 cos(2 pi n a g_j / N).
struct PerNodeFactor {
  Int n = 0;
  std::vector<double> factor_coeffs;
};

PerNodeFactor per_node_factor(const LatticeRule& rule, BoxRadius d, std::size_t j, Int n);

struct FloatEnumerator {
  LatticeRule rule;
  BoxRadius d;
  std::vector<double> coeffs;
  /// max_a |coeffs[a] - round(coeffs[a])|
  double max_residual = 0.0;
  /// Largest magnitude seen where the exact answer is zero: FFT bins above
  /// ds and imaginary parts. Always 0 for charsum.
  double padding_residual = 0.0;
};

WeightEnumerator brute_force(const LatticeRule& rule, BoxRadius d,
                             Int budget = kDefaultEnumerationBudget);

WeightEnumerator residue_dp(const LatticeRule& rule, BoxRadius d,
                            Int budget = kDefaultOpBudget);

FloatEnumerator charsum(const LatticeRule& rule, BoxRadius d, Exec exec = {});

/// W(z) in O(N d s) operations without forming the coefficients.
std::complex<double> evaluate_W_at(const LatticeRule& rule, BoxRadius d,
                                   std::complex<double> z, Exec exec = {});

FloatEnumerator fft_enumerator(const LatticeRule& rule, BoxRadius d, Exec exec = {});

/// 1e-6 * max(1, (2d+1)^s / N).
double default_tolerance(const LatticeRule& rule, BoxRadius d);

/// Throws ResidualTooLarge when a coefficient (or a padding bin) is farther
/// than tol from an integer, and InvariantViolation when the rounded list is
/// not a valid enumerator.
WeightEnumerator round_coeffs(const FloatEnumerator& fe, double tol);

}  // namespace latqd
