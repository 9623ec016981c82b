#pragma once

#include "latqd/enumerators.hpp"
#include "latqd/lattice.hpp"

namespace latqd {

/// Shortest nonzero dual vector in the l1 norm, by relaxing residues mod N
/// one coordinate at a time over k_j in {-d_max..d_max}. Cost is
/// O(N (2 d_max + 1) s).
///
/// When the minimum norm m found is at most d_max the result is exact with
/// rho = m - 1 and a witness attached. Otherwise rho = d_max and exact is
/// false. Ties between equally short vectors go to the first relaxation in
/// (j, k) order with k ascending from -d_max.
TrigDegree trig_degree_dp(const LatticeRule& rule, BoxRadius d_max,
                          Int budget = kDefaultOpBudget);

/// trig_degree_dp with d_max = N; always exact since N e_1 is dual.
TrigDegree trig_degree(const LatticeRule& rule);

/// Number of dual vectors with l1 norm exactly m (any box containing the
/// l1 ball of radius m). For m = rho + 1 this equals M(rho + 1) at d = rho + 1.
Int count_dual_vectors_with_norm(const LatticeRule& rule, Int m,
                                 Int budget = kDefaultOpBudget);

}  // namespace latqd
