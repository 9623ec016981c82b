#include "latqd/lattice.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "latqd/errors.hpp"

namespace latqd {

LatticeRule::LatticeRule(Int modulus, std::vector<Int> generator)
    : modulus_(modulus), generator_(std::move(generator)) {
  if (modulus_ < 2) {
    throw Error(ErrorCode::ModulusTooSmall,
                "modulus must be at least 2, got " + std::to_string(modulus_));
  }
  if (generator_.empty()) {
    throw Error(ErrorCode::EmptyGenerator, "generating vector has no components");
  }
  for (std::size_t j = 0; j < generator_.size(); ++j) {
    const Int gj = generator_[j];
    if (gj < 1 || gj >= modulus_) {
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "g[" + std::to_string(j) + "] = " + std::to_string(gj) +
                      " is not in {1.." + std::to_string(modulus_ - 1) + "}");
    }
  }
}

Int LatticeRule::residue(std::span<const Int> k) const {
  Int r = 0;
  for (std::size_t j = 0; j < generator_.size(); ++j) {
    r = (r + mul_mod(mod_floor(k[j], modulus_), generator_[j], modulus_)) % modulus_;
  }
  return r;
}

LatticeRule validate_rule(Int modulus, std::vector<Int> generator) {
  return LatticeRule(modulus, std::move(generator));
}

BoxRadius::BoxRadius(Int d) : d_(d) {
  if (d < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "box radius must be at least 1, got " + std::to_string(d));
  }
}

Int box_points(BoxRadius d, std::size_t s) {
  const Int side = 2 * d.value() + 1;
  Int total = 1;
  for (std::size_t j = 0; j < s; ++j) {
    if (total > std::numeric_limits<Int>::max() / side) {
      throw Error(ErrorCode::CoefficientOverflow,
                  "(2d+1)^s exceeds the 63-bit coefficient range");
    }
    total *= side;
  }
  return total;
}

void WeightEnumerator::check_invariants() const {
  box_points(d, rule.dimension());
  const auto expected = static_cast<std::size_t>(d.value()) * rule.dimension() + 1;
  if (coeffs.size() != expected) {
    throw Error(ErrorCode::InvariantViolation,
                "expected " + std::to_string(expected) + " coefficients, got " +
                    std::to_string(coeffs.size()));
  }
  if (coeffs[0] != 1) {
    throw Error(ErrorCode::InvariantViolation,
                "M(0) = " + std::to_string(coeffs[0]) + ", expected 1");
  }
  for (std::size_t a = 1; a < coeffs.size(); ++a) {
    if (coeffs[a] < 0 || coeffs[a] % 2 != 0) {
      throw Error(ErrorCode::InvariantViolation,
                  "M(" + std::to_string(a) + ") = " + std::to_string(coeffs[a]) +
                      " is negative or odd");
    }
  }
}

Int l1_norm(std::span<const Int> k) {
  Int n = 0;
  for (Int x : k) n += x < 0 ? -x : x;
  return n;
}

DualVector make_dual_vector(const LatticeRule& rule, std::vector<Int> k) {
  if (k.size() != rule.dimension() || rule.residue(k) != 0) {
    throw Error(ErrorCode::InvariantViolation, "vector is not in the dual lattice");
  }
  const Int norm = l1_norm(k);
  return DualVector{std::move(k), norm};
}

TrigDegree trig_degree_from_coeffs(const WeightEnumerator& w) {
  w.check_invariants();
  const Int top = w.degree();
  Int rho = 0;
  while (rho < top && w.coeffs[static_cast<std::size_t>(rho + 1)] == 0) ++rho;
  return TrigDegree{rho, rho < w.d.value(), std::nullopt};
}

std::complex<double> eval_poly(const WeightEnumerator& w, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = w.coeffs.rbegin(); it != w.coeffs.rend(); ++it) {
    acc = acc * z + static_cast<double>(*it);
  }
  return acc;
}

LatticeRule apply_unit(const LatticeRule& rule, Int u) {
  const Int n = rule.modulus();
  if (u < 1 || u >= n || std::gcd(u, n) != 1) {
    throw Error(ErrorCode::NotAUnit,
                std::to_string(u) + " is not a unit modulo " + std::to_string(n));
  }
  std::vector<Int> g;
  g.reserve(rule.dimension());
  for (Int gj : rule.generator()) g.push_back(mul_mod(u, gj, n));
  return LatticeRule(n, std::move(g));
}

}  // namespace latqd
