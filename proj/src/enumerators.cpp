#include "latqd/enumerators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "latqd/errors.hpp"
#include "latqd/fft.hpp"

namespace latqd {

namespace {

// Nodes per leaf of the reduction tree.
constexpr std::size_t kNodeBlock = 64;

std::vector<double> cosine_table(Int modulus) {
  std::vector<double> table(static_cast<std::size_t>(modulus));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(modulus);
  for (Int r = 0; r < modulus; ++r) {
    table[static_cast<std::size_t>(r)] = std::cos(step * static_cast<double>(r));
  }
  return table;
}

std::size_t block_count(Int modulus) {
  return (static_cast<std::size_t>(modulus) + kNodeBlock - 1) / kNodeBlock;
}

// Cosine factor of coordinate j at node n, written into out[0..d].
void fill_factor(const std::vector<double>& cos_table, Int modulus, Int gj, Int n, Int d,
                 double* out) {
  const Int step = mul_mod(n, gj, modulus);
  out[0] = 1.0;
  Int r = 0;
  for (Int a = 1; a <= d; ++a) {
    r += step;
    if (r >= modulus) r -= modulus;
    out[a] = 2.0 * cos_table[static_cast<std::size_t>(r)];
  }
}

}  // namespace

PerNodeFactor per_node_factor(const LatticeRule& rule, BoxRadius d, std::size_t j, Int n) {
  const auto table = cosine_table(rule.modulus());
  PerNodeFactor f{n, std::vector<double>(static_cast<std::size_t>(d.value()) + 1)};
  fill_factor(table, rule.modulus(), rule[j], mod_floor(n, rule.modulus()), d.value(),
              f.factor_coeffs.data());
  return f;
}

WeightEnumerator brute_force(const LatticeRule& rule, BoxRadius d, Int budget) {
  const std::size_t s = rule.dimension();
  const Int points = box_points(d, s);
  if (points > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "box has " + std::to_string(points) + " points, budget is " +
                    std::to_string(budget));
  }
  const Int n = rule.modulus();
  const Int radius = d.value();
  const Int side = 2 * radius + 1;

  // shift[j][i] = (i - d) g_j mod N
  std::vector<std::vector<Int>> shift(s, std::vector<Int>(static_cast<std::size_t>(side)));
  for (std::size_t j = 0; j < s; ++j) {
    for (Int i = 0; i < side; ++i) {
      shift[j][static_cast<std::size_t>(i)] = mul_mod(mod_floor(i - radius, n), rule[j], n);
    }
  }

  std::vector<Int> coeffs(static_cast<std::size_t>(radius) * s + 1, 0);
  // Odometer over the first s-1 coordinates with prefix residues and norms;
  // the last coordinate is swept in the inner loop.
  std::vector<Int> idx(s, 0);
  std::vector<Int> prefix_res(s, 0);
  std::vector<Int> prefix_norm(s, 0);
  const std::size_t last = s - 1;
  const auto& last_shift = shift[last];
  for (std::size_t t = 0; t < last; ++t) {
    Int r = prefix_res[t] + shift[t][0];
    if (r >= n) r -= n;
    prefix_res[t + 1] = r;
    prefix_norm[t + 1] = prefix_norm[t] + radius;
  }

  for (;;) {
    const Int base_res = prefix_res[last];
    const Int base_norm = prefix_norm[last];
    for (Int i = 0; i < side; ++i) {
      Int r = base_res + last_shift[static_cast<std::size_t>(i)];
      if (r >= n) r -= n;
      if (r == 0) {
        const Int k = i - radius;
        ++coeffs[static_cast<std::size_t>(base_norm + (k < 0 ? -k : k))];
      }
    }

    std::size_t j = last;
    while (j > 0) {
      --j;
      if (++idx[j] < side) break;
      idx[j] = 0;
      if (j == 0) return WeightEnumerator{rule, d, std::move(coeffs), std::nullopt};
    }
    if (last == 0) break;
    for (std::size_t t = j; t < last; ++t) {
      Int r = prefix_res[t] + shift[t][static_cast<std::size_t>(idx[t])];
      if (r >= n) r -= n;
      const Int k = idx[t] - radius;
      prefix_res[t + 1] = r;
      prefix_norm[t + 1] = prefix_norm[t] + (k < 0 ? -k : k);
    }
  }
  return WeightEnumerator{rule, d, std::move(coeffs), std::nullopt};
}

WeightEnumerator residue_dp(const LatticeRule& rule, BoxRadius d, Int budget) {
  const std::size_t s = rule.dimension();
  box_points(d, s);
  const Int n = rule.modulus();
  const Int radius = d.value();
  const Int width = radius * static_cast<Int>(s) + 1;

  const long double ops = static_cast<long double>(n) * static_cast<long double>(2 * radius + 1) *
                          static_cast<long double>(width) * static_cast<long double>(s);
  if (ops > static_cast<long double>(budget)) {
    throw Error(ErrorCode::BudgetExceeded, "residue table work exceeds the op budget");
  }

  const auto cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(width);
  // table[r * width + a]: partial vectors with residue r and l1 norm a
  std::vector<Int> table(cells, 0);
  std::vector<Int> next(cells, 0);
  table[0] = 1;

  Int reach = 0;  // largest norm present so far
  for (std::size_t j = 0; j < s; ++j) {
    std::fill(next.begin(), next.end(), 0);
    for (Int k = -radius; k <= radius; ++k) {
      const Int offset = mul_mod(mod_floor(k, n), rule[j], n);
      const Int absk = k < 0 ? -k : k;
      for (Int r = 0; r < n; ++r) {
        Int dest = r + offset;
        if (dest >= n) dest -= n;
        const Int* src = &table[static_cast<std::size_t>(r * width)];
        Int* dst = &next[static_cast<std::size_t>(dest * width + absk)];
        for (Int a = 0; a <= reach; ++a) dst[a] += src[a];
      }
    }
    table.swap(next);
    reach += radius;
  }

  std::vector<Int> coeffs(table.begin(), table.begin() + width);
  return WeightEnumerator{rule, d, std::move(coeffs), std::nullopt};
}

FloatEnumerator charsum(const LatticeRule& rule, BoxRadius d, Exec exec) {
  const std::size_t s = rule.dimension();
  const Int n = rule.modulus();
  const Int radius = d.value();
  const auto width = static_cast<std::size_t>(radius) * s + 1;
  const auto table = cosine_table(n);

  const std::size_t blocks = block_count(n);
  std::vector<std::vector<double>> partial(blocks);

  parallel_for(blocks, exec.threads, [&](std::size_t b) {
    std::vector<double> sum(width, 0.0);
    std::vector<double> poly(width, 0.0);
    std::vector<double> scratch(width, 0.0);
    std::vector<double> factor(static_cast<std::size_t>(radius) + 1);
    const Int first = static_cast<Int>(b * kNodeBlock);
    const Int stop = std::min<Int>(n, first + static_cast<Int>(kNodeBlock));
    for (Int node = first; node < stop; ++node) {
      fill_factor(table, n, rule[0], node, radius, poly.data());
      std::size_t deg = static_cast<std::size_t>(radius);
      for (std::size_t j = 1; j < s; ++j) {
        fill_factor(table, n, rule[j], node, radius, factor.data());
        std::fill(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(deg + radius + 1), 0.0);
        for (std::size_t p = 0; p <= deg; ++p) {
          const double lhs = poly[p];
          for (std::size_t q = 0; q <= static_cast<std::size_t>(radius); ++q) {
            scratch[p + q] += lhs * factor[q];
          }
        }
        deg += static_cast<std::size_t>(radius);
        std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(deg + 1), poly.begin());
      }
      for (std::size_t a = 0; a < width; ++a) sum[a] += poly[a];
    }
    partial[b] = std::move(sum);
  });

  auto total = tree_reduce(partial, 0, blocks, [](std::vector<double>& acc, const std::vector<double>& x) {
    for (std::size_t a = 0; a < acc.size(); ++a) acc[a] += x[a];
  });

  FloatEnumerator fe{rule, d, std::move(total), 0.0, 0.0};
  const double inv = 1.0 / static_cast<double>(n);
  for (double& c : fe.coeffs) {
    c *= inv;
    fe.max_residual = std::max(fe.max_residual, std::abs(c - std::nearbyint(c)));
  }
  return fe;
}

std::complex<double> evaluate_W_at(const LatticeRule& rule, BoxRadius d, std::complex<double> z,
                                   Exec exec) {
  using cd = std::complex<double>;
  const std::size_t s = rule.dimension();
  const Int n = rule.modulus();
  const Int radius = d.value();
  const auto table = cosine_table(n);

  std::vector<cd> zpow(static_cast<std::size_t>(radius) + 1);
  zpow[0] = 1.0;
  for (Int a = 1; a <= radius; ++a) zpow[static_cast<std::size_t>(a)] = zpow[static_cast<std::size_t>(a - 1)] * z;
  const bool real_z = z.imag() == 0.0;

  const std::size_t blocks = block_count(n);
  std::vector<cd> partial(blocks);

  parallel_for(blocks, exec.threads, [&](std::size_t b) {
    cd sum = 0.0;
    const Int first = static_cast<Int>(b * kNodeBlock);
    const Int stop = std::min<Int>(n, first + static_cast<Int>(kNodeBlock));
    for (Int node = first; node < stop; ++node) {
      if (real_z) {
        double prod = 1.0;
        for (std::size_t j = 0; j < s; ++j) {
          const Int step = mul_mod(node, rule[j], n);
          Int r = 0;
          double inner = 1.0;
          for (Int a = 1; a <= radius; ++a) {
            r += step;
            if (r >= n) r -= n;
            inner += zpow[static_cast<std::size_t>(a)].real() * 2.0 * table[static_cast<std::size_t>(r)];
          }
          prod *= inner;
        }
        sum += prod;
      } else {
        cd prod = 1.0;
        for (std::size_t j = 0; j < s; ++j) {
          const Int step = mul_mod(node, rule[j], n);
          Int r = 0;
          cd inner = 1.0;
          for (Int a = 1; a <= radius; ++a) {
            r += step;
            if (r >= n) r -= n;
            inner += zpow[static_cast<std::size_t>(a)] * (2.0 * table[static_cast<std::size_t>(r)]);
          }
          prod *= inner;
        }
        sum += prod;
      }
    }
    partial[b] = sum;
  });

  const cd total = tree_reduce(partial, 0, blocks, [](cd& acc, const cd& x) { acc += x; });
  return total / static_cast<double>(n);
}

FloatEnumerator fft_enumerator(const LatticeRule& rule, BoxRadius d, Exec exec) {
  using cd = std::complex<double>;
  const auto width = static_cast<std::size_t>(d.value()) * rule.dimension() + 1;
  const std::size_t len = next_power_of_two(width);

  // Sample at e^{-2 pi i m / L} so that the samples form the forward DFT of
  // the coefficient list. Real coefficients give W(conj z) = conj W(z), so
  // only m = 0..L/2 are evaluated.
  std::vector<cd> data(len);
  for (std::size_t m = 0; m <= len / 2; ++m) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(len);
    const cd w = evaluate_W_at(rule, d, cd(std::cos(angle), std::sin(angle)), exec);
    data[m] = std::conj(w);
    if (m != 0 && m != len - m) data[len - m] = w;
  }
  fft_radix2(data, /*inverse=*/true);

  FloatEnumerator fe{rule, d, std::vector<double>(width), 0.0, 0.0};
  for (std::size_t a = 0; a < len; ++a) {
    if (a < width) {
      const double c = data[a].real();
      fe.coeffs[a] = c;
      fe.max_residual = std::max(fe.max_residual, std::abs(c - std::nearbyint(c)));
      fe.padding_residual = std::max(fe.padding_residual, std::abs(data[a].imag()));
    } else {
      fe.padding_residual = std::max(fe.padding_residual, std::abs(data[a]));
    }
  }
  return fe;
}

double default_tolerance(const LatticeRule& rule, BoxRadius d) {
  const double side = static_cast<double>(2 * d.value() + 1);
  const double points = std::pow(side, static_cast<double>(rule.dimension()));
  return 1e-6 * std::max(1.0, points / static_cast<double>(rule.modulus()));
}

WeightEnumerator round_coeffs(const FloatEnumerator& fe, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rounding tolerance must be positive");
  }
  if (fe.padding_residual > tol) {
    throw Error(ErrorCode::ResidualTooLarge,
                "padding residual " + std::to_string(fe.padding_residual) +
                    " exceeds tolerance " + std::to_string(tol));
  }
  // 2^63 as a double; anything at or above it cannot be stored.
  constexpr double kLimit = 9223372036854775808.0;
  std::vector<Int> coeffs;
  coeffs.reserve(fe.coeffs.size());
  double residual = 0.0;
  for (std::size_t a = 0; a < fe.coeffs.size(); ++a) {
    const double c = fe.coeffs[a];
    const double r = std::nearbyint(c);
    const double dist = std::abs(c - r);
    if (!(dist <= tol)) {
      throw Error(ErrorCode::ResidualTooLarge,
                  "coefficient " + std::to_string(a) + " = " + std::to_string(c) +
                      " is not within " + std::to_string(tol) + " of an integer");
    }
    if (std::abs(r) >= kLimit) {
      throw Error(ErrorCode::CoefficientOverflow, "coefficient does not fit in 63 bits");
    }
    residual = std::max(residual, dist);
    coeffs.push_back(static_cast<Int>(r));
  }
  WeightEnumerator w{fe.rule, fe.d, std::move(coeffs), std::max(residual, fe.padding_residual)};
  w.check_invariants();
  return w;
}

}  // namespace latqd
