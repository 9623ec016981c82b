#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "latqd/errors.hpp"
#include "latqd/fft.hpp"
#include "latqd/rng.hpp"

using cd = std::complex<double>;

namespace {

std::vector<cd> naive_dft(const std::vector<cd>& x, double sign) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t a = 0; a < n; ++a) {
      const double angle = sign * 2.0 * std::numbers::pi * double(m * a % n) / double(n);
      out[m] += x[a] * cd(std::cos(angle), std::sin(angle));
    }
  }
  return out;
}

}  // namespace

TEST(Fft, NextPowerOfTwo) {
  EXPECT_EQ(latqd::next_power_of_two(1), 1u);
  EXPECT_EQ(latqd::next_power_of_two(2), 2u);
  EXPECT_EQ(latqd::next_power_of_two(5), 8u);
  EXPECT_EQ(latqd::next_power_of_two(13), 16u);
  EXPECT_EQ(latqd::next_power_of_two(16), 16u);
}

TEST(Fft, MatchesNaiveDft) {
  latqd::Xoshiro256 rng(3);
  for (std::size_t n : {1u, 2u, 4u, 8u, 32u, 128u}) {
    std::vector<cd> x(n);
    for (auto& v : x) v = cd(rng.unit() - 0.5, rng.unit() - 0.5);
    auto fwd = x;
    latqd::fft_radix2(fwd, false);
    const auto ref = naive_dft(x, -1.0);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(fwd[i] - ref[i]), 1e-12 * double(n));

    latqd::fft_radix2(fwd, true);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(fwd[i] - x[i]), 1e-13 * double(n));
  }
}

TEST(Fft, RecoversPolynomialFromRootsOfUnity) {
  // p(z) = 1 + 4 z^2 sampled at e^{-2 pi i m / 4}
  const std::vector<double> coeffs{1, 0, 4};
  std::vector<cd> samples(4);
  for (std::size_t m = 0; m < 4; ++m) {
    const cd z = std::polar(1.0, -2.0 * std::numbers::pi * double(m) / 4.0);
    samples[m] = 1.0 + 4.0 * z * z;
  }
  latqd::fft_radix2(samples, true);
  EXPECT_NEAR(samples[0].real(), 1.0, 1e-14);
  EXPECT_NEAR(samples[1].real(), 0.0, 1e-14);
  EXPECT_NEAR(samples[2].real(), 4.0, 1e-14);
  EXPECT_NEAR(std::abs(samples[3]), 0.0, 1e-14);
}

TEST(Fft, RejectsNonPowerOfTwo) {
  std::vector<cd> x(6);
  EXPECT_THROW(latqd::fft_radix2(x, false), latqd::Error);
  std::vector<cd> empty;
  EXPECT_THROW(latqd::fft_radix2(empty, true), latqd::Error);
}
