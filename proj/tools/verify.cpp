#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "document.hpp"
#include "latqd/degree.hpp"
#include "latqd/enumerators.hpp"
#include "latqd/errors.hpp"
#include "latqd/rng.hpp"

namespace latqd::cli {

namespace {

constexpr Int kMaxBoxPoints = 1'000'000;

const char* const kProperties[] = {
    "oracle-equivalence", "fft-padding",        "enumerator-invariants",
    "point-evaluation",   "symmetry",           "degree-consistency",
};
constexpr std::size_t kPropertyCount = std::size(kProperties);

struct Instance {
  Int n;
  std::vector<Int> g;
  Int d;
};

Int box_size(Int d, std::size_t s) {
  Int total = 1;
  for (std::size_t j = 0; j < s; ++j) {
    total *= 2 * d + 1;
    if (total > kMaxBoxPoints) return kMaxBoxPoints + 1;
  }
  return total;
}

Instance draw(Xoshiro256& rng, const VerifyOptions& o) {
  Instance in;
  in.n = rng.between(2, std::max<Int>(2, o.max_n));
  auto s = static_cast<std::size_t>(rng.between(1, std::max<Int>(1, o.max_s)));
  in.d = rng.between(1, std::max<Int>(1, o.max_d));
  while (in.d > 1 && box_size(in.d, s) > kMaxBoxPoints) --in.d;
  while (s > 1 && box_size(in.d, s) > kMaxBoxPoints) --s;
  in.g.resize(s);
  for (auto& x : in.g) x = rng.between(1, in.n - 1);
  return in;
}

std::string join(const std::vector<Int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string show(const std::vector<Int>& xs) { return "[" + join(xs) + "]"; }

WeightEnumerator dp_engine(const LatticeRule& rule, BoxRadius d) {
  auto w = residue_dp(rule, d);
#ifdef LATQD_VERIFY_FAULT
  if (rule.modulus() % 2 == 0) w.coeffs.back() += 2;
#endif
  return w;
}

// Returns an empty string on success, otherwise a description.
using Check = std::string;

Check oracle_equivalence(const LatticeRule& rule, BoxRadius d, unsigned threads) {
  const double tol = default_tolerance(rule, d);
  const auto brute = brute_force(rule, d).coeffs;
  const auto dp = dp_engine(rule, d).coeffs;
  if (dp != brute) return "residue_dp " + show(dp) + " != brute_force " + show(brute);
  try {
    const auto cs = round_coeffs(charsum(rule, d, Exec{threads}), tol).coeffs;
    if (cs != brute) return "charsum " + show(cs) + " != brute_force " + show(brute);
    const auto ff = round_coeffs(fft_enumerator(rule, d, Exec{threads}), tol).coeffs;
    if (ff != brute) return "fft " + show(ff) + " != brute_force " + show(brute);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Check fft_padding(const LatticeRule& rule, BoxRadius d, unsigned threads) {
  const auto fe = fft_enumerator(rule, d, Exec{threads});
  const double tol = default_tolerance(rule, d);
  if (fe.padding_residual > tol) {
    return "padding residual " + format_double(fe.padding_residual) + " > " + format_double(tol);
  }
  return {};
}

Check enumerator_invariants(const LatticeRule& rule, BoxRadius d) {
  const auto w = dp_engine(rule, d);
  try {
    w.check_invariants();
  } catch (const Error& e) {
    return e.what();
  }
  const Int total = std::accumulate(w.coeffs.begin(), w.coeffs.end(), Int{0});
  if (eval_poly(w, 1.0).real() != static_cast<double>(total)) return "W(1) != sum of coefficients";
  return {};
}

Check point_evaluation(const LatticeRule& rule, BoxRadius d, double theta, unsigned threads) {
  const auto w = brute_force(rule, d);
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  const double scale = eval_poly(w, 1.0).real();
  const double err = std::abs(evaluate_W_at(rule, d, z, Exec{threads}) - eval_poly(w, z));
  if (err > 1e-8 * scale) return "|W(z) - poly(z)| = " + format_double(err);
  return {};
}

Check symmetry(const LatticeRule& rule, BoxRadius d, Int unit) {
  const auto base = dp_engine(rule, d).coeffs;
  std::vector<Int> g(rule.generator().begin(), rule.generator().end());
  const Int n = rule.modulus();

  auto rotated = g;
  std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  if (brute_force(LatticeRule(n, rotated), d).coeffs != base) return "coordinate permutation";

  auto reflected = g;
  reflected[0] = n - reflected[0];
  if (brute_force(LatticeRule(n, reflected), d).coeffs != base) return "reflection g_1 -> N - g_1";

  if (dp_engine(apply_unit(rule, unit), d).coeffs != base) {
    return "unit u = " + std::to_string(unit);
  }
  return {};
}

Check degree_consistency(const LatticeRule& rule, BoxRadius d) {
  const auto t = trig_degree(rule);
  if (!t.exact || !t.witness) return "trig_degree not exact";
  const auto& w = *t.witness;
  if (rule.residue(w.k) != 0 || w.norm != t.rho + 1 || l1_norm(w.k) != w.norm) {
    return "unsound witness " + show(w.k);
  }
  if (t.rho > rule.modulus() - 1) return "rho exceeds N - 1";
  const auto from_coeffs = trig_degree_from_coeffs(brute_force(rule, d));
  if (from_coeffs.exact && from_coeffs.rho != t.rho) {
    return "dp rho " + std::to_string(t.rho) + " != coefficient rho " + std::to_string(from_coeffs.rho);
  }
  const BoxRadius wide(t.rho + 1);
  if (box_size(wide.value(), rule.dimension()) <= kMaxBoxPoints) {
    const auto check = trig_degree_from_coeffs(brute_force(rule, wide));
    if (check.rho != t.rho) return "coefficient rho at d = rho + 1 disagrees";
  }
  return {};
}

Int draw_unit(Xoshiro256& rng, Int n) {
  for (;;) {
    const Int u = rng.between(1, n - 1);
    if (std::gcd(u, n) == 1) return u;
  }
}

bool smaller(const VerifyFailure& a, const VerifyFailure& b) {
  const auto key = [](const VerifyFailure& f) {
    return std::tuple(box_size(f.d, f.g.size()), f.n, f.g.size(), f.d);
  };
  return key(a) < key(b);
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.cases < 1) throw Error(ErrorCode::InvalidArgument, "--cases must be at least 1");
  if (options.max_n < 2 || options.max_s < 1 || options.max_d < 1) {
    throw Error(ErrorCode::InvalidArgument, "--max-n >= 2, --max-s >= 1 and --max-d >= 1 required");
  }
  VerifyReport report;
  report.options = options;
  for (const char* name : kProperties) report.properties.push_back(PropertyTally{name, 0, 0});

  Xoshiro256 rng(options.seed);
  for (Int c = 0; c < options.cases; ++c) {
    const Instance in = draw(rng, options);
    const double theta = 2.0 * std::numbers::pi * rng.unit();
    const Int unit = draw_unit(rng, in.n);
    const LatticeRule rule(in.n, in.g);
    const BoxRadius d(in.d);

    const Check results[kPropertyCount] = {
        oracle_equivalence(rule, d, options.threads),
        fft_padding(rule, d, options.threads),
        enumerator_invariants(rule, d),
        point_evaluation(rule, d, theta, options.threads),
        symmetry(rule, d, unit),
        degree_consistency(rule, d),
    };
    for (std::size_t p = 0; p < kPropertyCount; ++p) {
      if (results[p].empty()) {
        ++report.properties[p].passed;
        continue;
      }
      ++report.properties[p].failed;
      VerifyFailure f{kProperties[p], in.n, in.g, in.d, results[p]};
      if (!report.failure || smaller(f, *report.failure)) report.failure = std::move(f);
    }
    ++report.cases;
  }
  return report;
}

std::string verify_text(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& p : report.properties) {
    out << p.name << ": " << (p.failed == 0 ? "PASS" : "FAIL") << " (" << p.passed << "/"
        << p.passed + p.failed << ")\n";
  }
  if (report.failure) {
    const auto& f = *report.failure;
    out << "minimal failing instance: " << f.property << " --n " << f.n << " --g " << join(f.g)
        << " --d " << f.d << " : " << f.detail << "\n";
    out << "verify: FAIL (" << report.cases << " cases)\n";
  } else {
    out << "verify: PASS (" << report.cases << " cases)\n";
  }
  return out.str();
}

std::string verify_json(const VerifyReport& report) {
  const auto& o = report.options;
  std::ostringstream out;
  out << "{\"schema_version\":\"" << kSchemaVersion << "\",\"command\":\"verify\""
      << ",\"seed\":" << o.seed << ",\"cases\":" << report.cases << ",\"max_n\":" << o.max_n
      << ",\"max_s\":" << o.max_s << ",\"max_d\":" << o.max_d << ",\"properties\":[";
  for (std::size_t i = 0; i < report.properties.size(); ++i) {
    const auto& p = report.properties[i];
    if (i) out << ',';
    out << "{\"name\":\"" << p.name << "\",\"passed\":" << p.passed << ",\"failed\":" << p.failed << '}';
  }
  out << "],\"status\":\"" << (report.ok() ? "PASS" : "FAIL") << '"';
  if (report.failure) {
    const auto& f = *report.failure;
    out << ",\"failure\":{\"property\":\"" << f.property << "\",\"N\":" << f.n << ",\"g\":["
        << join(f.g) << "],\"d\":" << f.d << '}';
  }
  out << "}\n";
  return out.str();
}

}  // namespace latqd::cli
