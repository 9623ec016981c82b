#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "bench.hpp"
#include "document.hpp"
#include "latqd/degree.hpp"
#include "latqd/enumerators.hpp"
#include "latqd/parallel.hpp"
#include "latqd/search.hpp"
#include "verify.hpp"

namespace latqd::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string format = "json";
  std::optional<unsigned> threads;
  std::string out_path;
  bool no_timing = false;
};

struct RuleArgs {
  Int n = 0;
  std::string g;
  std::optional<Int> korobov_a;
  std::optional<Int> s;
};

Int parse_int(std::string_view text) {
  Int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(ErrorCode::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<Int> parse_list(const std::string& text) {
  std::vector<Int> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

LatticeRule make_rule(const RuleArgs& a) {
  if (a.korobov_a) {
    if (!a.g.empty()) throw Error(ErrorCode::InvalidArgument, "--g and --korobov-a are exclusive");
    if (!a.s) throw Error(ErrorCode::InvalidArgument, "--korobov-a needs --s");
    if (*a.s < 1) throw Error(ErrorCode::EmptyGenerator, "--s must be at least 1");
    if (a.n < 2) throw Error(ErrorCode::ModulusTooSmall, "modulus must be at least 2");
    return validate_rule(a.n, korobov_vector(a.n, *a.korobov_a, static_cast<std::size_t>(*a.s)));
  }
  if (a.g.empty()) throw Error(ErrorCode::InvalidArgument, "--g is required");
  return validate_rule(a.n, parse_list(a.g));
}

unsigned resolve_threads(const Common& c, unsigned fallback) {
  if (const char* env = std::getenv("LATQD_THREADS"); env && *env) {
    const Int v = parse_int(env);
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "LATQD_THREADS must be positive");
    return static_cast<unsigned>(v);
  }
  if (c.threads) {
    if (*c.threads < 1) throw Error(ErrorCode::InvalidArgument, "--threads must be positive");
    return *c.threads;
  }
  return fallback;
}

void add_common(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember(std::move(formats)));
  cmd->add_option("--threads", c.threads, "worker threads (LATQD_THREADS overrides)");
  cmd->add_option("--out", c.out_path, "also write the output to this file");
}

void add_rule(CLI::App* cmd, RuleArgs& r) {
  cmd->add_option("--n", r.n, "modulus N")->required();
  cmd->add_option("--g", r.g, "generating vector, comma separated");
  cmd->add_option("--korobov-a", r.korobov_a, "use g = (1, a, a^2, ...) mod N");
  cmd->add_option("--s", r.s, "dimension for --korobov-a");
}

Int elapsed_ns(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  out << text;
  if (!c.out_path.empty()) {
    std::ofstream file(c.out_path, std::ios::binary);
    file << text;
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.out_path);
  }
}

void emit_document(const ResultDocument& doc, const Common& c, std::ostream& out) {
  emit(c.format == "csv" ? to_csv(doc) : to_json(doc), c, out);
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ResidualTooLarge: return 3;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::CoefficientOverflow: return 4;
    case ErrorCode::InvariantViolation: return 5;
    default: return 2;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"latqd: weight enumerator and trigonometric degree of rank-1 lattice rules"};
  app.require_subcommand(1);

  // enumerate
  Common enum_common;
  RuleArgs enum_rule;
  Int enum_d = 0;
  std::string enum_engine;
  std::optional<double> enum_tol;
  auto* enumerate = app.add_subcommand("enumerate", "weight enumerator coefficients M(0..ds)");
  add_rule(enumerate, enum_rule);
  enumerate->add_option("--d", enum_d, "box radius")->required();
  enumerate->add_option("--engine", enum_engine, "brute|dp|charsum|fft")
      ->required()
      ->check(CLI::IsMember({"brute", "dp", "charsum", "fft"}));
  enumerate->add_option("--tol", enum_tol, "rounding tolerance for charsum/fft");
  enumerate->add_flag("--no-timing", enum_common.no_timing, "omit the timing block");
  add_common(enumerate, enum_common, {"json", "csv"});

  // degree
  Common deg_common;
  RuleArgs deg_rule;
  std::optional<Int> deg_dmax;
  std::string deg_method = "dp";
  auto* degree = app.add_subcommand("degree", "trigonometric degree");
  add_rule(degree, deg_rule);
  degree->add_option("--dmax", deg_dmax, "box radius (default N)");
  degree->add_option("--method", deg_method, "dp|enumerator")->check(CLI::IsMember({"dp", "enumerator"}));
  degree->add_flag("--no-timing", deg_common.no_timing, "omit the timing block");
  add_common(degree, deg_common, {"json", "csv"});

  // search
  Common search_common;
  SearchSpec spec;
  std::string strategy;
  Int search_s = 0;
  auto* search = app.add_subcommand("search", "generating vector search maximizing the degree");
  search->add_option("--n", spec.modulus, "modulus N")->required();
  search->add_option("--s", search_s, "dimension")->required();
  search->add_option("--strategy", strategy, "exhaustive|korobov|random")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "korobov", "random"}));
  auto* trials_opt = search->add_option("--trials", spec.trials, "random draws");
  auto* seed_opt = search->add_option("--seed", spec.seed, "random seed");
  search->add_flag("--dedup", spec.dedup, "random: never evaluate a vector twice");
  search->add_flag("--symmetry-pruning", spec.symmetry_pruning,
                   "exhaustive: visit one representative per unit/permutation class");
  search->add_option("--budget", spec.budget, "maximum candidates");
  search->add_flag("--no-timing", search_common.no_timing, "omit the timing block");
  add_common(search, search_common, {"json", "csv"});

  // verify
  Common verify_common;
  verify_common.format = "text";
  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "cross-engine property suite on random instances");
  verify->add_option("--cases", vopt.cases, "number of random instances")->required();
  verify->add_option("--seed", vopt.seed, "random seed");
  verify->add_option("--max-n", vopt.max_n, "largest modulus");
  verify->add_option("--max-s", vopt.max_s, "largest dimension");
  verify->add_option("--max-d", vopt.max_d, "largest box radius");
  add_common(verify, verify_common, {"text", "json"});

  // bench
  Common bench_common;
  bench_common.format = "csv";
  BenchOptions bopt;
  std::string sweep;
  std::string bench_engine;
  std::string values;
  auto* bench = app.add_subcommand("bench", "scaling measurements");
  bench->add_option("--sweep", sweep, "n|s|d")->required()->check(CLI::IsMember({"n", "s", "d"}));
  bench->add_option("--engine", bench_engine, "charsum|dp-degree")
      ->required()
      ->check(CLI::IsMember({"charsum", "dp-degree"}));
  bench->add_option("--repeats", bopt.repeats, "repeats per row (median reported)");
  bench->add_option("--values", values, "comma separated sweep values");
  bench->add_option("--n", bopt.n, "fixed modulus");
  bench->add_option("--s", bopt.s, "fixed dimension");
  bench->add_option("--d", bopt.d, "fixed box radius");
  add_common(bench, bench_common, {"csv", "json"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) {
      const unsigned threads = resolve_threads(enum_common, hardware_threads());
      const LatticeRule rule = make_rule(enum_rule);
      const BoxRadius d(enum_d);
      ResultDocument doc;
      doc.command = "enumerate";
      doc.rule = rule_block(rule);
      doc.d = d.value();
      doc.engine = enum_engine;
      const auto t0 = Clock::now();
      WeightEnumerator w = [&] {
        if (enum_engine == "brute") return brute_force(rule, d);
        if (enum_engine == "dp") return residue_dp(rule, d);
        const double tol = enum_tol.value_or(default_tolerance(rule, d));
        const auto fe = enum_engine == "charsum" ? charsum(rule, d, Exec{threads})
                                                 : fft_enumerator(rule, d, Exec{threads});
        return round_coeffs(fe, tol);
      }();
      const Int ns = elapsed_ns(t0);
      doc.coefficients = w.coeffs;
      doc.residual = w.residual;
      if (!enum_common.no_timing) doc.timing = TimingBlock{ns, enum_engine};
      emit_document(doc, enum_common, out);
      return 0;
    }

    if (*degree) {
      resolve_threads(deg_common, hardware_threads());
      const LatticeRule rule = make_rule(deg_rule);
      const BoxRadius d(deg_dmax.value_or(rule.modulus()));
      ResultDocument doc;
      doc.command = "degree";
      doc.rule = rule_block(rule);
      doc.d = d.value();
      const auto t0 = Clock::now();
      TrigDegree t;
      if (deg_method == "dp") {
        doc.engine = "dp-degree";
        t = trig_degree_dp(rule, d);
      } else {
        doc.engine = "enumerator";
        t = trig_degree_from_coeffs(residue_dp(rule, d));
      }
      const Int ns = elapsed_ns(t0);
      doc.degree = degree_block(t);
      if (!deg_common.no_timing) doc.timing = TimingBlock{ns, doc.engine};
      emit_document(doc, deg_common, out);
      return 0;
    }

    if (*search) {
      spec.exec.threads = resolve_threads(search_common, hardware_threads());
      if (search_s < 1) throw Error(ErrorCode::EmptyGenerator, "--s must be at least 1");
      spec.dimension = static_cast<std::size_t>(search_s);
      spec.strategy = strategy == "exhaustive" ? SearchStrategy::Exhaustive
                      : strategy == "korobov"  ? SearchStrategy::Korobov
                                               : SearchStrategy::Random;
      if (spec.strategy == SearchStrategy::Random && (trials_opt->count() == 0 || seed_opt->count() == 0)) {
        if (trials_opt->count() == 0) throw Error(ErrorCode::TrialsZero, "random search needs --trials");
        throw Error(ErrorCode::InvalidArgument, "random search needs --seed");
      }
      if (spec.strategy != SearchStrategy::Random && (trials_opt->count() || seed_opt->count())) {
        throw Error(ErrorCode::InvalidArgument, "--trials/--seed apply to the random strategy only");
      }
      const auto t0 = Clock::now();
      const SearchResult r = run_search(spec);
      const Int ns = elapsed_ns(t0);
      ResultDocument doc;
      doc.command = "search";
      doc.rule = rule_block(r.best_rule);
      doc.engine = "dp-degree";
      doc.degree = degree_block(r.rho);
      doc.search = search_block(r, spec.strategy);
      if (!search_common.no_timing) doc.timing = TimingBlock{ns, "search-" + strategy};
      emit_document(doc, search_common, out);
      return 0;
    }

    if (*verify) {
      vopt.threads = resolve_threads(verify_common, hardware_threads());
      const auto report = run_verify(vopt);
      emit(verify_common.format == "json" ? verify_json(report) : verify_text(report), verify_common, out);
      return report.ok() ? 0 : 1;
    }

    if (*bench) {
      bopt.threads = resolve_threads(bench_common, 1);
      bopt.sweep = sweep == "n" ? BenchSweep::N : sweep == "s" ? BenchSweep::S : BenchSweep::D;
      bopt.engine = bench_engine == "charsum" ? BenchEngine::Charsum : BenchEngine::DpDegree;
      if (!values.empty()) bopt.values = parse_list(values);
      const auto report = run_bench(bopt);
      emit(bench_common.format == "json" ? bench_json(report) : bench_csv(report), bench_common, out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 2;
}

}  // namespace latqd::cli
