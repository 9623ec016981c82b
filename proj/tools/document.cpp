#include "document.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace latqd::cli {

namespace {

// Minimal writer that keeps insertion order and number formatting under
// our control.
class JsonWriter {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    separate();
    quoted(k);
    out_ << ':';
    after_key_ = true;
  }

  void value(Int v) { scalar(std::to_string(v)); }
  void value(bool v) { scalar(v ? "true" : "false"); }
  void value(double v) { scalar(format_double(v)); }
  void value(std::string_view v) {
    separate();
    quoted(v);
  }

  void values(const std::vector<Int>& xs) {
    begin_array();
    for (Int x : xs) value(x);
    end_array();
  }

  std::string str() const { return out_.str(); }

 private:
  void open(char c) {
    separate();
    out_ << c;
    first_ = true;
  }
  void close(char c) {
    out_ << c;
    first_ = false;
  }
  void scalar(const std::string& text) {
    separate();
    out_ << text;
  }
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_) out_ << ',';
    first_ = false;
  }
  void quoted(std::string_view s) {
    out_ << '"';
    for (char c : s) {
      if (c == '"' || c == '\\') out_ << '\\';
      out_ << c;
    }
    out_ << '"';
  }

  std::ostringstream out_;
  bool first_ = true;
  bool after_key_ = false;
};

std::vector<Int> int_list(const nlohmann::json& j) {
  std::vector<Int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::runtime_error("expected integer list");
    out.push_back(x.get<Int>());
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::runtime_error("non-finite value in document");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // keep floats recognizable as floats
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string_view strategy_name(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::Exhaustive: return "exhaustive";
    case SearchStrategy::Korobov: return "korobov";
    case SearchStrategy::Random: return "random";
  }
  return "unknown";
}

RuleBlock rule_block(const LatticeRule& rule) {
  return RuleBlock{rule.modulus(), static_cast<Int>(rule.dimension()),
                   {rule.generator().begin(), rule.generator().end()}};
}

DegreeBlock degree_block(const TrigDegree& t) {
  DegreeBlock b{t.rho, t.exact, std::nullopt};
  if (t.witness) b.witness = WitnessBlock{t.witness->k, t.witness->norm};
  return b;
}

SearchBlock search_block(const SearchResult& r, SearchStrategy strategy) {
  SearchBlock b;
  b.strategy = std::string(strategy_name(strategy));
  b.minimal_count = r.minimal_count;
  b.visited = r.visited;
  if (strategy == SearchStrategy::Korobov) b.korobov_a = r.korobov_a;
  for (const auto& c : r.runner_ups) b.runner_ups.push_back(RunnerUp{c.g, c.rho, c.minimal_count});
  return b;
}

std::string to_json(const ResultDocument& doc) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version");
  w.value(doc.schema_version);
  w.key("command");
  w.value(doc.command);
  w.key("rule");
  w.begin_object();
  w.key("N");
  w.value(doc.rule.n);
  w.key("s");
  w.value(doc.rule.s);
  w.key("g");
  w.values(doc.rule.g);
  w.end_object();
  if (doc.d) {
    w.key("d");
    w.value(*doc.d);
  }
  w.key("engine");
  w.value(doc.engine);
  if (doc.coefficients) {
    w.key("coefficients");
    w.values(*doc.coefficients);
  }
  if (doc.degree) {
    w.key("degree");
    w.begin_object();
    w.key("rho");
    w.value(doc.degree->rho);
    w.key("exact");
    w.value(doc.degree->exact);
    if (doc.degree->witness) {
      w.key("witness");
      w.begin_object();
      w.key("k");
      w.values(doc.degree->witness->k);
      w.key("norm");
      w.value(doc.degree->witness->norm);
      w.end_object();
    }
    w.end_object();
  }
  if (doc.search) {
    const auto& s = *doc.search;
    w.key("search");
    w.begin_object();
    w.key("strategy");
    w.value(s.strategy);
    w.key("minimal_count");
    w.value(s.minimal_count);
    w.key("visited");
    w.value(s.visited);
    if (s.korobov_a) {
      w.key("korobov_a");
      w.value(*s.korobov_a);
    }
    w.key("runner_ups");
    w.begin_array();
    for (const auto& r : s.runner_ups) {
      w.begin_object();
      w.key("g");
      w.values(r.g);
      w.key("rho");
      w.value(r.rho);
      w.key("minimal_count");
      w.value(r.minimal_count);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  if (doc.residual) {
    w.key("residual");
    w.value(*doc.residual);
  }
  if (doc.timing) {
    w.key("timing");
    w.begin_object();
    w.key("wall_ns");
    w.value(doc.timing->wall_ns);
    w.key("engine");
    w.value(doc.timing->engine);
    w.end_object();
  }
  w.end_object();
  return w.str() + "\n";
}

std::vector<std::pair<std::string, std::string>> flatten(const ResultDocument& doc) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto put = [&rows](std::string k, std::string v) { rows.emplace_back(std::move(k), std::move(v)); };
  auto put_list = [&put](const std::string& k, const std::vector<Int>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) put(k + "[" + std::to_string(i) + "]", std::to_string(xs[i]));
  };
  put("schema_version", doc.schema_version);
  put("command", doc.command);
  put("rule.N", std::to_string(doc.rule.n));
  put("rule.s", std::to_string(doc.rule.s));
  put_list("rule.g", doc.rule.g);
  if (doc.d) put("d", std::to_string(*doc.d));
  put("engine", doc.engine);
  if (doc.coefficients) put_list("coefficients", *doc.coefficients);
  if (doc.degree) {
    put("degree.rho", std::to_string(doc.degree->rho));
    put("degree.exact", doc.degree->exact ? "true" : "false");
    if (doc.degree->witness) {
      put_list("degree.witness.k", doc.degree->witness->k);
      put("degree.witness.norm", std::to_string(doc.degree->witness->norm));
    }
  }
  if (doc.search) {
    const auto& s = *doc.search;
    put("search.strategy", s.strategy);
    put("search.minimal_count", std::to_string(s.minimal_count));
    put("search.visited", std::to_string(s.visited));
    if (s.korobov_a) put("search.korobov_a", std::to_string(*s.korobov_a));
    for (std::size_t i = 0; i < s.runner_ups.size(); ++i) {
      const std::string prefix = "search.runner_ups[" + std::to_string(i) + "].";
      put_list(prefix + "g", s.runner_ups[i].g);
      put(prefix + "rho", std::to_string(s.runner_ups[i].rho));
      put(prefix + "minimal_count", std::to_string(s.runner_ups[i].minimal_count));
    }
  }
  if (doc.residual) put("residual", format_double(*doc.residual));
  if (doc.timing) {
    put("timing.wall_ns", std::to_string(doc.timing->wall_ns));
    put("timing.engine", doc.timing->engine);
  }
  return rows;
}

std::string to_csv(const ResultDocument& doc) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : flatten(doc)) out += k + "," + v + "\n";
  return out;
}

ResultDocument parse_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ResultDocument doc;
  doc.schema_version = j.at("schema_version").get<std::string>();
  if (doc.schema_version != kSchemaVersion) {
    throw std::runtime_error("unsupported schema_version " + doc.schema_version);
  }
  doc.command = j.at("command").get<std::string>();
  const auto& rule = j.at("rule");
  doc.rule = RuleBlock{rule.at("N").get<Int>(), rule.at("s").get<Int>(), int_list(rule.at("g"))};
  if (j.contains("d")) doc.d = j.at("d").get<Int>();
  doc.engine = j.at("engine").get<std::string>();
  if (j.contains("coefficients")) doc.coefficients = int_list(j.at("coefficients"));
  if (j.contains("degree")) {
    const auto& dj = j.at("degree");
    DegreeBlock b{dj.at("rho").get<Int>(), dj.at("exact").get<bool>(), std::nullopt};
    if (dj.contains("witness")) {
      b.witness = WitnessBlock{int_list(dj.at("witness").at("k")), dj.at("witness").at("norm").get<Int>()};
    }
    doc.degree = b;
  }
  if (j.contains("search")) {
    const auto& sj = j.at("search");
    SearchBlock b;
    b.strategy = sj.at("strategy").get<std::string>();
    b.minimal_count = sj.at("minimal_count").get<Int>();
    b.visited = sj.at("visited").get<Int>();
    if (sj.contains("korobov_a")) b.korobov_a = sj.at("korobov_a").get<Int>();
    for (const auto& r : sj.at("runner_ups")) {
      b.runner_ups.push_back(RunnerUp{int_list(r.at("g")), r.at("rho").get<Int>(),
                                      r.at("minimal_count").get<Int>()});
    }
    doc.search = b;
  }
  if (j.contains("residual")) doc.residual = j.at("residual").get<double>();
  if (j.contains("timing")) {
    const auto& t = j.at("timing");
    doc.timing = TimingBlock{t.at("wall_ns").get<Int>(), t.at("engine").get<std::string>()};
  }
  return doc;
}

}  // namespace latqd::cli
