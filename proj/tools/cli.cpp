#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "splitter/errors.hpp"
#include "splitter/existence.hpp"
#include "splitter/quasiperfect.hpp"
#include "splitter/set_factorization.hpp"
#include "splitter/set_io.hpp"
#include "splitter/splitter_core.hpp"

namespace splitter::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kLargeSet = 10000;
constexpr const char* kBoundEnv = "SPLITTER_ORACLE_BOUND";

struct Settings {
  std::string format = "text";
  u64 oracle_bound = ExistenceOptions{}.oracle_bound;
  unsigned jobs = 1;
  bool timing = false;
  bool allow_singular = false;
  std::string config;
};

u64 parse_setting(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("config: '" + key + "' expects a nonnegative integer, got '" + value + "'");
  }
}

void apply_env(Settings& s) {
  if (const char* v = std::getenv(kBoundEnv); v && *v) s.oracle_bound = parse_setting(kBoundEnv, v);
}

// key=value lines; '#' starts a comment.
void apply_config(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto strip = [](std::string t) {
      const auto a = t.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      return t.substr(a, t.find_last_not_of(" \t\r") - a + 1);
    };
    if (eq == std::string::npos) {
      if (!strip(line).empty()) throw InvalidInput("config: expected key=value, got '" + strip(line) + "'");
      continue;
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key == "oracle_bound") {
      s.oracle_bound = parse_setting(key, value);
    } else if (key == "jobs") {
      s.jobs = static_cast<unsigned>(parse_setting(key, value));
    } else if (key == "format") {
      s.format = value;
    } else {
      throw InvalidInput("config: unknown key '" + key + "'");
    }
  }
}

json cert_json(const Verdict& v) {
  json c = json::object();
  for (const auto& e : v.certificate) {
    std::visit([&](const auto& x) { c[e.name] = x; }, e.value);
  }
  return c;
}

json verdict_json(const Verdict& v) {
  json j;
  if (v.decision == Decision::undecided) {
    j["exists"] = nullptr;
  } else {
    j["exists"] = v.exists();
  }
  j["decision"] = to_string(v.decision);
  j["rule"] = v.rule;
  j["certificate"] = cert_json(v);
  return j;
}

std::string cert_value_text(const CertValue& value) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else {
          return std::to_string(x);
        }
      },
      value);
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << "verdict: " << to_string(v.decision) << "\n";
  os << "rule: " << v.rule << "\n";
  for (const auto& e : v.certificate) os << "  " << e.name << " = " << cert_value_text(e.value) << "\n";
  return os.str();
}

std::string chains_text(const GeneratorForm& gen) {
  std::ostringstream os;
  os << gen.base << "^(";
  if (gen.offset) os << gen.offset << " + ";
  if (gen.exponent_chains.empty()) os << "0";
  for (std::size_t i = 0; i < gen.exponent_chains.size(); ++i) {
    if (i) os << " + ";
    os << gen.exponent_chains[i].step << "*i" << i;
  }
  os << ")";
  for (std::size_t i = 0; i < gen.exponent_chains.size(); ++i) {
    os << ", i" << i << " in [0," << gen.exponent_chains[i].count - 1 << "]";
  }
  return os.str();
}

json generator_json(const GeneratorForm& gen) {
  json j;
  j["base"] = gen.base;
  j["modulus"] = gen.modulus;
  j["offset"] = gen.offset;
  json chains = json::array();
  for (const Chain& c : gen.exponent_chains) chains.push_back({{"step", c.step}, {"count", c.count}});
  j["exponent_chains"] = chains;
  return j;
}

std::vector<u64> parse_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || item.front() == '-') throw InvalidInput("--set: '" + item + "' is not a nonnegative integer");
    out.push_back(v);
  }
  return out;
}

SetFormat set_format(const std::string& name) { return name == "json" ? SetFormat::json : SetFormat::text; }

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void emit(std::ostream& out, const Settings& s, json doc, const std::string& text, const Timer& timer) {
  if (s.format == "json") {
    if (s.timing) doc["timing"] = {{"elapsed_ms", timer.ms()}};
    out << doc.dump(2) << "\n";
  } else {
    out << text;
    if (s.timing) out << "elapsed_ms: " << timer.ms() << "\n";
  }
}

ExistenceOptions existence_options(const Settings& s) {
  ExistenceOptions o;
  o.oracle_bound = s.oracle_bound;
  o.allow_singular = s.allow_singular;
  return o;
}

GroupCtx make_ctx(u64 q, std::optional<u64> g, bool table = true) {
  GroupOptions opts;
  if (!table) opts.index_table_threshold = 0;
  return GroupCtx(q, g, opts);
}

json interval_inputs(u64 q, unsigned k1, unsigned k2, const GroupCtx* ctx) {
  json in;
  in["q"] = q;
  in["k1"] = k1;
  in["k2"] = k2;
  if (ctx) in["g"] = ctx->g();
  return in;
}

// ---- commands ----

struct CheckArgs {
  u64 q = 0;
  unsigned k1 = 0;
  unsigned k2 = 0;
  std::optional<u64> g;
};

int cmd_check(const CheckArgs& a, const Settings& s, std::ostream& out) {
  Timer timer;
  const GroupCtx ctx = make_ctx(a.q, a.g);
  const Interval w(a.k1, a.k2);
  const Verdict v = check_family(ctx, w, existence_options(s));
  json doc;
  doc["command"] = "check";
  doc["inputs"] = interval_inputs(a.q, a.k1, a.k2, &ctx);
  doc["verdict"] = verdict_json(v);
  std::ostringstream text;
  text << "check q=" << a.q << " " << w.to_string() << " g=" << ctx.g() << "\n" << verdict_text(v);
  emit(out, s, doc, text.str(), timer);
  return v.decision == Decision::undecided ? kUndecided : kDecided;
}

struct ConstructArgs {
  CheckArgs window;
  std::string out_path;
  std::string set_format = "text";
};

int cmd_construct(const ConstructArgs& a, const Settings& s, std::ostream& out) {
  Timer timer;
  const GroupCtx ctx = make_ctx(a.window.q, a.window.g);
  const Interval w(a.window.k1, a.window.k2);
  const PerfectConstruction c = construct_perfect(ctx, w, existence_options(s));
  const std::size_t size = c.set.elements.size();
  const bool large = size >= kLargeSet;
  std::optional<std::string> generator_path;
  if (!a.out_path.empty()) {
    write_set_file(a.out_path, c.set, set_format(a.set_format));
    if (large && c.generator) {
      generator_path = a.out_path + ".generator.json";
      std::ofstream gen(*generator_path);
      if (!gen) throw std::runtime_error("cannot write " + *generator_path);
      gen << generator_json(*c.generator).dump(2) << "\n";
    }
  }

  json doc;
  doc["command"] = "construct";
  doc["inputs"] = interval_inputs(a.window.q, a.window.k1, a.window.k2, &ctx);
  json con;
  con["size"] = size;
  con["method"] = c.method;
  if (c.generator) con["generator"] = generator_json(*c.generator);
  if (!a.out_path.empty()) con["file"] = a.out_path;
  if (generator_path) con["generator_file"] = *generator_path;
  if (a.out_path.empty() && (!large || !c.generator)) con["elements"] = c.set.elements;
  doc["construction"] = con;

  std::ostringstream text;
  text << "construct q=" << a.window.q << " " << w.to_string() << " g=" << ctx.g() << "\n";
  text << "size: " << size << "\n";
  text << "method: " << c.method << "\n";
  if (c.generator) text << "generator: {" << chains_text(*c.generator) << "}\n";
  if (!a.out_path.empty()) text << "written: " << a.out_path << "\n";
  if (generator_path) text << "generator written: " << *generator_path << "\n";
  if (a.out_path.empty() && (!large || !c.generator)) {
    text << "elements:";
    for (u64 e : c.set.elements) text << " " << e;
    text << "\n";
  }
  emit(out, s, doc, text.str(), timer);
  return kDecided;
}

struct VerifyArgs {
  std::string set_path;
  std::optional<u64> modulus;
  std::optional<unsigned> k1;
  std::optional<unsigned> k2;
};

int cmd_verify(const VerifyArgs& a, const Settings& s, std::ostream& out) {
  Timer timer;
  const SetFile file = read_set_file(a.set_path);
  const auto modulus = a.modulus ? a.modulus : file.modulus;
  const auto k1 = a.k1 ? a.k1 : file.k1;
  const auto k2 = a.k2 ? a.k2 : file.k2;
  if (!modulus || !k1 || !k2) {
    throw InvalidInput("verify: modulus, k1 and k2 must come from the set file header or flags");
  }
  const Interval w(*k1, *k2);
  const Classification c = classify(*modulus, w, file.elements);
  json doc;
  doc["command"] = "verify";
  doc["inputs"] = {{"set", a.set_path}, {"modulus", *modulus}, {"k1", *k1}, {"k2", *k2}};
  doc["classification"] = {{"kind", to_string(c.kind)}, {"singular", c.singular}, {"size", file.elements.size()}};
  std::ostringstream text;
  text << "verify N=" << *modulus << " " << w.to_string() << " size=" << file.elements.size() << "\n";
  text << "kind: " << to_string(c.kind) << "\n";
  text << "singular: " << (c.singular ? "yes" : "no") << "\n";
  emit(out, s, doc, text.str(), timer);
  return kDecided;
}

struct SearchArgs {
  u64 min = 0;
  u64 max = 0;
  unsigned k1 = 0;
  unsigned k2 = 0;
  std::string results_path;
  bool only_exists = false;
};

struct SearchRecord {
  u64 q = 0;
  Verdict verdict;
  std::string error;
};

int cmd_search(const SearchArgs& a, const Settings& s, std::ostream& out) {
  Timer timer;
  if (a.min > a.max) throw InvalidInput("search: --min must not exceed --max");
  if (s.jobs == 0) throw InvalidInput("search: --jobs must be at least 1");
  const Interval w(a.k1, a.k2);
  std::vector<u64> primes;
  for (u64 q = std::max<u64>(a.min, 3); q <= a.max; ++q) {
    if (q % 2 == 0 || (q - 1) % w.size() != 0 || !is_prime(q)) continue;
    if (!s.allow_singular && is_singular(q, w)) continue;
    primes.push_back(q);
  }

  std::vector<std::optional<SearchRecord>> slots(primes.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  const ExistenceOptions options = existence_options(s);
  auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      SearchRecord r;
      r.q = primes[i];
      try {
        r.verdict = check_family(make_ctx(r.q, std::nullopt, false), w, options);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(r);
      }
      ready.notify_one();
    }
  };
  const unsigned workers = std::min<std::size_t>(s.jobs, std::max<std::size_t>(primes.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);

  std::ofstream results;
  if (!a.results_path.empty()) {
    results.open(a.results_path, std::ios::trunc);
    if (!results) throw std::runtime_error("cannot write " + a.results_path);
  }

  json doc;
  doc["command"] = "search";
  doc["inputs"] = {{"min", a.min}, {"max", a.max}, {"k1", a.k1}, {"k2", a.k2}};
  json records = json::array();
  std::size_t undecided = 0;
  std::size_t failures = 0;
  std::size_t matched = 0;
  const bool stream_text = s.format != "json";
  if (stream_text) out << "search " << w.to_string() << " q in [" << a.min << "," << a.max << "]\n";

  // Merger: sole writer, emits in ascending q as the prefix completes.
  for (std::size_t i = 0; i < primes.size(); ++i) {
    SearchRecord r;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value(); });
      r = std::move(*slots[i]);
      slots[i].reset();
    }
    json rec;
    rec["q"] = r.q;
    if (!r.error.empty()) {
      ++failures;
      rec["error"] = r.error;
    } else {
      if (r.verdict.decision == Decision::undecided) ++undecided;
      rec["verdict"] = verdict_json(r.verdict);
    }
    const bool keep = !a.only_exists || (r.error.empty() && r.verdict.exists());
    if (!keep) continue;
    ++matched;
    if (results.is_open()) results << rec.dump() << "\n";
    if (stream_text) {
      out << r.q << " ";
      if (!r.error.empty()) {
        out << "error " << r.error << "\n";
      } else {
        out << to_string(r.verdict.decision) << " " << r.verdict.rule;
        if (const CertValue* c = r.verdict.find("condition"); c && std::holds_alternative<i64>(*c)) {
          out << " condition=" << std::get<i64>(*c);
        }
        out << "\n";
      }
    } else {
      records.push_back(std::move(rec));
    }
  }
  for (auto& t : pool) t.join();

  if (stream_text) {
    out << "primes: " << primes.size() << " reported: " << matched << "\n";
    if (s.timing) out << "elapsed_ms: " << timer.ms() << "\n";
  } else {
    doc["results"] = records;
    if (s.timing) doc["timing"] = {{"elapsed_ms", timer.ms()}};
    out << doc.dump(2) << "\n";
  }
  if (failures) return kInternalFailure;
  return undecided ? kUndecided : kDecided;
}

struct FactorArgs {
  u64 modulus = 0;
  std::string set;
  u64 p = 0;
  std::string complement_path;
};

int cmd_factor_test(const FactorArgs& a, const Settings& s, std::ostream& out) {
  Timer timer;
  const std::vector<u64> set = parse_list(a.set);
  const DirectFactorResult r = direct_factor_test(set, a.modulus, a.p);
  std::optional<ComplementFactor> complement;
  if (r.is_direct_factor && r.labeling) complement = build_complement(*r.labeling, a.modulus);
  if (!a.complement_path.empty()) {
    if (!complement) throw InvalidInput("factor-test: no complement to write, the set is not a direct factor");
    std::ofstream f(a.complement_path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + a.complement_path);
    f << "# modulus=" << a.modulus << "\n";
    for (u64 e : complement->elements) f << e << "\n";
  }

  json doc;
  doc["command"] = "factor-test";
  doc["inputs"] = {{"modulus", a.modulus}, {"set", set}, {"p", a.p}};
  json res;
  res["direct_factor"] = r.is_direct_factor;
  res["n"] = r.n;
  res["v_p(N)"] = r.a;
  res["levels"] = r.levels;
  if (complement) {
    json chains = json::array();
    for (const Chain& c : complement->chains) chains.push_back({{"step", c.step}, {"count", c.count}});
    res["complement_chains"] = chains;
    if (complement->elements.size() < kLargeSet) res["complement"] = complement->elements;
  }
  doc["result"] = res;

  std::ostringstream text;
  text << "factor-test N=" << a.modulus << " p=" << a.p << " |A|=" << set.size() << "\n";
  text << "direct factor: " << (r.is_direct_factor ? "yes" : "no") << "\n";
  text << "levels:";
  for (unsigned l : r.levels) text << " " << l;
  text << "\n";
  if (complement && complement->elements.size() < kLargeSet) {
    text << "complement:";
    for (u64 e : complement->elements) text << " " << e;
    text << "\n";
  }
  if (!a.complement_path.empty()) text << "written: " << a.complement_path << "\n";
  emit(out, s, doc, text.str(), timer);
  return kDecided;
}

struct QuasiArgs {
  u64 k = 0;
  u64 m = 0;
  std::string family = "zero-k";
};

int cmd_quasi(const QuasiArgs& a, const Settings& s, std::ostream& out) {
  Timer timer;
  const QuasiVerdict v = a.family == "zero-k" ? no_quasi_B0k_km(a.k, a.m) : lift_interval(a.k, a.m);
  json doc;
  doc["command"] = "quasi";
  doc["inputs"] = {{"k", a.k}, {"m", a.m}, {"family", a.family}};
  json w = json::object();
  for (const auto& [name, value] : v.witnesses) w[name] = value;
  doc["verdict"] = {{"applicable", v.applicable}, {"conclusion", to_string(v.conclusion)}, {"rule", v.rule},
                    {"witnesses", w}};
  std::ostringstream text;
  text << "quasi k=" << a.k << " m=" << a.m << " family=" << a.family << "\n";
  text << "applicable: " << (v.applicable ? "yes" : "no") << "\n";
  text << "conclusion: " << to_string(v.conclusion) << "\n";
  text << "rule: " << v.rule << "\n";
  for (const auto& [name, value] : v.witnesses) text << "  " << name << " = " << value << "\n";
  emit(out, s, doc, text.str(), timer);
  return kDecided;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect splitter sets: existence, construction, verification"};
  app.name("splitter");
  app.require_subcommand(1);

  Settings flags;
  std::optional<u64> bound_flag;
  std::optional<unsigned> jobs_flag;
  std::optional<std::string> format_flag;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_flag, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--oracle-bound", bound_flag, "Largest modulus handed to the exact-cover oracle");
    sub->add_option("--config", flags.config, "key=value file (oracle_bound, jobs, format)");
    sub->add_flag("--timing", flags.timing, "Report elapsed time");
  };

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "Decide existence of a perfect B[-k1,k2](q) set");
  c_check->add_option("--q", check.q, "Odd prime modulus")->required();
  c_check->add_option("--k1", check.k1)->required();
  c_check->add_option("--k2", check.k2)->required();
  c_check->add_option("--g", check.g, "Primitive root (default: smallest)");
  c_check->add_flag("--allow-singular", flags.allow_singular, "Decide singular cases by exhaustive search");
  add_common(c_check);

  ConstructArgs construct;
  auto* c_construct = app.add_subcommand("construct", "Build a verified perfect set");
  c_construct->add_option("--q", construct.window.q)->required();
  c_construct->add_option("--k1", construct.window.k1)->required();
  c_construct->add_option("--k2", construct.window.k2)->required();
  c_construct->add_option("--g", construct.window.g);
  c_construct->add_option("--out", construct.out_path, "Set file to write");
  c_construct->add_option("--set-format", construct.set_format)->check(CLI::IsMember({"text", "json"}));
  c_construct->add_flag("--allow-singular", flags.allow_singular);
  add_common(c_construct);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Classify a set file");
  c_verify->add_option("--set", verify.set_path)->required();
  c_verify->add_option("--modulus", verify.modulus);
  c_verify->add_option("--k1", verify.k1);
  c_verify->add_option("--k2", verify.k2);
  add_common(c_verify);

  SearchArgs search;
  auto* c_search = app.add_subcommand("search", "Check every admissible prime in a range");
  c_search->add_option("--min", search.min)->required();
  c_search->add_option("--max", search.max)->required();
  c_search->add_option("--k1", search.k1)->required();
  c_search->add_option("--k2", search.k2)->required();
  c_search->add_option("--jobs", jobs_flag, "Worker threads");
  c_search->add_option("--results", search.results_path, "JSON-lines results file");
  c_search->add_flag("--only-exists", search.only_exists, "Report only primes where a set exists");
  c_search->add_flag("--allow-singular", flags.allow_singular);
  add_common(c_search);

  FactorArgs factor;
  auto* c_factor = app.add_subcommand("factor-test", "Direct-factor test for a subset of Z_N");
  c_factor->add_option("--modulus", factor.modulus)->required();
  c_factor->add_option("--set", factor.set, "Comma-separated elements")->required();
  c_factor->add_option("--p", factor.p)->required();
  c_factor->add_option("--complement", factor.complement_path, "File for the complementer factor");
  add_common(c_factor);

  QuasiArgs quasi;
  auto* c_quasi = app.add_subcommand("quasi", "Quasi-perfect nonexistence criteria");
  c_quasi->add_option("--k", quasi.k)->required();
  c_quasi->add_option("--m", quasi.m)->required();
  c_quasi->add_option("--family", quasi.family)->check(CLI::IsMember({"zero-k", "shifted"}));
  add_common(c_quasi);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kDecided : kInvalidInput;
  }

  try {
    Settings s;
    apply_env(s);
    if (!flags.config.empty()) apply_config(s, flags.config);
    if (bound_flag) s.oracle_bound = *bound_flag;
    if (jobs_flag) s.jobs = *jobs_flag;
    if (format_flag) s.format = *format_flag;
    if (s.format != "text" && s.format != "json") throw InvalidInput("format must be text or json");
    s.timing = flags.timing;
    s.allow_singular = flags.allow_singular;

    if (c_check->parsed()) return cmd_check(check, s, out);
    if (c_construct->parsed()) return cmd_construct(construct, s, out);
    if (c_verify->parsed()) return cmd_verify(verify, s, out);
    if (c_search->parsed()) return cmd_search(search, s, out);
    if (c_factor->parsed()) return cmd_factor_test(factor, s, out);
    if (c_quasi->parsed()) return cmd_quasi(quasi, s, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const BoundExceeded& e) {
    err << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const ConsistencyError& e) {
    err << "internal failure: " << e.what() << "\n";
    return kInternalFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kInternalFailure;
  }
  return kInvalidInput;
}

}  // namespace splitter::cli
