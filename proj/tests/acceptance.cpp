// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "splitter/cyclotomic.hpp"
#include "splitter/errors.hpp"
#include "splitter/existence.hpp"
#include "splitter/quasiperfect.hpp"
#include "splitter/set_factorization.hpp"

using namespace splitter;

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) detail << what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<u64> power_set(const GroupCtx& ctx, const std::vector<Chain>& chains, u64 offset = 0) {
  std::vector<u64> out;
  for (u64 e : expand_chains(chains, ctx.q() - 1)) out.push_back(ctx.power((e + offset) % (ctx.q() - 1)));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_perfect(u64 q, const Interval& w, const std::vector<u64>& b) {
  return classify(q, w, b).kind == SplitterKind::perfect;
}

const std::vector<std::pair<unsigned, unsigned>> kTable = {{0, 2}, {2, 2}, {1, 3}, {0, 3}, {0, 5}, {0, 7}, {0, 11},
                                                            {3, 3}, {5, 5}, {7, 7}, {2, 4}, {4, 4}, {3, 5}, {2, 6},
                                                            {1, 7}, {1, 5}};

template <class F>
void timed(Check& c, double limit, const std::string& label, F&& body) {
  const auto t = Clock::now();
  body();
  const double s = seconds_since(t);
  c.expect(s < limit, label + " took " + std::to_string(s) + " s; ");
}

// ---- criteria ----

Check worked_examples() {
  Check c;
  timed(c, 1, "q=421", [&] {
    const auto a = reduce_to_factorization(GroupCtx(421), Interval(0, 5));
    c.expect(a == std::vector<u64>{0, 1, 404, 2, 278}, "q=421 reduced set; ");
    c.expect(direct_factor_test(a, 420, 5).is_direct_factor, "q=421 direct factor; ");
  });
  timed(c, 1, "q=103", [&] {
    c.expect(!direct_factor_test(reduce_to_factorization(GroupCtx(103), Interval(0, 3)), 102, 3).is_direct_factor,
             "q=103 splits; ");
  });
  timed(c, 1, "q=97", [&] {
    const GroupCtx ctx(97);
    c.expect(check_family(ctx, Interval(4, 4)).exists(), "q=97 [-4,4]; ");
    c.expect(check_family(ctx, Interval(3, 5)).decision == Decision::not_exists, "q=97 [-3,5]; ");
  });
  timed(c, 1, "q=12721", [&] {
    const GroupCtx ctx(12721);
    const Verdict v = check_family(ctx, Interval(3, 5));
    c.expect(v.exists() && v.integer("ind(6)") == 3504 && v.integer("ind(16)") == 6280 &&
                 v.integer("q-1") == 12720 && v.integer("index<6,16>") == 8 && v.integer("ind(4)") == 3140 &&
                 v.integer("ind(-4)") == 9500 && 3140 % 8 != 0 && 9500 % 8 != 0 && v.integer("ord(-4/5)") == 265,
             "q=12721 certificate; ");
    c.expect(is_perfect(12721, Interval(3, 5), power_set(ctx, {{1, 2}, {16, 795}})), "q=12721 chain set; ");
  });
  timed(c, 5, "q=307009", [&] {
    const GroupCtx ctx(307009);
    c.expect(check_family(ctx, Interval(2, 6)).exists(), "q=307009 verdict; ");
    c.expect(is_perfect(307009, Interval(2, 6), power_set(ctx, {{1, 2}, {8, 4}, {64, 4797}})),
             "q=307009 chain set; ");
  });
  const std::tuple<u64, u64, int> seven[] = {{475729, 29733, 1}, {2693329, 168333, 2}, {861361, 53835, 3}};
  for (auto [q, count, cond] : seven) {
    timed(c, 10, "q=" + std::to_string(q), [&] {
      const GroupCtx ctx(q);
      const Verdict v = check_family(ctx, Interval(1, 7));
      c.expect(v.exists() && v.integer("condition") == cond, "q=" + std::to_string(q) + " condition; ");
      c.expect(is_perfect(q, Interval(1, 7), power_set(ctx, {{1, 2}, {16, count}})),
               "q=" + std::to_string(q) + " chain set; ");
    });
  }
  const std::tuple<u64, std::vector<Chain>, int> five[] = {
      {463, {{6, 77}}, 1}, {1489, {{3, 8}, {48, 31}}, 1}, {1171, {{6, 195}}, 2}};
  for (const auto& [q, chains, cond] : five) {
    timed(c, 1, "q=" + std::to_string(q), [&] {
      const GroupCtx ctx(q);
      const Verdict v = check_family(ctx, Interval(1, 5));
      c.expect(v.exists() && v.integer("condition") == cond, "q=" + std::to_string(q) + " condition; ");
      c.expect(is_perfect(q, Interval(1, 5), power_set(ctx, chains)), "q=" + std::to_string(q) + " chain set; ");
    });
  }
  timed(c, 1, "q=7", [&] {
    const auto s = construct_perfect(GroupCtx(7), Interval(1, 5));
    c.expect(s.set.elements == std::vector<u64>{1}, "q=7 trivial; ");
  });
  return c;
}

// Primes reported by the search command with their condition numbers.
std::map<u64, i64> search(u64 lo, u64 hi, unsigned k1, unsigned k2, Check& c) {
  std::ostringstream out, err;
  const int code = cli::run({"search", "--min", std::to_string(lo), "--max", std::to_string(hi), "--k1",
                             std::to_string(k1), "--k2", std::to_string(k2), "--only-exists", "--format", "json",
                             "--jobs", "2"},
                            out, err);
  c.expect(code == 0, "search exit " + std::to_string(code) + " " + err.str() + "; ");
  std::map<u64, i64> found;
  if (code != 0) return found;
  const auto doc = nlohmann::json::parse(out.str());
  for (const auto& rec : doc["results"]) {
    const auto& cert = rec["verdict"]["certificate"];
    found[rec["q"]] = cert.contains("condition") ? cert["condition"].get<i64>() : 0;
  }
  return found;
}

Check prime_lists() {
  Check c;
  timed(c, 120, "searches", [&] {
    auto has = [&](const std::map<u64, i64>& found, std::initializer_list<u64> qs, i64 cond, const char* what) {
      for (u64 q : qs) {
        const auto it = found.find(q);
        c.expect(it != found.end() && (cond == 0 || it->second == cond),
                 std::string(what) + " missing " + std::to_string(q) + "; ");
      }
    };
    has(search(10000, 80000, 3, 5, c), {12721, 26641, 34729, 49369, 78241}, 0, "[-3,5]");
    has(search(300000, 450000, 2, 6, c), {307009, 315361, 348769, 438769, 442609}, 0, "[-2,6]");
    const auto five = search(1, 12000, 1, 5, c);
    has(five, {463, 1489, 2503, 3583, 5407, 5647}, 1, "[-1,5] condition 1");
    has(five, {7, 571, 1171, 2371, 2539, 3571, 11251, 11437}, 2, "[-1,5] condition 2");
  });
  return c;
}

template <class F>
void for_table_primes(F&& f) {
  for (auto [k1, k2] : kTable) {
    const Interval w(k1, k2);
    for (u64 q = 3; q <= 199; q += 2) {
      if (!is_prime(q) || (q - 1) % w.size() != 0 || is_singular(q, w)) continue;
      f(q, w);
    }
  }
}

Check oracle_sweep() {
  Check c;
  int cases = 0;
  timed(c, 300, "sweep", [&] {
    for_table_primes([&](u64 q, const Interval& w) {
      ++cases;
      const bool rule = check_family(GroupCtx(q), w).exists();
      const bool oracle = perfect_exists_bruteforce(q, w).has_value();
      c.expect(rule == oracle, "q=" + std::to_string(q) + " " + w.to_string() + "; ");
    });
  });
  c.expect(cases > 200, "too few cases; ");
  c.detail << (c.ok ? std::to_string(cases) + " (q, window) pairs" : "");
  return c;
}

Check root_invariance() {
  Check c;
  timed(c, 300, "roots", [&] {
    for_table_primes([&](u64 q, const Interval& w) {
      const auto roots = all_primitive_roots(q);
      const Verdict base = check_family(GroupCtx(q, roots.front()), w);
      for (u64 g : roots) {
        const Verdict v = check_family(GroupCtx(q, g), w);
        c.expect(v.decision == base.decision, "q=" + std::to_string(q) + " g=" + std::to_string(g) + "; ");
        if (w == Interval(1, 7)) {
          c.expect(v.flag("condition1") == base.flag("condition1"), "[-1,7] condition 1 at q=" + std::to_string(q));
        }
      }
    });
  });
  return c;
}

// direct_factor_test for |A| | N; for |A| not dividing N both sides must refuse.
bool factor_agrees(const std::vector<u64>& a, u64 n) {
  const u64 size = a.size();
  if (n % size != 0) {
    bool oracle_refuses = false;
    try {
      complement_exists_bruteforce(a, n);
    } catch (const InvalidInput&) {
      oracle_refuses = true;
    }
    bool test_refuses = false;
    try {
      direct_factor_test(a, n, factorize(size).factors().front().prime);
    } catch (const InvalidInput&) {
      test_refuses = true;
    }
    return oracle_refuses && test_refuses;
  }
  const u64 p = factorize(size).factors().front().prime;
  return direct_factor_test(a, n, p).is_direct_factor == complement_exists_bruteforce(a, n).has_value();
}

Check direct_factor_equivalence() {
  Check c;
  std::mt19937_64 rng(2024);
  timed(c, 300, "equivalence", [&] {
    for (u64 n : {12ULL, 20ULL, 36ULL, 60ULL, 100ULL}) {
      for (int i = 0; i < 10000; ++i) {
        const u64 size = 2 + rng() % 4;
        std::set<u64> s{0};
        while (s.size() < size) s.insert(rng() % n);
        const std::vector<u64> a(s.begin(), s.end());
        if (!factor_agrees(a, n)) {
          c.expect(false, "N=" + std::to_string(n) + " |A|=" + std::to_string(size) + "; ");
          return;
        }
      }
    }
    c.expect(factor_agrees({0, 1, 404, 2, 278}, 420), "q=421 instance; ");
    c.expect(factor_agrees({0, 44, 39}, 102), "q=103 instance; ");
  });
  return c;
}

Check period_theorem() {
  Check c;
  std::mt19937_64 rng(6);
  int checked = 0;
  for (u64 n = 2; n <= 200; ++n) {
    const FactoredInteger fn = factorize(n);
    for (const auto& pp : fn.factors()) {
      for (unsigned e = 1; e <= pp.exponent; ++e) {
        const u64 size = prime_power(pp.prime, e);
        for (int trial = 0; trial < 3; ++trial) {
          std::set<u64> s{0};
          while (s.size() < size) s.insert(rng() % n);
          const std::vector<u64> a(s.begin(), s.end());
          const auto r = direct_factor_test(a, n, pp.prime);
          if (r.is_direct_factor) {
            const auto b = build_complement(*r.labeling, n).elements;
            c.expect(check_period_theorem(a, b, n, pp.prime), "constructed N=" + std::to_string(n) + "; ");
            ++checked;
          }
          for (const auto& b : all_complements_bruteforce(a, n, OracleOptions{5000, 200})) {
            c.expect(check_period_theorem(a, b, n, pp.prime), "oracle N=" + std::to_string(n) + "; ");
            ++checked;
          }
        }
      }
    }
  }
  c.detail << (c.ok ? std::to_string(checked) + " factorizations" : "");
  return c;
}

Check cyclotomic_division() {
  Check c;
  std::mt19937_64 rng(512);
  int divisible = 0;
  for (int i = 0; i < 1000; ++i) {
    const u64 primes[] = {2, 3, 5, 7};
    const u64 p = primes[rng() % 4];
    unsigned max_k = 0;
    for (u64 pk = p; pk <= 512; pk *= p) ++max_k;
    const unsigned k = 1 + rng() % max_k;
    const u64 pk = prime_power(p, k);
    const u64 n = pk * (1 + rng() % (512 / pk));
    std::vector<u64> elems;
    if (rng() % 2) {
      for (int j = 0, m = 1 + rng() % 6; j < m; ++j) {
        const u64 s = rng() % n;
        for (u64 t = 0; t < p; ++t) elems.push_back((s + t * (pk / p) + pk * (rng() % (n / pk))) % n);
      }
    } else {
      for (int j = 0, m = 1 + rng() % 20; j < m; ++j) elems.push_back(rng() % n);
    }
    const MaskPoly mask = mask_of(elems, n);
    const bool fast = cyclotomic_divides(mask, p, k);
    divisible += fast;
    c.expect(fast == oracle::cyclotomic_divides({mask.coeffs.begin(), mask.coeffs.end()}, p, k),
             "N=" + std::to_string(n) + " p^k=" + std::to_string(pk) + "; ");
  }
  c.detail << (c.ok ? std::to_string(divisible) + "/1000 divisible" : "");
  return c;
}

Check bridge() {
  Check c;
  u64 sets = 0;
  for (u64 q = 5; q <= 61; q += 4) {
    if (!is_prime(q)) continue;
    const GroupCtx ctx(q);
    sets += enumerate_perfect_sets(q, Interval(2, 2), [&](std::span<const u64> b) {
      const SplitterSet set{q, Interval(2, 2), {b.begin(), b.end()}};
      c.expect(bridge_k_to_kplus1(ctx, 2, set) == verify_splitter(q, Interval(1, 3), b),
               "q=" + std::to_string(q) + "; ");
      return true;
    });
  }
  c.detail << (c.ok ? std::to_string(sets) + " perfect B[-2,2] sets" : "");
  return c;
}

Check quasi() {
  Check c;
  for (u64 k = 2; k <= 60; ++k) {
    for (u64 m = k + 1; k * m <= 60; ++m) {
      if (m % k != 0) continue;
      c.expect(max_splitter_bruteforce(k * m, Interval(0, k)) < (k * m - 1) / k,
               "k=" + std::to_string(k) + " m=" + std::to_string(m) + "; ");
    }
  }
  for (u64 k = 1; k <= 20; ++k) {
    for (u64 m = 1; m <= 10000; ++m) {
      try {
        floor_gap_characterization(k, m);
      } catch (const ConsistencyError& e) {
        c.expect(false, e.what());
      }
    }
  }
  return c;
}

Check quartic() {
  Check c;
  int primes = 0;
  for (u64 q = 5; q < 10000; q += 8) {
    if (!is_prime(q)) continue;
    ++primes;
    c.expect(quartic_remark_check(q), "q=" + std::to_string(q) + "; ");
  }
  c.detail << (c.ok ? std::to_string(primes) + " primes" : "");
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"worked examples", worked_examples},
      {"prime lists", prime_lists},
      {"oracle equivalence q<=199", oracle_sweep},
      {"root invariance q<=199", root_invariance},
      {"direct-factor equivalence", direct_factor_equivalence},
      {"period theorem N<=200", period_theorem},
      {"cyclotomic division oracle", cyclotomic_division},
      {"bridge [-2,2] -> [-1,3], q<=61", bridge},
      {"quasi-perfect nonexistence and floor gap", quasi},
      {"quartic residue remark q<10^4", quartic},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto t = Clock::now();
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << index << " " << name << " (" << seconds_since(t) << " s)";
    const std::string d = c.detail.str();
    if (!d.empty()) std::cout << ": " << d;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
