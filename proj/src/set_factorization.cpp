#include "splitter/set_factorization.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "splitter/cyclotomic.hpp"
#include "splitter/exact_cover.hpp"

namespace splitter {

namespace {

u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

// Exponent n with size == p^n, or nullopt.
std::optional<unsigned> log_exact(u64 size, u64 p) {
  if (size == 0) return std::nullopt;
  unsigned n = 0;
  while (size % p == 0) {
    size /= p;
    ++n;
  }
  if (size != 1) return std::nullopt;
  return n;
}

void require_distinct_in_range(std::span<const u64> set, u64 modulus, const char* who) {
  std::vector<char> seen(modulus, 0);
  for (u64 x : set) {
    if (x >= modulus) throw InvalidInput(std::string(who) + ": element " + std::to_string(x) + " out of range");
    if (seen[x]) throw InvalidInput(std::string(who) + ": element " + std::to_string(x) + " repeated");
    seen[x] = 1;
  }
}

// Recursive peeling: split A into progressions at the top level, label the
// digit-0 representatives with the remaining levels, then extend.
std::vector<u64> label_recursive(const std::vector<u64>& set, std::span<const unsigned> levels, u64 p) {
  if (levels.empty()) {
    if (set.size() != 1) throw ConsistencyError("labeling: leftover set is not a singleton");
    return {set.front()};
  }
  const unsigned top = levels.back();
  const u64 step = ipow(p, top - 1);

  // residue mod p^(top-1) -> digit -> elements (ascending)
  std::map<u64, std::vector<std::vector<u64>>> groups;
  for (u64 x : set) {
    auto& buckets = groups[x % step];
    if (buckets.empty()) buckets.resize(p);
    buckets[(x / step) % p].push_back(x);
  }

  std::vector<u64> representatives;
  std::map<u64, std::vector<u64>> progression_of;  // digit-0 representative -> elements by digit
  for (auto& [residue, buckets] : groups) {
    for (auto& b : buckets) std::sort(b.begin(), b.end());
    const std::size_t c = buckets[0].size();
    for (const auto& b : buckets) {
      if (b.size() != c) throw ConsistencyError("labeling: digit classes are unbalanced");
    }
    for (std::size_t r = 0; r < c; ++r) {
      std::vector<u64> prog(p);
      for (u64 t = 0; t < p; ++t) prog[t] = buckets[t][r];
      representatives.push_back(prog[0]);
      progression_of.emplace(prog[0], std::move(prog));
    }
  }
  std::sort(representatives.begin(), representatives.end());

  const std::vector<u64> inner = label_recursive(representatives, levels.first(levels.size() - 1), p);
  std::vector<u64> table(inner.size() * p);
  for (std::size_t label = 0; label < inner.size(); ++label) {
    const auto& prog = progression_of.at(inner[label]);
    for (u64 t = 0; t < p; ++t) table[label * p + t] = prog[t];
  }
  return table;
}

}  // namespace

u64 Labeling::at(std::span<const unsigned> digits) const {
  if (digits.size() != levels.size()) throw InvalidInput("Labeling::at: wrong number of digits");
  u64 label = 0;
  for (unsigned d : digits) {
    if (d >= p) throw InvalidInput("Labeling::at: digit out of range");
    label = label * p + d;
  }
  return table.at(label);
}

bool Labeling::satisfies_conditions() const {
  const unsigned len = n();
  if (table.size() != ipow(p, len)) return false;
  if (std::set<u64>(table.begin(), table.end()).size() != table.size()) return false;
  for (unsigned j = 1; j < len; ++j) {
    if (levels[j - 1] >= levels[j]) return false;
  }
  for (u64 label = 0; label < table.size(); ++label) {
    // digits[j] = b_{j+1}
    std::vector<u64> digits(len);
    u64 rest = label;
    for (unsigned j = len; j-- > 0;) {
      digits[j] = rest % p;
      rest /= p;
    }
    for (unsigned j = 0; j < len; ++j) {
      const u64 low = ipow(p, levels[j] - 1);
      const u64 high = low * p;
      const u64 value = table[label];
      if ((value / low) % p != digits[j]) return false;
      // Reference: same prefix b_1..b_{j-1}, then zeros.
      u64 ref_label = 0;
      for (unsigned t = 0; t < len; ++t) ref_label = ref_label * p + (t < j ? digits[t] : 0);
      const u64 expected = (table[ref_label] % high + digits[j] * low) % high;
      if (value % high != expected) return false;
    }
  }
  return true;
}

DirectFactorResult direct_factor_test(std::span<const u64> set, u64 modulus, u64 p) {
  if (modulus == 0) throw InvalidInput("direct_factor_test: modulus must be positive");
  if (!is_prime(p)) throw InvalidInput("direct_factor_test: " + std::to_string(p) + " is not prime");
  require_distinct_in_range(set, modulus, "direct_factor_test");
  const auto n = log_exact(set.size(), p);
  if (!n) {
    throw InvalidInput("direct_factor_test: |A| = " + std::to_string(set.size()) + " is not a power of " +
                       std::to_string(p));
  }
  const unsigned a = valuation(modulus, p);
  if (*n > a) {
    throw InvalidInput("direct_factor_test: |A| = p^" + std::to_string(*n) + " exceeds p^" + std::to_string(a) +
                       " || N");
  }
  DirectFactorResult out;
  out.p = p;
  out.n = *n;
  out.a = a;
  out.levels = cyclotomic_levels(set, modulus, p);
  if (out.levels.size() > *n) {
    throw ConsistencyError("direct_factor_test: more cyclotomic divisors than v_p(|A|)");
  }
  out.is_direct_factor = out.levels.size() == *n;
  if (out.is_direct_factor) {
    Labeling lab{p, out.levels, label_recursive(std::vector<u64>(set.begin(), set.end()), out.levels, p)};
    if (!lab.satisfies_conditions()) throw ConsistencyError("direct_factor_test: labeling violates digit conditions");
    out.labeling = std::move(lab);
  }
  return out;
}

std::vector<u64> expand_chains(std::span<const Chain> chains, u64 modulus) {
  std::vector<u64> out{0};
  for (const Chain& c : chains) {
    std::vector<u64> next;
    next.reserve(out.size() * c.count);
    for (u64 base : out) {
      for (u64 t = 0; t < c.count; ++t) next.push_back((base + t * c.step) % modulus);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Chain> complement_chains(std::span<const unsigned> levels, u64 p, u64 modulus) {
  std::vector<Chain> chains;
  if (levels.empty()) {
    chains.push_back({1, modulus});
    return chains;
  }
  chains.push_back({1, ipow(p, levels[0] - 1)});
  for (std::size_t j = 1; j < levels.size(); ++j) {
    chains.push_back({ipow(p, levels[j - 1]), ipow(p, levels[j] - 1 - levels[j - 1])});
  }
  const u64 top = ipow(p, levels.back());
  if (modulus % top != 0) throw InvalidInput("complement_chains: p^(i_n) does not divide N");
  chains.push_back({top, modulus / top});
  return chains;
}

ComplementFactor build_complement(const Labeling& labeling, u64 modulus, ComplementOptions options) {
  if (!labeling.satisfies_conditions()) throw InvalidInput("build_complement: labeling is not valid");
  ComplementFactor out;
  out.modulus = modulus;
  out.chains = complement_chains(labeling.levels, labeling.p, modulus);
  out.elements = expand_chains(out.chains, modulus);
  if (modulus <= options.verify_bound) {
    std::vector<u64> a;
    a.reserve(labeling.table.size());
    for (u64 x : labeling.table) a.push_back(x % modulus);
    if (!is_factorization(a, out.elements, modulus)) {
      throw ConsistencyError("build_complement: A + B is not a factorization of Z_" + std::to_string(modulus));
    }
  }
  return out;
}

bool is_factorization(std::span<const u64> a, std::span<const u64> b, u64 modulus) {
  if (modulus == 0 || a.empty() || b.empty()) return false;
  if (static_cast<u64>(a.size()) * static_cast<u64>(b.size()) != modulus) return false;
  std::vector<char> hit(modulus, 0);
  for (u64 x : a) {
    for (u64 y : b) {
      const u64 s = (x % modulus + y % modulus) % modulus;
      if (hit[s]) return false;
      hit[s] = 1;
    }
  }
  return true;
}

namespace {

ExactCover translate_cover(std::span<const u64> set, u64 modulus, OracleOptions options, const char* who) {
  if (modulus == 0) throw InvalidInput(std::string(who) + ": modulus must be positive");
  if (modulus > options.bound) {
    throw BoundExceeded(std::string(who) + ": N = " + std::to_string(modulus) + " exceeds oracle bound " +
                        std::to_string(options.bound));
  }
  require_distinct_in_range(set, modulus, who);
  if (set.empty() || modulus % set.size() != 0) {
    throw InvalidInput(std::string(who) + ": |A| must divide N");
  }
  ExactCover cover(modulus);
  std::vector<std::size_t> items(set.size());
  for (u64 b = 0; b < modulus; ++b) {
    for (std::size_t i = 0; i < set.size(); ++i) items[i] = (b + set[i]) % modulus;
    cover.add_option(items);
  }
  return cover;
}

}  // namespace

std::optional<std::vector<u64>> complement_exists_bruteforce(std::span<const u64> set, u64 modulus,
                                                             OracleOptions options) {
  ExactCover cover = translate_cover(set, modulus, options, "complement_exists_bruteforce");
  auto sol = cover.first_solution();
  if (!sol) return std::nullopt;
  std::vector<u64> b(sol->begin(), sol->end());
  std::sort(b.begin(), b.end());
  return b;
}

std::vector<std::vector<u64>> all_complements_bruteforce(std::span<const u64> set, u64 modulus,
                                                         OracleOptions options) {
  ExactCover cover = translate_cover(set, modulus, options, "all_complements_bruteforce");
  std::set<std::vector<u64>> found;
  cover.solve([&](std::span<const std::size_t> sol) {
    std::vector<u64> b(sol.begin(), sol.end());
    std::sort(b.begin(), b.end());
    found.insert(std::move(b));
    return found.size() < options.max_solutions;
  });
  return {found.begin(), found.end()};
}

u64 stable_subgroup_index(std::span<const u64> set, u64 modulus) {
  if (modulus == 0) throw InvalidInput("stable_subgroup_index: modulus must be positive");
  std::vector<char> member(modulus, 0);
  for (u64 x : set) {
    if (x >= modulus) throw InvalidInput("stable_subgroup_index: element out of range");
    member[x] = 1;
  }
  for (u64 d = 1; d <= modulus; ++d) {
    if (modulus % d != 0) continue;
    bool period = true;
    for (u64 x : set) {
      if (!member[(x + d) % modulus]) {
        period = false;
        break;
      }
    }
    if (period) return d;
  }
  return modulus;
}

bool check_period_theorem(std::span<const u64> a, std::span<const u64> b, u64 modulus, u64 p) {
  if (!is_factorization(a, b, modulus)) throw InvalidInput("check_period_theorem: A + B is not a factorization");
  if (!log_exact(a.size(), p)) throw InvalidInput("check_period_theorem: |A| is not a power of p");
  std::vector<u64> reduced(a.begin(), a.end());
  for (u64& x : reduced) x %= modulus;
  const auto levels = cyclotomic_levels(reduced, modulus, p);
  if (levels.empty()) return true;
  return stable_subgroup_index(b, modulus) % ipow(p, levels.back()) == 0;
}

}  // namespace splitter
