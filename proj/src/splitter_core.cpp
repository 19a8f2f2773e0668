#include "splitter/splitter_core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "splitter/exact_cover.hpp"

namespace splitter {

namespace {

// The products lambda*s for a valid block, or empty if some product is zero
// or two products coincide.
std::vector<u64> block_of(u64 s, u64 modulus, std::span<const i64> multipliers) {
  std::vector<u64> cells;
  cells.reserve(multipliers.size());
  for (i64 lambda : multipliers) {
    const u64 r = mul_mod(reduce_signed(lambda, modulus), s, modulus);
    if (r == 0) return {};
    cells.push_back(r);
  }
  std::vector<u64> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {};
  return sorted;
}

struct Block {
  u64 s;
  std::vector<u64> cells;  // ascending
};

std::vector<Block> valid_blocks(u64 modulus, const Interval& interval, bool dedupe) {
  const auto mult = interval.multipliers();
  std::vector<Block> blocks;
  std::set<std::vector<u64>> seen;
  for (u64 s = 1; s < modulus; ++s) {
    auto cells = block_of(s, modulus, mult);
    if (cells.empty()) continue;
    if (dedupe && !seen.insert(cells).second) continue;
    blocks.push_back({s, std::move(cells)});
  }
  return blocks;
}

ExactCover perfect_cover(u64 modulus, const std::vector<Block>& blocks) {
  ExactCover cover(modulus - 1);
  std::vector<std::size_t> items;
  for (const Block& b : blocks) {
    items.clear();
    for (u64 c : b.cells) items.push_back(c - 1);
    cover.add_option(items);
  }
  return cover;
}

void check_perfect_preconditions(u64 modulus, const Interval& interval, u64 bound, const char* who) {
  if (modulus < 2) throw InvalidInput(std::string(who) + ": modulus must be at least 2");
  if ((modulus - 1) % interval.size() != 0) {
    throw InvalidInput(std::string(who) + ": k1+k2 = " + std::to_string(interval.size()) + " does not divide N-1");
  }
  if (modulus > bound) {
    throw BoundExceeded(std::string(who) + ": N = " + std::to_string(modulus) + " exceeds oracle bound " +
                        std::to_string(bound));
  }
}

// Packing search with a budget of cells left uncovered.
class PackingSearch {
 public:
  PackingSearch(u64 modulus, std::vector<Block> blocks, unsigned block_size)
      : modulus_(modulus), blocks_(std::move(blocks)), block_size_(block_size), containing_(modulus) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (u64 c : blocks_[i].cells) containing_[c].push_back(i);
    }
  }

  bool feasible(u64 target) {
    const u64 cells = modulus_ - 1;
    if (target * block_size_ > cells) return false;
    free_.assign(modulus_, 1);
    free_[0] = 0;
    budget_ = cells - target * block_size_;
    // Cells in no block can never be covered.
    for (u64 c = 1; c < modulus_; ++c) {
      if (containing_[c].empty()) {
        if (budget_ == 0) return false;
        --budget_;
        free_[c] = 0;
      }
    }
    remaining_ = target;
    return dfs();
  }

 private:
  bool fits(std::size_t b) const {
    for (u64 c : blocks_[b].cells) {
      if (!free_[c]) return false;
    }
    return true;
  }

  void set_block(std::size_t b, char value) {
    for (u64 c : blocks_[b].cells) free_[c] = value;
  }

  bool dfs() {
    if (remaining_ == 0) return true;
    // Most constrained free cell, ties to the smallest residue.
    u64 best = 0;
    std::size_t best_count = SIZE_MAX;
    for (u64 c = 1; c < modulus_; ++c) {
      if (!free_[c]) continue;
      std::size_t count = 0;
      for (std::size_t b : containing_[c]) count += fits(b) ? 1 : 0;
      if (count < best_count) {
        best = c;
        best_count = count;
        if (count == 0) break;
      }
    }
    if (best == 0) return false;
    for (std::size_t b : containing_[best]) {
      if (!fits(b)) continue;
      set_block(b, 0);
      --remaining_;
      const bool ok = dfs();
      ++remaining_;
      set_block(b, 1);
      if (ok) return true;
    }
    if (budget_ > 0) {
      free_[best] = 0;
      --budget_;
      const bool ok = dfs();
      ++budget_;
      free_[best] = 1;
      if (ok) return true;
    }
    return false;
  }

  u64 modulus_;
  std::vector<Block> blocks_;
  unsigned block_size_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<char> free_;
  u64 budget_ = 0;
  u64 remaining_ = 0;
};

}  // namespace

Interval::Interval(unsigned k1, unsigned k2) : k1_(k1), k2_(k2) {
  if (k2 == 0) throw InvalidInput("Interval: k2 must be positive");
}

std::vector<i64> Interval::multipliers() const {
  std::vector<i64> out;
  out.reserve(size());
  for (i64 l = -static_cast<i64>(k1_); l <= static_cast<i64>(k2_); ++l) {
    if (l != 0) out.push_back(l);
  }
  return out;
}

Interval Interval::negated() const {
  if (k1_ == 0) throw InvalidInput("Interval::negated: k1 must be positive");
  return Interval(k2_, k1_);
}

std::string Interval::to_string() const {
  const std::string left = k1_ == 0 ? "0" : "-" + std::to_string(k1_);
  return "[" + left + "," + std::to_string(k2_) + "]";
}

std::string to_string(SplitterKind kind) {
  switch (kind) {
    case SplitterKind::perfect:
      return "perfect";
    case SplitterKind::quasi_perfect:
      return "quasi-perfect";
    case SplitterKind::valid_not_maximal:
      return "valid-not-maximal";
    case SplitterKind::invalid:
      return "invalid";
  }
  return "invalid";
}

bool is_singular(u64 modulus, const Interval& interval) {
  const unsigned top = std::max(interval.k1(), interval.k2());
  for (u64 i = 2; i <= top; ++i) {
    if (std::gcd(modulus, i) > 1) return true;
  }
  return false;
}

bool verify_splitter(u64 modulus, const Interval& interval, std::span<const u64> elements) {
  if (modulus < 2) throw InvalidInput("verify_splitter: modulus must be at least 2");
  for (u64 s : elements) {
    if (s == 0 || s >= modulus) {
      throw InvalidInput("verify_splitter: element " + std::to_string(s) + " not in [1, N-1]");
    }
  }
  if (static_cast<u64>(elements.size()) * interval.size() > modulus - 1) return false;
  const auto mult = interval.multipliers();
  std::vector<u64> lambda_mod;
  for (i64 l : mult) lambda_mod.push_back(reduce_signed(l, modulus));
  std::vector<char> seen(modulus, 0);
  for (u64 s : elements) {
    for (u64 l : lambda_mod) {
      const u64 r = mul_mod(l, s, modulus);
      if (r == 0 || seen[r]) return false;
      seen[r] = 1;
    }
  }
  return true;
}

Classification classify(u64 modulus, const Interval& interval, std::span<const u64> elements) {
  Classification c;
  c.singular = is_singular(modulus, interval);
  if (!verify_splitter(modulus, interval, elements)) {
    c.kind = SplitterKind::invalid;
    return c;
  }
  const u64 k = interval.size();
  const u64 maximum = (modulus - 1) / k;
  if (elements.size() != maximum) {
    c.kind = SplitterKind::valid_not_maximal;
  } else if ((modulus - 1) % k == 0) {
    c.kind = SplitterKind::perfect;
  } else {
    c.kind = SplitterKind::quasi_perfect;
  }
  return c;
}

std::optional<std::vector<u64>> perfect_exists_bruteforce(u64 modulus, const Interval& interval,
                                                          SplitterOracleOptions options) {
  check_perfect_preconditions(modulus, interval, options.bound, "perfect_exists_bruteforce");
  const auto blocks = valid_blocks(modulus, interval, true);
  ExactCover cover = perfect_cover(modulus, blocks);
  auto sol = cover.first_solution();
  if (!sol) return std::nullopt;
  std::vector<u64> b;
  for (std::size_t id : *sol) b.push_back(blocks[id].s);
  std::sort(b.begin(), b.end());
  return b;
}

std::uint64_t enumerate_perfect_sets(u64 modulus, const Interval& interval,
                                     const std::function<bool(std::span<const u64>)>& visit,
                                     SplitterOracleOptions options) {
  check_perfect_preconditions(modulus, interval, options.bound, "enumerate_perfect_sets");
  const auto blocks = valid_blocks(modulus, interval, false);
  ExactCover cover = perfect_cover(modulus, blocks);
  std::vector<u64> b;
  return cover.solve([&](std::span<const std::size_t> sol) {
    b.clear();
    for (std::size_t id : sol) b.push_back(blocks[id].s);
    std::sort(b.begin(), b.end());
    return visit(b);
  });
}

u64 max_splitter_bruteforce(u64 modulus, const Interval& interval, MaxSplitterOptions options) {
  if (modulus < 2) throw InvalidInput("max_splitter_bruteforce: modulus must be at least 2");
  if (modulus > options.bound) {
    throw BoundExceeded("max_splitter_bruteforce: N = " + std::to_string(modulus) + " exceeds oracle bound " +
                        std::to_string(options.bound));
  }
  PackingSearch search(modulus, valid_blocks(modulus, interval, true), interval.size());
  for (u64 target = (modulus - 1) / interval.size(); target > 0; --target) {
    if (search.feasible(target)) return target;
  }
  return 0;
}

}  // namespace splitter
