#pragma once

// Splitter sets B[-k1,k2](N): all products lambda*s (lambda in the
// multiplier set [-k1,k2]*, s in B) are distinct and nonzero mod N.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitter/num_core.hpp"

namespace splitter {

/// Multiplier window [-k1, k2]; the multiplier set omits 0.
class Interval {
 public:
  Interval(unsigned k1, unsigned k2);

  unsigned k1() const { return k1_; }
  unsigned k2() const { return k2_; }
  /// |[-k1,k2]*| = k1 + k2.
  unsigned size() const { return k1_ + k2_; }
  /// Ascending: -k1, ..., -1, 1, ..., k2.
  std::vector<i64> multipliers() const;
  /// The window with the sign flipped, [-k2, k1]. Requires k1 >= 1.
  Interval negated() const;
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  unsigned k1_;
  unsigned k2_;
};

enum class SplitterKind { perfect, quasi_perfect, valid_not_maximal, invalid };

std::string to_string(SplitterKind kind);

struct Classification {
  SplitterKind kind = SplitterKind::invalid;
  bool singular = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

struct SplitterSet {
  u64 modulus = 0;
  Interval interval{0, 1};
  std::vector<u64> elements;  // ascending, in [1, N-1]
};

/// gcd(N, k1! k2!) > 1.
bool is_singular(u64 modulus, const Interval& interval);

/// Occupancy-table check. Throws InvalidInput for an element that is 0 or
/// not below N.
bool verify_splitter(u64 modulus, const Interval& interval, std::span<const u64> elements);

Classification classify(u64 modulus, const Interval& interval, std::span<const u64> elements);

struct SplitterOracleOptions {
  u64 bound = 600;
};

/// Exact-cover search for a perfect B[-k1,k2](N) set. Requires
/// (k1+k2) | (N-1). Returns a witness (ascending) or nullopt.
std::optional<std::vector<u64>> perfect_exists_bruteforce(u64 modulus, const Interval& interval,
                                                          SplitterOracleOptions options = {});

/// Visits every perfect splitter set (ascending elements) until the
/// visitor returns false. Returns the count visited.
std::uint64_t enumerate_perfect_sets(u64 modulus, const Interval& interval,
                                     const std::function<bool(std::span<const u64>)>& visit,
                                     SplitterOracleOptions options = {});

struct MaxSplitterOptions {
  u64 bound = 120;
};

/// Exact maximum |B| over all B[-k1,k2](N) splitter sets.
u64 max_splitter_bruteforce(u64 modulus, const Interval& interval, MaxSplitterOptions options = {});

}  // namespace splitter
