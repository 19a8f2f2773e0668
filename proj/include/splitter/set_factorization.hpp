#pragma once

// Direct factors of Z_N with prime-power size: the cyclotomic criterion, the
// digit labeling, an explicit complementer factor, stable subgroups, and an
// exact-cover oracle for complement existence.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "splitter/num_core.hpp"

namespace splitter {

/// Elements of A labeled a_{b_1...b_n}, b_j in [0, p).
///
/// table[label] holds a_{b_1...b_n} where label = sum b_j p^(n-j), i.e. b_1
/// is the most significant base-p digit. For each j the i_j-th to last
/// base-p digit of a_{b} is b_j, and
///   a_{b_1..b_{j-1} b_j *..*} = a_{b_1..b_{j-1} 0 *..*} + b_j p^(i_j - 1)  (mod p^(i_j)).
struct Labeling {
  u64 p = 0;
  std::vector<unsigned> levels;  // i_1 < ... < i_n
  std::vector<u64> table;

  unsigned n() const { return static_cast<unsigned>(levels.size()); }
  u64 at(std::span<const unsigned> digits) const;
  /// Checks bijectivity plus the digit and offset conditions.
  bool satisfies_conditions() const;
};

struct DirectFactorResult {
  bool is_direct_factor = false;
  u64 p = 0;
  unsigned n = 0;  // |A| = p^n
  unsigned a = 0;  // v_p(N)
  std::vector<unsigned> levels;  // M_A
  std::optional<Labeling> labeling;
};

/// Decides whether A (|A| = p^n, 1 <= n <= v_p(N)) is a direct factor of Z_N.
/// Throws InvalidInput when |A| is not a power of p, n > v_p(N), or
/// elements repeat or fall outside [0, N).
DirectFactorResult direct_factor_test(std::span<const u64> set, u64 modulus, u64 p);

/// The arithmetic progression {0, step, ..., (count-1) step}.
struct Chain {
  u64 step = 0;
  u64 count = 0;

  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Elements of the sumset of chains, reduced mod `modulus` and sorted.
std::vector<u64> expand_chains(std::span<const Chain> chains, u64 modulus);

/// B = C_1 + ... + C_{n+1} with
///   C_1 = {0, 1, ..., p^(i_1 - 1) - 1},
///   C_j = {0, p^(i_{j-1}), ..., p^(i_j - 1) - p^(i_{j-1})},
///   C_{n+1} = {0, p^(i_n), ..., N - p^(i_n)}.
struct ComplementFactor {
  u64 modulus = 0;
  std::vector<Chain> chains;
  std::vector<u64> elements;  // ascending
};

struct ComplementOptions {
  /// A + B = Z_N is re-checked exhaustively when N is at most this bound.
  u64 verify_bound = u64{1} << 24;
};

ComplementFactor build_complement(const Labeling& labeling, u64 modulus, ComplementOptions options = {});

/// Chains only; shared with the splitter constructions.
std::vector<Chain> complement_chains(std::span<const unsigned> levels, u64 p, u64 modulus);

/// Whether A + B = Z_N with every sum distinct.
bool is_factorization(std::span<const u64> a, std::span<const u64> b, u64 modulus);

struct OracleOptions {
  u64 bound = 5000;
  /// all_complements_bruteforce stops after this many distinct complements.
  std::size_t max_solutions = SIZE_MAX;
};

/// Exact-cover search for B with A + B = Z_N. Returns the witness (sorted)
/// or nullopt. Throws BoundExceeded above the bound and InvalidInput if
/// |A| does not divide N.
std::optional<std::vector<u64>> complement_exists_bruteforce(std::span<const u64> set, u64 modulus,
                                                             OracleOptions options = {});

/// Distinct complements B, ascending, up to options.max_solutions of them.
std::vector<std::vector<u64>> all_complements_bruteforce(std::span<const u64> set, u64 modulus,
                                                         OracleOptions options = {});

/// [Z_N : pi(B)], where pi(B) = { t : t + B = B }. Because pi(B) is a
/// subgroup of the cyclic group it equals d Z_N for the returned d | N.
u64 stable_subgroup_index(std::span<const u64> set, u64 modulus);

/// For a factorization A + B = Z_N with |A| a power of p, whether
/// p^(max M_A) divides [Z_N : pi(B)]. Throws InvalidInput if A + B is not a
/// factorization or |A| is not a power of p.
bool check_period_theorem(std::span<const u64> a, std::span<const u64> b, u64 modulus, u64 p);

}  // namespace splitter
