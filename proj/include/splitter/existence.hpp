#pragma once

// Existence of perfect B[-k1,k2](q) splitter sets for odd primes q:
// closed-form rules for the tabulated families, the general reduction to a
// direct-factor question in Z_{q-1}, constructors for explicit sets, and
// the B[-k,k] -> B[-k+1,k+1] bridge.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splitter/num_core.hpp"
#include "splitter/set_factorization.hpp"
#include "splitter/splitter_core.hpp"

namespace splitter {

enum class Decision { exists, not_exists, undecided };

std::string to_string(Decision d);

using CertValue = std::variant<i64, bool, std::string>;

struct CertEntry {
  std::string name;
  CertValue value;
};

/// Outcome of an existence check together with the quantities it inspected.
struct Verdict {
  Decision decision = Decision::undecided;
  std::string rule;
  std::vector<CertEntry> certificate;
  std::optional<SplitterSet> construction;

  bool exists() const { return decision == Decision::exists; }
  /// Certificate lookup by name; nullptr if absent.
  const CertValue* find(const std::string& name) const;
  i64 integer(const std::string& name) const;
  bool flag(const std::string& name) const;
};

struct ExistenceOptions {
  /// Upper bound on q for the exact-cover fallback.
  u64 oracle_bound = 600;
  /// Singular inputs are otherwise rejected; when set they go to the oracle.
  bool allow_singular = false;
};

/// {ind_g(lambda) : lambda in [-k1,k2]*}, in multiplier order. Requires a
/// nonsingular window with (k1+k2) | (q-1).
std::vector<u64> reduce_to_factorization(const GroupCtx& ctx, const Interval& interval);

/// {ind_g(i) mod (q-1)/2 : i in [1,k]}. Requires q = 1 (mod 2k) and k a
/// power of an odd prime.
std::vector<u64> halve_for_symmetric(const GroupCtx& ctx, unsigned k);

/// Dispatches to the closed-form rule for the window's family, else to the
/// general reduction (prime-power window size, or symmetric window with odd
/// prime-power k), else to the bounded exact-cover oracle.
Verdict check_family(const GroupCtx& ctx, const Interval& interval, ExistenceOptions options = {});

/// Decision through the direct-factor reduction only. Requires |M| to be a
/// prime power, or k1 == k2 a power of an odd prime; throws InvalidInput
/// otherwise.
Verdict check_general(const GroupCtx& ctx, const Interval& interval);

/// Decision by exact cover (rule "bruteforce"); undecided above the bound.
Verdict check_bruteforce(const GroupCtx& ctx, const Interval& interval, ExistenceOptions options = {});

/// Rule identifier check_family would use for this window.
std::string family_rule(const Interval& interval);

/// The closed-form rules, callable directly. Each assumes q is nonsingular
/// for its window and (k1+k2) | (q-1).
namespace rules {
Verdict zero_two(const GroupCtx& ctx);                // [0,2]
Verdict sym_two(const GroupCtx& ctx);                 // [-2,2]
Verdict one_three(const GroupCtx& ctx);               // [-1,3]
Verdict zero_odd_prime(const GroupCtx& ctx, unsigned k);  // [0,k]
Verdict sym_odd_prime(const GroupCtx& ctx, unsigned k);   // [-k,k]
Verdict sym_three(const GroupCtx& ctx);               // [-3,3]
Verdict two_four(const GroupCtx& ctx);                // [-2,4]
Verdict sym_four(const GroupCtx& ctx);                // [-4,4]
Verdict three_five(const GroupCtx& ctx);              // [-3,5]
Verdict two_six(const GroupCtx& ctx);                 // [-2,6]
Verdict one_seven(const GroupCtx& ctx);               // [-1,7]
Verdict one_five(const GroupCtx& ctx);                // [-1,5]
}  // namespace rules

/// {g^(offset + c) : c in C_1 + ... + C_r}, a compact description of a
/// constructed set.
struct GeneratorForm {
  u64 base = 0;
  u64 modulus = 0;
  u64 offset = 0;
  std::vector<Chain> exponent_chains;
};

struct PerfectConstruction {
  SplitterSet set;
  std::string method;
  std::optional<GeneratorForm> generator;
};

/// Builds and verifies a perfect set. Throws InvalidInput when none exists,
/// BoundExceeded when undecided, ConsistencyError if the built set fails
/// verification.
PerfectConstruction construct_perfect(const GroupCtx& ctx, const Interval& interval, ExistenceOptions options = {});

/// For a perfect B[-k,k](q) set B: whether -k/(k+1) is a period of B, in
/// which case B is also a perfect B[-k+1,k+1](q) set (re-verified).
bool bridge_k_to_kplus1(const GroupCtx& ctx, unsigned k, const SplitterSet& set);

/// For q = 5 (mod 8): [4 | ord_q(2) and ord_q(-3/2) odd] == [6 is a quartic residue].
bool quartic_remark_check(u64 q);

}  // namespace splitter
