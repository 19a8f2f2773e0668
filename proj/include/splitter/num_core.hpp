#pragma once

// Exact modular arithmetic for moduli below 2^63: primality, factorization,
// primitive roots, discrete logarithms and subgroup membership in Z_q^x.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitter/errors.hpp"

namespace splitter {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime factorization, primes ascending.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  FactoredInteger(u64 value, std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  /// Exponent of `p` in the factorization (0 if absent).
  unsigned exponent_of(u64 p) const;
  std::vector<u64> primes() const;
  std::string to_string() const;

 private:
  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; throws InvalidInput when gcd(a, m) != 1.
u64 inv_mod(u64 a, u64 m);
/// Reduces a signed integer into [0, m).
u64 reduce_signed(i64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(u64 n);

/// Complete factorization (trial division then Pollard-Brent rho).
/// Requires n >= 1.
FactoredInteger factorize(u64 n);

/// p-adic valuation of n > 0.
unsigned valuation(u64 n, u64 p);

/// v_p(x) for x taken modulo `modulus`, capped at v_p(modulus). Zero maps to
/// the cap. Below the cap the value does not depend on the representative.
unsigned capped_valuation(u64 x, u64 p, u64 modulus);

/// A unit written as numerator/denominator, e.g. -4/5. Reduced modulo q on use.
class RationalUnit {
 public:
  RationalUnit(i64 numerator, i64 denominator = 1);  // NOLINT: implicit by design of call sites

  i64 numerator() const { return num_; }
  i64 denominator() const { return den_; }

  /// num * den^-1 mod q in [1, q-1]. Throws InvalidInput for a non-unit.
  u64 residue(u64 q) const;
  std::string to_string() const;

 private:
  i64 num_;
  i64 den_;
};

bool is_primitive_root(u64 q, u64 g);
bool is_primitive_root(u64 q, u64 g, const FactoredInteger& order);
/// The smallest primitive root modulo the odd prime q.
u64 find_primitive_root(u64 q);
/// Every primitive root modulo q, ascending.
std::vector<u64> all_primitive_roots(u64 q);

struct GroupOptions {
  /// Build a full index table when q is at most this value.
  u64 index_table_threshold = u64{1} << 20;
};

/// Z_q^x for an odd prime q with a fixed primitive root g. Immutable.
class GroupCtx {
 public:
  /// Uses the smallest primitive root when `g` is empty. Validates q and g.
  explicit GroupCtx(u64 q, std::optional<u64> g = std::nullopt, GroupOptions options = {});

  u64 q() const { return q_; }
  u64 g() const { return g_; }
  /// q - 1, factored.
  const FactoredInteger& order() const { return order_; }
  bool has_index_table() const { return table_ != nullptr; }

  /// g^e mod q.
  u64 power(u64 e) const;
  /// ind_g(x) for a residue x in [1, q-1].
  u64 log(u64 x) const;

 private:
  u64 log_pohlig_hellman(u64 x) const;

  u64 q_;
  u64 g_;
  FactoredInteger order_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

/// ind_g(x); result in [0, q-2]. Rejects x = 0 mod q.
u64 discrete_log(const GroupCtx& ctx, u64 x);
u64 discrete_log(const GroupCtx& ctx, const RationalUnit& x);

/// ord_q(x).
u64 mult_order(const GroupCtx& ctx, const RationalUnit& x);

/// [Z_q^x : <gens>] = gcd(ind_g(gens)..., q-1). The empty set gives q-1.
u64 subgroup_index(const GroupCtx& ctx, std::span<const RationalUnit> gens);
u64 subgroup_index(const GroupCtx& ctx, std::initializer_list<RationalUnit> gens);

bool in_subgroup(const GroupCtx& ctx, const RationalUnit& x, std::span<const RationalUnit> gens);
bool in_subgroup(const GroupCtx& ctx, const RationalUnit& x, std::initializer_list<RationalUnit> gens);

/// Whether x is an e-th power residue; requires e | q-1.
bool is_power_residue(const GroupCtx& ctx, const RationalUnit& x, u64 e);

}  // namespace splitter
