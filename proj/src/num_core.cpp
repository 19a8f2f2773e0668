#include "splitter/num_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace splitter {

namespace {

using u128 = unsigned __int128;

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

bool miller_rabin_round(u64 n, u64 d, unsigned s, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  // Deterministic sequence of constants; retry on failure.
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Smallest d in [0, order) with base^d == target, or order if none.
u64 bsgs(u64 base, u64 target, u64 order, u64 q) {
  if (order <= 64) {
    u64 cur = 1;
    for (u64 d = 0; d < order; ++d) {
      if (cur == target) return d;
      cur = mul_mod(cur, base, q);
    }
    return order;
  }
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, base, q);
  }
  const u64 giant = inv_mod(pow_mod(base, m, q), q);
  u64 gamma = target;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) {
      const u64 d = i * m + it->second;
      if (d < order) return d;
    }
    gamma = mul_mod(gamma, giant, q);
  }
  return order;
}

}  // namespace

FactoredInteger::FactoredInteger(u64 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {
  u64 product = 1;
  u64 previous = 0;
  for (const auto& f : factors_) {
    if (f.exponent == 0 || f.prime <= previous) {
      throw InvalidInput("FactoredInteger: factors must have ascending primes and positive exponents");
    }
    previous = f.prime;
    for (unsigned e = 0; e < f.exponent; ++e) product *= f.prime;
  }
  if (product != value_) throw InvalidInput("FactoredInteger: factors do not multiply to value");
}

unsigned FactoredInteger::exponent_of(u64 p) const {
  for (const auto& f : factors_) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

std::vector<u64> FactoredInteger::primes() const {
  std::vector<u64> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.prime);
  return out;
}

std::string FactoredInteger::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].prime;
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  // Extended Euclid on signed 128-bit to stay exact for m < 2^63.
  __int128 old_r = static_cast<__int128>(a % m), r = static_cast<__int128>(m);
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    std::swap(old_r, r);
    r -= quotient * old_r;
    std::swap(old_s, s);
    s -= quotient * old_s;
  }
  if (old_r != 1) throw InvalidInput("inv_mod: " + std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

u64 reduce_signed(i64 a, u64 m) {
  const __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  return static_cast<u64>(r < 0 ? r + m : r);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is exact for all n < 3.3 * 10^24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

FactoredInteger factorize(u64 n) {
  if (n == 0) throw InvalidInput("factorize: n must be positive");
  std::vector<u64> primes;
  u64 rest = n;
  for (u64 p = 2; p < 1000 && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (rest % p == 0) {
      primes.push_back(p);
      rest /= p;
    }
  }
  factor_into(rest, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> factors;
  for (u64 p : primes) {
    if (!factors.empty() && factors.back().prime == p) {
      ++factors.back().exponent;
    } else {
      factors.push_back({p, 1});
    }
  }
  return FactoredInteger(n, std::move(factors));
}

unsigned valuation(u64 n, u64 p) {
  if (n == 0) throw InvalidInput("valuation: n must be positive");
  if (p < 2) throw InvalidInput("valuation: p must be at least 2");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

unsigned capped_valuation(u64 x, u64 p, u64 modulus) {
  const unsigned cap = valuation(modulus, p);
  x %= modulus;
  if (x == 0) return cap;
  return std::min(cap, valuation(x, p));
}

RationalUnit::RationalUnit(i64 numerator, i64 denominator) : num_(numerator), den_(denominator) {
  if (numerator == 0 || denominator == 0) throw InvalidInput("RationalUnit: numerator and denominator must be nonzero");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

u64 RationalUnit::residue(u64 q) const {
  const u64 n = reduce_signed(num_, q);
  const u64 d = reduce_signed(den_, q);
  if (n == 0 || d == 0) throw InvalidInput("RationalUnit " + to_string() + " is not a unit modulo " + std::to_string(q));
  return mul_mod(n, inv_mod(d, q), q);
}

std::string RationalUnit::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool is_primitive_root(u64 q, u64 g, const FactoredInteger& order) {
  g %= q;
  if (g == 0) return false;
  if (q == 2) return g == 1;
  for (const auto& f : order.factors()) {
    if (pow_mod(g, (q - 1) / f.prime, q) == 1) return false;
  }
  return true;
}

bool is_primitive_root(u64 q, u64 g) {
  if (!is_prime(q)) throw InvalidInput("is_primitive_root: " + std::to_string(q) + " is not prime");
  return is_primitive_root(q, g, factorize(q - 1));
}

u64 find_primitive_root(u64 q) {
  if (q < 3 || !is_prime(q)) throw InvalidInput("find_primitive_root: " + std::to_string(q) + " is not an odd prime");
  const FactoredInteger order = factorize(q - 1);
  for (u64 g = 2; g < q; ++g) {
    if (is_primitive_root(q, g, order)) return g;
  }
  throw ConsistencyError("find_primitive_root: no primitive root found");
}

std::vector<u64> all_primitive_roots(u64 q) {
  if (q < 3 || !is_prime(q)) throw InvalidInput("all_primitive_roots: " + std::to_string(q) + " is not an odd prime");
  const FactoredInteger order = factorize(q - 1);
  std::vector<u64> roots;
  for (u64 g = 2; g < q; ++g) {
    if (is_primitive_root(q, g, order)) roots.push_back(g);
  }
  return roots;
}

GroupCtx::GroupCtx(u64 q, std::optional<u64> g, GroupOptions options) : q_(q), g_(0) {
  if (q < 3 || q >= (u64{1} << 63) || !is_prime(q)) {
    throw InvalidInput("GroupCtx: q = " + std::to_string(q) + " is not an odd prime below 2^63");
  }
  order_ = factorize(q - 1);
  if (g) {
    if (*g == 0 || *g >= q || !is_primitive_root(q, *g, order_)) {
      throw InvalidInput("GroupCtx: " + std::to_string(*g) + " is not a primitive root modulo " + std::to_string(q));
    }
    g_ = *g;
  } else {
    for (u64 c = 2; c < q; ++c) {
      if (is_primitive_root(q, c, order_)) {
        g_ = c;
        break;
      }
    }
  }
  if (q <= options.index_table_threshold) {
    auto table = std::make_shared<std::vector<std::uint32_t>>(q, 0);
    u64 cur = 1;
    for (u64 e = 0; e + 1 < q; ++e) {
      (*table)[cur] = static_cast<std::uint32_t>(e);
      cur = mul_mod(cur, g_, q);
    }
    table_ = std::move(table);
  }
}

u64 GroupCtx::power(u64 e) const { return pow_mod(g_, e % (q_ - 1), q_); }

u64 GroupCtx::log(u64 x) const {
  x %= q_;
  if (x == 0) throw InvalidInput("discrete_log: 0 is not a unit modulo " + std::to_string(q_));
  if (table_) return (*table_)[x];
  return log_pohlig_hellman(x);
}

u64 GroupCtx::log_pohlig_hellman(u64 x) const {
  const u64 n = q_ - 1;
  // CRT accumulation: result mod `modulus`.
  u64 result = 0;
  u64 modulus = 1;
  for (const auto& f : order_.factors()) {
    u64 pe = 1;
    for (unsigned i = 0; i < f.exponent; ++i) pe *= f.prime;
    const u64 cofactor = n / pe;
    const u64 h = pow_mod(g_, cofactor, q_);           // order p^e
    const u64 y = pow_mod(x, cofactor, q_);            // in <h>
    const u64 gamma = pow_mod(h, pe / f.prime, q_);    // order p
    const u64 h_inv = inv_mod(h, q_);
    u64 z = 0;
    u64 p_i = 1;
    for (unsigned i = 0; i < f.exponent; ++i) {
      const u64 stripped = mul_mod(y, pow_mod(h_inv, z, q_), q_);
      const u64 target = pow_mod(stripped, pe / (p_i * f.prime), q_);
      const u64 digit = bsgs(gamma, target, f.prime, q_);
      if (digit >= f.prime) throw ConsistencyError("discrete_log: digit not found");
      z += digit * p_i;
      p_i *= f.prime;
    }
    // Combine result (mod modulus) with z (mod pe).
    const u64 t = mul_mod(reduce_signed(static_cast<i64>(z % pe) - static_cast<i64>(result % pe), pe),
                          inv_mod(modulus % pe, pe), pe);
    result += modulus * t;
    modulus *= pe;
  }
  return result % n;
}

u64 discrete_log(const GroupCtx& ctx, u64 x) { return ctx.log(x); }

u64 discrete_log(const GroupCtx& ctx, const RationalUnit& x) { return ctx.log(x.residue(ctx.q())); }

u64 mult_order(const GroupCtx& ctx, const RationalUnit& x) {
  const u64 q = ctx.q();
  const u64 r = x.residue(q);
  u64 order = q - 1;
  for (const auto& f : ctx.order().factors()) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (pow_mod(r, order / f.prime, q) != 1) break;
      order /= f.prime;
    }
  }
  return order;
}

u64 subgroup_index(const GroupCtx& ctx, std::span<const RationalUnit> gens) {
  u64 d = ctx.q() - 1;
  for (const auto& x : gens) d = std::gcd(d, discrete_log(ctx, x));
  return d;
}

u64 subgroup_index(const GroupCtx& ctx, std::initializer_list<RationalUnit> gens) {
  return subgroup_index(ctx, std::span<const RationalUnit>(gens.begin(), gens.size()));
}

bool in_subgroup(const GroupCtx& ctx, const RationalUnit& x, std::span<const RationalUnit> gens) {
  return discrete_log(ctx, x) % subgroup_index(ctx, gens) == 0;
}

bool in_subgroup(const GroupCtx& ctx, const RationalUnit& x, std::initializer_list<RationalUnit> gens) {
  return in_subgroup(ctx, x, std::span<const RationalUnit>(gens.begin(), gens.size()));
}

bool is_power_residue(const GroupCtx& ctx, const RationalUnit& x, u64 e) {
  if (e == 0 || (ctx.q() - 1) % e != 0) {
    throw InvalidInput("is_power_residue: e = " + std::to_string(e) + " does not divide q-1");
  }
  return discrete_log(ctx, x) % e == 0;
}

}  // namespace splitter
