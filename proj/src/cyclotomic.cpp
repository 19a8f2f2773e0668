#include "splitter/cyclotomic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace splitter {

namespace {

bool classes_equal(const std::vector<u64>& folded, u64 p, u64 step) {
  for (u64 a = 0; a < step; ++a) {
    const u64 first = folded[a];
    for (u64 t = 1; t < p; ++t) {
      if (folded[a + t * step] != first) return false;
    }
  }
  return true;
}

void require_prime(u64 p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

}  // namespace

u64 MaskPoly::weight() const { return std::accumulate(coeffs.begin(), coeffs.end(), u64{0}); }

MaskPoly mask_of(std::span<const u64> elements, u64 modulus) {
  if (modulus == 0) throw InvalidInput("mask_of: modulus must be positive");
  MaskPoly m{modulus, std::vector<u64>(modulus, 0)};
  for (u64 e : elements) {
    if (e >= modulus) throw InvalidInput("mask_of: element " + std::to_string(e) + " out of range");
    ++m.coeffs[e];
  }
  return m;
}

MaskPoly cyclic_convolution(const MaskPoly& a, const MaskPoly& b) {
  if (a.modulus != b.modulus) throw InvalidInput("cyclic_convolution: moduli differ");
  const u64 n = a.modulus;
  MaskPoly out{n, std::vector<u64>(n, 0)};
  for (u64 i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (u64 j = 0; j < n; ++j) {
      if (b.coeffs[j] == 0) continue;
      out.coeffs[(i + j) % n] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

std::vector<u64> fold(const MaskPoly& mask, u64 period) {
  std::vector<u64> out(period, 0);
  for (u64 i = 0; i < mask.coeffs.size(); ++i) out[i % period] += mask.coeffs[i];
  return out;
}

std::vector<u64> fold(std::span<const u64> elements, u64 period) {
  std::vector<u64> out(period, 0);
  for (u64 e : elements) ++out[e % period];
  return out;
}

u64 prime_power(u64 p, unsigned k) {
  if (k == 0) throw InvalidInput("prime_power: level must be at least 1");
  u64 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > (u64{1} << 62) / p) throw InvalidInput("prime_power: p^k overflows");
    r *= p;
  }
  return r;
}

bool cyclotomic_divides(const MaskPoly& mask, u64 p, unsigned k) {
  require_prime(p);
  const u64 pk = prime_power(p, k);
  return classes_equal(fold(mask, pk), p, pk / p);
}

bool cyclotomic_divides(std::span<const u64> elements, u64 p, unsigned k) {
  require_prime(p);
  const u64 pk = prime_power(p, k);
  return classes_equal(fold(elements, pk), p, pk / p);
}

u64 ApDecomposition::difference() const { return prime_power(p, k) / p; }

std::vector<u64> ApDecomposition::recompose() const {
  const u64 pk = prime_power(p, k);
  const u64 step = pk / p;
  std::vector<u64> out(pk, 0);
  for (u64 s : starts) {
    for (u64 t = 0; t < p; ++t) ++out[(s + t * step) % pk];
  }
  return out;
}

ApDecomposition ap_decompose(const MaskPoly& mask, u64 p, unsigned k) {
  if (!cyclotomic_divides(mask, p, k)) {
    throw InvalidInput("ap_decompose: Phi_{" + std::to_string(p) + "^" + std::to_string(k) + "} does not divide the mask");
  }
  const u64 pk = prime_power(p, k);
  const u64 step = pk / p;
  std::vector<u64> folded = fold(mask, pk);
  ApDecomposition out{p, k, {}};
  // Peel from the smallest exponent upward. Each class a < p^(k-1) holds
  // folded[a] progressions starting at a.
  for (u64 a = 0; a < step; ++a) {
    for (u64 c = 0; c < folded[a]; ++c) out.starts.push_back(a);
  }
  return out;
}

std::vector<unsigned> cyclotomic_levels(std::span<const u64> elements, u64 modulus, u64 p) {
  require_prime(p);
  if (modulus == 0) throw InvalidInput("cyclotomic_levels: modulus must be positive");
  const unsigned a = valuation(modulus, p);
  std::vector<unsigned> levels;
  for (unsigned j = 1; j <= a; ++j) {
    if (cyclotomic_divides(elements, p, j)) levels.push_back(j);
  }
  return levels;
}

std::vector<unsigned> cyclotomic_levels(const MaskPoly& mask, u64 p) {
  require_prime(p);
  const unsigned a = valuation(mask.modulus, p);
  std::vector<unsigned> levels;
  for (unsigned j = 1; j <= a; ++j) {
    if (cyclotomic_divides(mask, p, j)) levels.push_back(j);
  }
  return levels;
}

DivisorPartition divisor_partition(const MaskPoly& mask_a, const MaskPoly& mask_b, u64 modulus, u64 p) {
  if (mask_a.modulus != modulus || mask_b.modulus != modulus) {
    throw InvalidInput("divisor_partition: mask moduli must equal N");
  }
  const unsigned a = valuation(modulus, p);
  if (a == 0) throw InvalidInput("divisor_partition: p must divide N");
  DivisorPartition out{cyclotomic_levels(mask_a, p), cyclotomic_levels(mask_b, p)};

  const u64 wa = mask_a.weight();
  const u64 wb = mask_b.weight();
  if (wa == 0 || wb == 0) throw InvalidInput("divisor_partition: empty set cannot be a factor");
  std::vector<unsigned> joined;
  std::set_union(out.levels_a.begin(), out.levels_a.end(), out.levels_b.begin(), out.levels_b.end(),
                 std::back_inserter(joined));
  const bool disjoint = joined.size() == out.levels_a.size() + out.levels_b.size();
  const bool covers = joined.size() == a;
  if (!disjoint || !covers || out.levels_a.size() != valuation(wa, p) || out.levels_b.size() != valuation(wb, p)) {
    throw InvalidInput("divisor_partition: level sets do not partition [1, " + std::to_string(a) +
                       "]; A + B is not a factorization");
  }
  return out;
}

}  // namespace splitter
