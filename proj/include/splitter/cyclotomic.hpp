#pragma once

// Mask polynomials f_A(x) = sum x^a of multisets A in Z_N, and exact
// divisibility by prime-power cyclotomic polynomials Phi_{p^k}.

#include <span>
#include <vector>

#include "splitter/num_core.hpp"

namespace splitter {

/// Coefficient vector of f_A: coeffs[i] is the multiplicity of i in A.
struct MaskPoly {
  u64 modulus = 0;
  std::vector<u64> coeffs;

  u64 weight() const;
  bool empty() const { return weight() == 0; }

  friend bool operator==(const MaskPoly&, const MaskPoly&) = default;
};

MaskPoly mask_of(std::span<const u64> elements, u64 modulus);

/// Product of masks in Z[x]/(x^N - 1), i.e. the mask of the sumset A+B
/// counted with multiplicity.
MaskPoly cyclic_convolution(const MaskPoly& a, const MaskPoly& b);

/// Coefficients of f_A reduced modulo x^period - 1.
std::vector<u64> fold(const MaskPoly& mask, u64 period);
std::vector<u64> fold(std::span<const u64> elements, u64 period);

/// p^k, throwing InvalidInput on overflow or k == 0.
u64 prime_power(u64 p, unsigned k);

/// Whether Phi_{p^k}(x) divides f_A(x) over Z. Decided in the folded ring:
/// within every residue class mod p^(k-1), the p folded coefficients must be
/// equal. The zero mask is divisible by everything.
bool cyclotomic_divides(const MaskPoly& mask, u64 p, unsigned k);
bool cyclotomic_divides(std::span<const u64> elements, u64 p, unsigned k);

/// A mod p^k as a union of arithmetic progressions {s + t p^(k-1) : t < p}.
struct ApDecomposition {
  u64 p = 0;
  unsigned k = 0;
  /// Progression starts, each in [0, p^(k-1)), ascending with repetition.
  std::vector<u64> starts;

  u64 difference() const;
  /// Multiset union of the progressions, as a folded coefficient vector of
  /// length p^k.
  std::vector<u64> recompose() const;
};

/// Requires cyclotomic_divides(mask, p, k); throws InvalidInput otherwise.
ApDecomposition ap_decompose(const MaskPoly& mask, u64 p, unsigned k);

/// M_X = { j in [1, a] : Phi_{p^j} | f_X } where a = v_p(N).
std::vector<unsigned> cyclotomic_levels(std::span<const u64> elements, u64 modulus, u64 p);
std::vector<unsigned> cyclotomic_levels(const MaskPoly& mask, u64 p);

struct DivisorPartition {
  std::vector<unsigned> levels_a;
  std::vector<unsigned> levels_b;
};

/// For a factorization A + B = Z_N returns (M_A, M_B). Throws
/// InvalidInput if the sets violate the partition property, which means
/// A + B was not a factorization.
DivisorPartition divisor_partition(const MaskPoly& mask_a, const MaskPoly& mask_b, u64 modulus, u64 p);

}  // namespace splitter
