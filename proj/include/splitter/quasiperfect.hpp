#pragma once

// Nonexistence criteria for quasi-perfect splitter sets, i.e. sets with
// floor((m-1)/|M|) elements when |M| does not divide m-1.

#include <string>
#include <vector>

#include "splitter/num_core.hpp"

namespace splitter {

enum class QuasiConclusion { nonexistent, no_conclusion };

std::string to_string(QuasiConclusion c);

struct QuasiVerdict {
  bool applicable = false;
  QuasiConclusion conclusion = QuasiConclusion::no_conclusion;
  std::string rule;
  std::vector<std::pair<std::string, i64>> witnesses;
};

/// No quasi-perfect B[0,k](km) set when m > k and k | m. Requires k >= 2, m >= 1.
QuasiVerdict no_quasi_B0k_km(u64 k, u64 m);

/// When some prime divisor of k is coprime to m, every B[-(k-1),k](m) set
/// is a B[-k,k](m) set; a floor gap floor((m-1)/(2k-1)) > floor((m-1)/(2k))
/// then rules out quasi-perfect B[-(k-1),k](m) sets. Requires k >= 1, m >= 2.
QuasiVerdict lift_interval(u64 k, u64 m);

/// floor((m-1)/(2k-1)) > floor((m-1)/(2k)). Throws ConsistencyError if this
/// disagrees with [m >= 4k^2-2k+1, or m = 2k(t+1)-s with 0 <= s <= t <= 2k-1].
bool floor_gap_characterization(u64 k, u64 m);

/// The closed-form side of floor_gap_characterization.
bool floor_gap_closed_form(u64 k, u64 m);

}  // namespace splitter
