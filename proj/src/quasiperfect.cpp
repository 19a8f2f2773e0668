#include "splitter/quasiperfect.hpp"

#include <numeric>

#include "splitter/errors.hpp"

namespace splitter {

std::string to_string(QuasiConclusion c) {
  return c == QuasiConclusion::nonexistent ? "nonexistent" : "no-conclusion";
}

QuasiVerdict no_quasi_B0k_km(u64 k, u64 m) {
  if (k < 2 || m < 1) throw InvalidInput("no_quasi_B0k_km: requires k >= 2 and m >= 1");
  QuasiVerdict v;
  v.rule = "B[0,k](km)-divisible";
  v.witnesses = {{"k", static_cast<i64>(k)}, {"m", static_cast<i64>(m)}, {"N", static_cast<i64>(k * m)}};
  v.applicable = m > k && m % k == 0;
  if (v.applicable) v.conclusion = QuasiConclusion::nonexistent;
  return v;
}

QuasiVerdict lift_interval(u64 k, u64 m) {
  if (k < 1 || m < 2) throw InvalidInput("lift_interval: requires k >= 1 and m >= 2");
  QuasiVerdict v;
  v.rule = "B[-(k-1),k]-lift";
  v.witnesses = {{"k", static_cast<i64>(k)}, {"m", static_cast<i64>(m)}};
  if (k == 1) return v;
  u64 witness = 0;
  for (u64 p : factorize(k).primes()) {
    if (std::gcd(p, m) == 1) {
      witness = p;
      break;
    }
  }
  if (witness == 0) return v;
  v.applicable = true;
  const u64 lower = (m - 1) / (2 * k - 1);
  const u64 upper = (m - 1) / (2 * k);
  v.witnesses.push_back({"prime", static_cast<i64>(witness)});
  v.witnesses.push_back({"floor((m-1)/(2k-1))", static_cast<i64>(lower)});
  v.witnesses.push_back({"floor((m-1)/(2k))", static_cast<i64>(upper)});
  if (lower > upper) v.conclusion = QuasiConclusion::nonexistent;
  return v;
}

bool floor_gap_closed_form(u64 k, u64 m) {
  if (k < 1) throw InvalidInput("floor_gap_closed_form: k must be positive");
  if (m >= 4 * k * k - 2 * k + 1) return true;
  // m = 2k(t+1) - s, 0 <= s <= t <= 2k-1
  for (u64 t = 0; t <= 2 * k - 1; ++t) {
    const u64 top = 2 * k * (t + 1);
    if (m > top || top - m > t) continue;
    return true;
  }
  return false;
}

bool floor_gap_characterization(u64 k, u64 m) {
  if (k < 1 || m < 1) throw InvalidInput("floor_gap_characterization: requires k >= 1 and m >= 1");
  const bool gap = (m - 1) / (2 * k - 1) > (m - 1) / (2 * k);
  if (gap != floor_gap_closed_form(k, m)) {
    throw ConsistencyError("floor_gap_characterization: closed form disagrees at k=" + std::to_string(k) +
                           ", m=" + std::to_string(m));
  }
  return gap;
}

}  // namespace splitter
