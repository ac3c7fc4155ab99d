#ifndef PLEARN_EXACT_HPP
#define PLEARN_EXACT_HPP

// Error-free floating point helpers. The margin identities are checked on
// the exact real values of the stored doubles, so slack quantities are
// rounded toward +inf instead of to nearest.

#include <cmath>
#include <limits>
#include <utility>

namespace plearn::exact {

/// Knuth's TwoSum: returns (s, e) with s = fl(x + y) and x + y = s + e exactly.
inline std::pair<double, double> two_sum(double x, double y) noexcept {
  const double s = x + y;
  const double yy = s - x;
  const double e = (x - (s - yy)) + (y - yy);
  return {s, e};
}

/// Smallest double that is >= the exact difference hi - lo.
inline double difference_up(double hi, double lo) noexcept {
  const auto [s, e] = two_sum(hi, -lo);
  if (e > 0.0) return std::nextafter(s, std::numeric_limits<double>::infinity());
  return s;
}

/// True iff x + y >= bound holds for the exact real sum.
inline bool sum_at_least(double x, double y, double bound) noexcept {
  const auto [s, e] = two_sum(x, y);
  if (s != bound) return s > bound;
  return e >= 0.0;
}

}  // namespace plearn::exact

#endif  // PLEARN_EXACT_HPP
