#pragma once

#include <cstdint>
#include <vector>

namespace bspace {

/// Frequencies sum_i b_i 4^i with b_i in {0, 1} and value below 4^level,
/// in increasing order. Cardinality is exactly 2^level.
struct Lambda4Set {
  int level = 0;
  std::vector<std::int64_t> members;

  std::size_t size() const { return members.size(); }
  bool contains(std::int64_t lambda) const;
};

inline constexpr int kMaxLambda4Level = 20;

/// Throws ValidationError unless 1 <= level <= kMaxLambda4Level.
Lambda4Set lambda4_enumerate(int level);

/// True iff every base-4 digit of a nonnegative integer is 0 or 1.
bool has_lambda4_digits(std::int64_t value);

}  // namespace bspace
