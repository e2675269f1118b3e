#include "bspace/lambda4.hpp"

#include <algorithm>
#include <string>

#include "bspace/error.hpp"

namespace bspace {

bool Lambda4Set::contains(std::int64_t lambda) const {
  return std::binary_search(members.begin(), members.end(), lambda);
}

Lambda4Set lambda4_enumerate(int level) {
  if (level < 1 || level > kMaxLambda4Level) {
    throw ValidationError("Lambda4 level must lie in [1, " + std::to_string(kMaxLambda4Level) +
                          "], got " + std::to_string(level));
  }
  Lambda4Set set;
  set.level = level;
  const std::size_t count = std::size_t{1} << level;
  set.members.reserve(count);
  // Spreading the bits of m onto even positions is monotone in m.
  for (std::size_t m = 0; m < count; ++m) {
    std::int64_t lambda = 0;
    for (int bit = 0; bit < level; ++bit) {
      if ((m >> bit) & 1U) lambda |= std::int64_t{1} << (2 * bit);
    }
    set.members.push_back(lambda);
  }
  return set;
}

bool has_lambda4_digits(std::int64_t value) {
  if (value < 0) return false;
  for (; value > 0; value /= 4) {
    if (value % 4 > 1) return false;
  }
  return true;
}

}  // namespace bspace
