#include "prtrp/cost.hpp"

#include <algorithm>

namespace prtrp {

std::string to_string(Cost value) {
  if (value == 0) return "0";
  if (value == kInfiniteCost) return "inf";
  const bool negative = value < 0;
  // Work on the magnitude in unsigned space so INT128_MIN is handled.
  unsigned __int128 magnitude =
      negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
               : static_cast<unsigned __int128>(value);
  std::string digits;
  while (magnitude > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

bool fits_int64(Cost value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace prtrp
