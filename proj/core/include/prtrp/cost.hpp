#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace prtrp {

// Travel times are 64-bit; objectives and bounds accumulate in 128 bits so
// products like W * d never wrap for any instance the engine accepts.
using Time = std::int64_t;
using Cost = __int128;

inline constexpr Cost kInfiniteCost = std::numeric_limits<__int128>::max();

std::string to_string(Cost value);

// Returns false when |value| does not fit in an int64.
bool fits_int64(Cost value);

}  // namespace prtrp
