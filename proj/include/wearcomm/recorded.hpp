#pragma once

#include <algorithm>
#include <array>

// Recorded wrist accelerometer counts, one column per gesture class.
namespace wearcomm::recorded {

// Z axis, up-down hand movement (appliance ON).
inline constexpr std::array<int, 17> kZOn = {277, 279, 282, 284, 265, 277, 261, 274, 269,
                                             276, 270, 280, 270, 267, 268, 279, 272};

// Y axis, horizontal hand movement (appliance OFF).
inline constexpr std::array<int, 18> kYOff = {360, 363, 374, 379, 367, 326, 331, 356, 323,
                                              381, 335, 359, 339, 368, 352, 378, 372, 335};

// Any other movement (DO NOTHING).
inline constexpr std::array<int, 19> kOther = {230, 225, 228, 192, 219, 212, 217, 199, 208, 224,
                                               211, 184, 182, 179, 184, 169, 201, 206, 215};

struct Range {
  int lo;
  int hi;
};

template <std::size_t N>
constexpr Range range_of(const std::array<int, N>& col) {
  const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
  return {*lo, *hi};
}

}  // namespace wearcomm::recorded
