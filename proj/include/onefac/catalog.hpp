#pragma once

// Small named groups used as building blocks and test fixtures.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "onefac/group.hpp"

namespace onefac::catalog {

// Quaternion group. Ids: 0..3 = e,i,j,k and 4..7 = -e,-i,-j,-k.
inline Group quaternion8() {
  // unit product table on {1,i,j,k}: {sign, unit}
  constexpr std::array<std::array<std::array<int, 2>, 4>, 4> unit = {{
      {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
      {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
      {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
      {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}},
  }};
  std::vector<std::uint32_t> table(64);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const auto& p = unit[x % 4][y % 4];
      const int sign = (x / 4 + y / 4 + p[0]) % 2;
      table[x * 8 + y] = static_cast<std::uint32_t>(sign * 4 + p[1]);
    }
  }
  return Group(8, std::move(table), "Q8", {"e", "i", "j", "k", "-e", "-i", "-j", "-k"});
}

// Symmetries of the square: rotation (0 1 2 3) and reflection (1 3).
inline Group dihedral8() {
  return from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}, "D4");
}

inline Group symmetric3() {
  return from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3");
}

inline Group klein4() {
  return from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}}, "V4");
}

inline std::optional<Group> named(std::string_view name) {
  if (name == "Q8") return quaternion8();
  if (name == "D4") return dihedral8();
  if (name == "S3") return symmetric3();
  if (name == "V4") return klein4();
  return std::nullopt;
}

}  // namespace onefac::catalog
