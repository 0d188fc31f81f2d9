#pragma once

#include <compare>
#include <cstdlib>
#include <string>

#include "splab/errors.hpp"

namespace splab {

/// Exact half-integer stored as twice its value.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
  static constexpr HalfInt from_int(int k) { return HalfInt{2 * k}; }

  constexpr double value() const { return twice / 2.0; }
  constexpr bool is_integer() const { return twice % 2 == 0; }

  constexpr HalfInt operator-() const { return HalfInt{-twice}; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  // Only defined for values that are whole numbers.
  int to_int() const {
    require(is_integer(), "HalfInt: " + str() + " is not an integer");
    return twice / 2;
  }

  std::string str() const {
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

/// Difference of two half-integers of equal parity; exact integer.
inline int int_diff(HalfInt a, HalfInt b) { return (a - b).to_int(); }

}  // namespace splab
