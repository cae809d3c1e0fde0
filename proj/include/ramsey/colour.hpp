#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ramsey/rational.hpp"

namespace ramsey {

// Fixed ordering red < blue < green; every deterministic tie-break relies
// on it.
enum class Colour : int { Red = 0, Blue = 1, Green = 2 };

inline constexpr std::array<Colour, 3> kColours = {Colour::Red, Colour::Blue,
                                                   Colour::Green};

inline int index(Colour c) { return static_cast<int>(c); }

inline const char* name(Colour c) {
  switch (c) {
    case Colour::Red:
      return "red";
    case Colour::Blue:
      return "blue";
    case Colour::Green:
      return "green";
  }
  return "?";
}

inline std::optional<Colour> colour_from_name(std::string_view s) {
  if (s == "red") return Colour::Red;
  if (s == "blue") return Colour::Blue;
  if (s == "green") return Colour::Green;
  return std::nullopt;
}

// Nonempty subsets of {red, blue, green}; an edge may carry several colours.
class ColourSet {
 public:
  ColourSet() = default;
  explicit ColourSet(std::uint8_t bits) : bits_(bits & 7) {}
  static ColourSet of(Colour c) { return ColourSet(std::uint8_t(1u << index(c))); }
  static ColourSet of(std::initializer_list<Colour> cs) {
    ColourSet s;
    for (Colour c : cs) s.add(c);
    return s;
  }
  static ColourSet all() { return ColourSet(7); }

  void add(Colour c) { bits_ |= std::uint8_t(1u << index(c)); }
  void remove(Colour c) { bits_ &= std::uint8_t(~(1u << index(c))); }
  bool has(Colour c) const { return bits_ & (1u << index(c)); }
  bool empty() const { return bits_ == 0; }
  int count() const {
    return int(bits_ & 1) + int((bits_ >> 1) & 1) + int((bits_ >> 2) & 1);
  }
  bool only(Colour c) const { return bits_ == (1u << index(c)); }
  std::uint8_t bits() const { return bits_; }

  // True if any member differs from c.
  bool has_other_than(Colour c) const {
    return (bits_ & ~std::uint8_t(1u << index(c))) != 0;
  }

  template <class F>
  void for_each(F f) const {
    for (Colour c : kColours)
      if (has(c)) f(c);
  }

  friend bool operator==(ColourSet a, ColourSet b) { return a.bits_ == b.bits_; }

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace ramsey
