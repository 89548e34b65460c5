#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace palette {

inline constexpr int kMaxColors = 64;

// A color label 1..k.
class Color {
 public:
  constexpr explicit Color(int value) : value_(value) {}

  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(Color, Color) = default;

 private:
  int value_;
};

// Set of colors drawn from 1..kMaxColors, stored as a bitmask (bit c-1 for
// color c).
class ColorSet {
 public:
  constexpr ColorSet() = default;

  // The colors lo..hi inclusive; empty when lo > hi.
  static constexpr ColorSet range(int lo, int hi) {
    ColorSet s;
    for (int c = lo; c <= hi; ++c) s.insert(Color(c));
    return s;
  }
  static constexpr ColorSet full(int k) { return range(1, k); }
  static constexpr ColorSet from_bits(std::uint64_t bits) {
    ColorSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr bool contains(Color c) const { return (bits_ >> (c.value() - 1)) & 1u; }
  constexpr void insert(Color c) { bits_ |= bit(c); }
  constexpr void erase(Color c) { bits_ &= ~bit(c); }

  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  // Colors of 1..k not in this set.
  constexpr ColorSet complement(int k) const { return from_bits(full(k).bits_ & ~bits_); }

  constexpr std::optional<Color> lowest() const {
    if (empty()) return std::nullopt;
    return Color(std::countr_zero(bits_) + 1);
  }
  constexpr std::optional<Color> highest() const {
    if (empty()) return std::nullopt;
    return Color(64 - std::countl_zero(bits_));
  }

  std::vector<Color> to_vector() const {
    std::vector<Color> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.emplace_back(std::countr_zero(b) + 1);
    return out;
  }

  friend constexpr ColorSet operator|(ColorSet a, ColorSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr ColorSet operator&(ColorSet a, ColorSet b) { return from_bits(a.bits_ & b.bits_); }
  friend constexpr bool operator==(ColorSet, ColorSet) = default;

 private:
  static constexpr std::uint64_t bit(Color c) { return std::uint64_t{1} << (c.value() - 1); }

  std::uint64_t bits_ = 0;
};

// Throws ParameterError unless 1 <= k <= kMaxColors.
void require_valid_k(int k);

}  // namespace palette
