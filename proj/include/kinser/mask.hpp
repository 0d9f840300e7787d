#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace kinser {

/// Subset of the ground set {0, ..., m-1}; bit i set means element i is present.
using SubsetMask = std::uint32_t;
using ElementId = int;

/// Largest supported ground set. Rank tables hold 2^m bytes.
inline constexpr int kMaxGround = 24;

constexpr SubsetMask full_mask(int m) noexcept {
  return m >= 32 ? ~SubsetMask{0} : ((SubsetMask{1} << m) - 1);
}

constexpr SubsetMask bit(ElementId e) noexcept { return SubsetMask{1} << e; }

constexpr int popcount(SubsetMask x) noexcept { return std::popcount(x); }

constexpr bool contains(SubsetMask set, ElementId e) noexcept {
  return (set >> e) & 1U;
}

constexpr bool is_subset(SubsetMask sub, SubsetMask super) noexcept {
  return (sub & ~super) == 0;
}

inline SubsetMask mask_of(std::initializer_list<ElementId> elements) {
  SubsetMask x = 0;
  for (ElementId e : elements) x |= bit(e);
  return x;
}

inline SubsetMask mask_of(const std::vector<ElementId>& elements) {
  SubsetMask x = 0;
  for (ElementId e : elements) x |= bit(e);
  return x;
}

inline std::vector<ElementId> elements_of(SubsetMask x) {
  std::vector<ElementId> out;
  out.reserve(static_cast<std::size_t>(popcount(x)));
  while (x != 0) {
    out.push_back(std::countr_zero(x));
    x &= x - 1;
  }
  return out;
}

/// Comma-separated element list; the empty set prints as "-".
inline std::string format_mask(SubsetMask x) {
  if (x == 0) return "-";
  std::string out;
  bool first = true;
  while (x != 0) {
    if (!first) out += ',';
    out += std::to_string(std::countr_zero(x));
    first = false;
    x &= x - 1;
  }
  return out;
}

/// Inserts a zero bit at position `pos`, shifting higher bits up by one.
constexpr SubsetMask insert_zero_bit(SubsetMask x, int pos) noexcept {
  const SubsetMask low = x & (bit(pos) - 1);
  const SubsetMask high = x & ~(bit(pos) - 1);
  return low | (high << 1);
}

/// Removes bit `pos`, shifting higher bits down by one.
constexpr SubsetMask remove_bit(SubsetMask x, int pos) noexcept {
  const SubsetMask low = x & (bit(pos) - 1);
  const SubsetMask high = (x >> 1) & ~(bit(pos) - 1);
  return low | high;
}

}  // namespace kinser
