#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/mask.hpp"

namespace kinser {

/// Named subsets attached to a catalog matroid (V1..Vr, e, f, a1..ar, b1..br, ...),
/// kept in insertion order.
class PartLayout {
 public:
  using Entry = std::pair<std::string, SubsetMask>;

  void set(std::string name, SubsetMask mask) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const Entry& e) { return e.first == name; });
    if (it != entries_.end()) {
      it->second = mask;
    } else {
      entries_.emplace_back(std::move(name), mask);
    }
  }

  std::optional<SubsetMask> find(std::string_view name) const {
    for (const auto& [n, m] : entries_) {
      if (n == name) return m;
    }
    return std::nullopt;
  }

  SubsetMask at(std::string_view name) const {
    if (auto m = find(name)) return *m;
    throw PreconditionError("layout has no part named '" + std::string(name) + "'");
  }

  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  friend bool operator==(const PartLayout&, const PartLayout&) = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace kinser
