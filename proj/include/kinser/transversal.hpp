#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

/// A finite family (A_1, ..., A_k) of subsets of {0..m-1}.
struct SetSystem {
  int m = 0;
  std::vector<SubsetMask> family;

  void check() const {
    if (m < 1 || m > kMaxGround) {
      throw SizeCapError("ground size " + std::to_string(m) + " outside 1.." + std::to_string(kMaxGround));
    }
    for (SubsetMask a : family) {
      if ((a & ~full_mask(m)) != 0) throw InvalidSubset(a, m);
    }
  }
};

namespace detail {

/// Kuhn-style augmenting path from element e; owner[k] is the element matched to set k.
inline bool augment(const std::vector<SubsetMask>& family, int e, std::vector<int>& owner,
                    std::vector<char>& seen) {
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (!contains(family[k], e) || seen[k]) continue;
    seen[k] = 1;
    if (owner[k] < 0 || augment(family, owner[k], owner, seen)) {
      owner[k] = e;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// The transversal matroid of S: X is independent iff it can be matched injectively into
/// the family with x matched to some A_j containing x. Rank is the maximum matching size.
inline Matroid transversal(const SetSystem& S, std::string label = {}) {
  S.check();
  const int m = S.m;
  const std::size_t k = S.family.size();
  std::vector<std::uint8_t> table(std::size_t{1} << m, 0);

  // A maximum matching of X stays maximum for X + e unless e admits an augmenting path,
  // so a depth-first walk over subsets carries one matching per level.
  std::vector<int> owners((static_cast<std::size_t>(m) + 1) * k, -1);
  std::vector<SubsetMask> set(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> size(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> next(static_cast<std::size_t>(m) + 1, 0);
  std::vector<char> seen(k);
  std::vector<int> owner(k);
  int depth = 0;
  while (depth >= 0) {
    const auto d = static_cast<std::size_t>(depth);
    if (next[d] >= m) {
      --depth;
      continue;
    }
    const int e = next[d]++;
    std::copy_n(owners.begin() + static_cast<std::ptrdiff_t>(d * k), k, owner.begin());
    std::fill(seen.begin(), seen.end(), 0);
    const int grown = size[d] + (detail::augment(S.family, e, owner, seen) ? 1 : 0);
    const SubsetMask x = set[d] | bit(e);
    table[x] = static_cast<std::uint8_t>(grown);
    std::copy_n(owner.begin(), k, owners.begin() + static_cast<std::ptrdiff_t>((d + 1) * k));
    set[d + 1] = x;
    size[d + 1] = grown;
    next[d + 1] = e + 1;
    ++depth;
  }
  return Matroid::from_table(m, std::move(table), std::move(label));
}

}  // namespace kinser
