#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kinser/axioms.hpp"
#include "kinser/errors.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

/// Builds the rank-r matroid whose independent sets are the sets of size at most r
/// containing none of the listed circuits. The list must be an antichain of sets with
/// at most r+1 elements; it normally holds the non-spanning circuits.
inline Matroid matroid_from_circuits(int m, int r, std::span<const SubsetMask> circuits, std::string label = {},
                                     std::optional<PartLayout> layout = std::nullopt) {
  if (m < 1 || m > kMaxGround) {
    throw SizeCapError("ground size " + std::to_string(m) + " outside 1.." + std::to_string(kMaxGround));
  }
  if (r < 0 || r > m) throw PreconditionError("rank " + std::to_string(r) + " outside 0..m");
  for (SubsetMask c : circuits) {
    if ((c & ~full_mask(m)) != 0) throw InvalidSubset(c, m);
    if (c == 0) throw NotAMatroid(Violation{"C1", {0}, "the empty set is listed as a circuit"});
    if (popcount(c) > r + 1) {
      throw PreconditionError("circuit {" + format_mask(c) + "} has more than r+1 elements");
    }
  }
  auto dependent = detail::superset_closure(m, circuits);
  for (SubsetMask d : circuits) {
    for (SubsetMask rest = d; rest != 0; rest &= rest - 1) {
      const SubsetMask smaller = d & ~(rest & -rest);
      if (dependent[smaller]) {
        SubsetMask c = 0;
        for (SubsetMask cand : circuits) {
          if (is_subset(cand, smaller)) {
            c = cand;
            break;
          }
        }
        throw NotAMatroid(Violation{"C2", {c, d}, "listed circuits do not form an antichain"});
      }
    }
  }
  std::vector<std::uint8_t> indep(dependent.size());
  for (std::size_t x = 0; x < indep.size(); ++x) {
    indep[x] = !dependent[x] && popcount(static_cast<SubsetMask>(x)) <= r;
  }
  dependent = {};
  auto table = detail::rank_from_independence(m, indep);
  if (table.back() != r) {
    throw PreconditionError("circuits force rank " + std::to_string(table.back()) + ", declared " +
                            std::to_string(r));
  }
  return Matroid::from_table(m, std::move(table), std::move(label), std::move(layout));
}

inline Matroid matroid_from_circuits(int m, int r, const std::vector<SubsetMask>& circuits, std::string label = {},
                                     std::optional<PartLayout> layout = std::nullopt) {
  return matroid_from_circuits(m, r, std::span<const SubsetMask>(circuits), std::move(label), std::move(layout));
}

}  // namespace kinser
