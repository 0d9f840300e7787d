#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/layout.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

/// A derived matroid plus, for every old element, its new index (-1 when removed).
struct Reindexed {
  Matroid matroid;
  std::vector<int> index_map;
};

namespace detail {

inline void check_element(const Matroid& M, ElementId e) {
  if (e < 0 || e >= M.size()) throw InvalidElement(e, M.size());
}

inline std::optional<PartLayout> drop_from_layout(const std::optional<PartLayout>& layout, ElementId e) {
  if (!layout) return std::nullopt;
  PartLayout out;
  for (const auto& [name, mask] : layout->entries()) out.set(name, remove_bit(mask & ~bit(e), e));
  return out;
}

inline Reindexed remove_element(const Matroid& M, ElementId e, bool contract_it) {
  check_element(M, e);
  const int m = M.size();
  if (m < 2) throw PreconditionError("cannot remove the only element of the ground set");
  const int re = contract_it ? M.rank_unchecked(bit(e)) : 0;
  const SubsetMask add = contract_it ? bit(e) : 0;
  std::vector<std::uint8_t> table(std::size_t{1} << (m - 1));
  for (SubsetMask x = 0; x < table.size(); ++x) {
    table[x] = static_cast<std::uint8_t>(M.rank_unchecked(insert_zero_bit(x, e) | add) - re);
  }
  std::vector<int> map(m);
  for (int i = 0; i < m; ++i) map[i] = i < e ? i : (i == e ? -1 : i - 1);
  std::string label = M.label().empty() ? std::string{} : M.label() + (contract_it ? "/" : "\\") + std::to_string(e);
  return {Matroid::from_table(m - 1, std::move(table), std::move(label), drop_from_layout(M.layout(), e)),
          std::move(map)};
}

}  // namespace detail

/// M \ e: r'(X) = r(X) on the remaining elements, which shift down past e.
inline Reindexed delete_element(const Matroid& M, ElementId e) { return detail::remove_element(M, e, false); }

/// M / e: r'(X) = r(X + e) - r({e}).
inline Reindexed contract_element(const Matroid& M, ElementId e) { return detail::remove_element(M, e, true); }

/// Contracts every element of `contractions`, then deletes every element of `deletions`.
/// Indices in both masks refer to M.
inline Reindexed minor(const Matroid& M, SubsetMask deletions, SubsetMask contractions) {
  M.check(deletions);
  M.check(contractions);
  if ((deletions & contractions) != 0) {
    throw PreconditionError("deletion and contraction sets overlap in {" + format_mask(deletions & contractions) +
                            "}");
  }
  if ((deletions | contractions) == M.ground()) throw PreconditionError("minor would remove every element");
  Matroid cur = M;
  std::vector<int> map(M.size());
  for (int i = 0; i < M.size(); ++i) map[i] = i;
  auto apply = [&](ElementId old, bool contract_it) {
    const int at = map[old];
    Reindexed step = detail::remove_element(cur, at, contract_it);
    for (int& v : map) {
      if (v >= 0) v = step.index_map[v];
    }
    cur = std::move(step.matroid);
  };
  for (ElementId e : elements_of(contractions)) apply(e, true);
  for (ElementId e : elements_of(deletions)) apply(e, false);
  return {std::move(cur), std::move(map)};
}

/// r*(X) = |X| + r(E - X) - r(M).
inline Matroid dual(const Matroid& M) {
  const SubsetMask full = M.ground();
  const int r = M.rank();
  std::vector<std::uint8_t> table(std::size_t{1} << M.size());
  for (SubsetMask x = 0; x < table.size(); ++x) {
    table[x] = static_cast<std::uint8_t>(popcount(x) + M.rank_unchecked(full & ~x) - r);
  }
  std::string label = M.label().empty() ? std::string{} : "(" + M.label() + ")*";
  return Matroid::from_table(M.size(), std::move(table), std::move(label), M.layout());
}

struct DirectSum {
  Matroid matroid;
  std::vector<int> first_map;
  std::vector<int> second_map;
};

/// M1 on elements 0..m1-1, M2 shifted to m1..m1+m2-1.
inline DirectSum direct_sum(const Matroid& M1, const Matroid& M2) {
  const int m1 = M1.size();
  const int m = m1 + M2.size();
  if (m > kMaxGround) throw SizeCapError("direct sum has " + std::to_string(m) + " elements, cap is 24");
  const SubsetMask low = M1.ground();
  std::vector<std::uint8_t> table(std::size_t{1} << m);
  for (SubsetMask x = 0; x < table.size(); ++x) {
    table[x] = static_cast<std::uint8_t>(M1.rank_unchecked(x & low) + M2.rank_unchecked(x >> m1));
  }
  std::optional<PartLayout> layout;
  if (M1.layout() || M2.layout()) {
    layout.emplace();
    if (M1.layout()) {
      for (const auto& [name, mask] : M1.layout()->entries()) layout->set(name, mask);
    }
    if (M2.layout()) {
      for (const auto& [name, mask] : M2.layout()->entries()) {
        std::string n = name;
        while (layout->find(n)) n += "'";
        layout->set(n, mask << m1);
      }
    }
  }
  std::string label;
  if (!M1.label().empty() || !M2.label().empty()) label = M1.label() + " + " + M2.label();
  std::vector<int> first(m1), second(M2.size());
  for (int i = 0; i < m1; ++i) first[i] = i;
  for (int i = 0; i < M2.size(); ++i) second[i] = m1 + i;
  return {Matroid::from_table(m, std::move(table), std::move(label), std::move(layout)), std::move(first),
          std::move(second)};
}

/// Makes the circuit-hyperplane H a basis. Only r(H) changes.
inline Matroid relax(const Matroid& M, SubsetMask H) {
  if (!classify(M, H).circuit_hyperplane) {
    throw PreconditionError("{" + format_mask(H) + "} is not a circuit-hyperplane");
  }
  std::vector<std::uint8_t> table(M.table().begin(), M.table().end());
  table[H] = static_cast<std::uint8_t>(M.rank());
  return Matroid::from_table(M.size(), std::move(table), M.label(), M.layout());
}

/// Inverse of relax: lowers r(H) by one for a basis H, provided the result is a matroid.
inline Matroid tighten(const Matroid& M, SubsetMask H) {
  if (!classify(M, H).basis) throw PreconditionError("{" + format_mask(H) + "} is not a basis");
  std::vector<std::uint8_t> table(M.table().begin(), M.table().end());
  table[H] = static_cast<std::uint8_t>(M.rank() - 1);
  if (auto v = check_rank_table(M.size(), table, M.size() > kEagerValidationLimit)) throw NotTightenable(H, *v);
  return Matroid::from_table(M.size(), std::move(table), M.label(), M.layout());
}

/// r'(X) = min(r(X), r(M) - 1).
inline Matroid truncate(const Matroid& M) {
  const int r = M.rank();
  if (r < 1) throw PreconditionError("cannot truncate a rank-0 matroid");
  std::vector<std::uint8_t> table(M.table().begin(), M.table().end());
  for (auto& v : table) v = std::min<std::uint8_t>(v, static_cast<std::uint8_t>(r - 1));
  return Matroid::from_table(M.size(), std::move(table), M.label(), M.layout());
}

}  // namespace kinser
