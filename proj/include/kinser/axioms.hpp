#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/mask.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

enum class AxiomSystem { rank, closure, circuits, independence };

/// Exhaustive axiom scans are limited to this ground size.
inline constexpr int kAxiomScanLimit = 16;

namespace detail {

inline void require_scan_size(int m) {
  if (m < 1 || m > kAxiomScanLimit) {
    throw SizeCapError("exhaustive axiom scans need 1 <= m <= " + std::to_string(kAxiomScanLimit) +
                       ", got m = " + std::to_string(m));
  }
}

/// contains_member[X] is true iff some listed set is a subset of X.
inline std::vector<std::uint8_t> superset_closure(int m, std::span<const SubsetMask> sets) {
  std::vector<std::uint8_t> marked(std::size_t{1} << m, 0);
  for (SubsetMask s : sets) marked[s] = 1;
  for (int i = 0; i < m; ++i) {
    for (std::size_t x = 0; x < marked.size(); ++x) {
      if ((x >> i) & 1U) marked[x] |= marked[x ^ (std::size_t{1} << i)];
    }
  }
  return marked;
}

/// Largest-independent-subset sizes for a downward-closed family given by `indep`.
inline std::vector<std::uint8_t> rank_from_independence(int m, const std::vector<std::uint8_t>& indep) {
  std::vector<std::uint8_t> rk(indep.size(), 0);
  for (std::size_t x = 1; x < rk.size(); ++x) {
    if (indep[x]) {
      rk[x] = static_cast<std::uint8_t>(popcount(static_cast<SubsetMask>(x)));
      continue;
    }
    std::uint8_t best = 0;
    for (int i = 0; i < m; ++i) {
      if ((x >> i) & 1U) best = std::max(best, rk[x ^ (std::size_t{1} << i)]);
    }
    rk[x] = best;
  }
  return rk;
}

/// I1-I3 on a family given by its indicator over all 2^m subsets.
/// I3 is tested in its maximal-set form: for each independent I, the set of elements that
/// can be added to I is computed; if the complement of that set has an independent subset
/// larger than I, the two sets witness the failure of augmentation.
inline std::optional<Violation> check_independence_family(int m, const std::vector<std::uint8_t>& indep) {
  if (!indep[0]) return Violation{"I1", {0}, "empty set is not independent"};
  const SubsetMask full = full_mask(m);
  for (SubsetMask x = 1;; ++x) {
    if (indep[x]) {
      for (SubsetMask rest = x; rest != 0; rest &= rest - 1) {
        const SubsetMask sub = x & ~(rest & -rest);
        if (!indep[sub]) return Violation{"I2", {x, sub}, "subset of an independent set is dependent"};
      }
    }
    if (x == full) break;
  }
  const auto rk = rank_from_independence(m, indep);
  for (SubsetMask x = 0;; ++x) {
    if (indep[x]) {
      SubsetMask extendable = 0;
      for (int e = 0; e < m; ++e) {
        if (!contains(x, e) && indep[x | bit(e)]) extendable |= bit(e);
      }
      const SubsetMask blocked = full & ~extendable;
      if (rk[blocked] > popcount(x)) {
        // peel elements off until an independent set of the larger size remains
        SubsetMask j = blocked;
        while (!indep[j]) {
          for (SubsetMask rest = j; rest != 0; rest &= rest - 1) {
            const SubsetMask low = rest & -rest;
            if (rk[j & ~low] == rk[j]) {
              j &= ~low;
              break;
            }
          }
        }
        return Violation{"I3", {x, j}, "no element of J - I extends I"};
      }
    }
    if (x == full) break;
  }
  return std::nullopt;
}

inline std::optional<Violation> check_closure_from_table(int m, std::span<const std::uint8_t> t) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<SubsetMask> cl(n);
  for (SubsetMask x = 0; x < n; ++x) {
    SubsetMask c = x;
    for (int e = 0; e < m; ++e) {
      if (!contains(x, e) && t[x | bit(e)] == t[x]) c |= bit(e);
    }
    cl[x] = c;
  }
  for (SubsetMask x = 0; x < n; ++x) {
    if (!is_subset(x, cl[x])) return Violation{"CL1", {x, cl[x]}, "X not contained in cl(X)"};
    if (cl[cl[x]] != cl[x]) return Violation{"CL3", {x, cl[x]}, "cl(cl(X)) != cl(X)"};
    for (int a = 0; a < m; ++a) {
      if (contains(x, a)) continue;
      const SubsetMask xa = x | bit(a);
      if (!is_subset(cl[x], cl[xa])) return Violation{"CL2", {x, xa}, "closure not monotone"};
      const SubsetMask gained = cl[xa] & ~cl[x];
      for (SubsetMask rest = gained; rest != 0; rest &= rest - 1) {
        const SubsetMask y = rest & -rest;
        if (!is_subset(bit(a), cl[x | y])) {
          return Violation{"CL4", {x, bit(a), y}, "exchange property fails"};
        }
      }
    }
  }
  return std::nullopt;
}

inline std::vector<SubsetMask> circuits_from_table(int m, std::span<const std::uint8_t> t) {
  std::vector<SubsetMask> out;
  const std::size_t n = std::size_t{1} << m;
  for (SubsetMask x = 1; x < n; ++x) {
    const int size = popcount(x);
    if (t[x] != size - 1) continue;
    bool minimal = true;
    for (SubsetMask rest = x; rest != 0 && minimal; rest &= rest - 1) {
      minimal = t[x & ~(rest & -rest)] == size - 1;
    }
    if (minimal) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// C1-C3 on an explicit circuit list.
inline std::optional<Violation> check_circuit_axioms(int m, std::span<const SubsetMask> circuits) {
  for (SubsetMask c : circuits) {
    if ((c & ~full_mask(m)) != 0) throw InvalidSubset(c, m);
    if (c == 0) return Violation{"C1", {0}, "the empty set is listed as a circuit"};
  }
  const auto has_member = detail::superset_closure(m, circuits);
  for (SubsetMask d : circuits) {
    for (SubsetMask rest = d; rest != 0; rest &= rest - 1) {
      const SubsetMask smaller = d & ~(rest & -rest);
      if (has_member[smaller]) {
        SubsetMask c = 0;
        for (SubsetMask cand : circuits) {
          if (is_subset(cand, smaller)) {
            c = cand;
            break;
          }
        }
        return Violation{"C2", {c, d}, "one circuit properly contains another"};
      }
    }
  }
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    for (std::size_t j = i + 1; j < circuits.size(); ++j) {
      const SubsetMask c = circuits[i];
      const SubsetMask d = circuits[j];
      if (c == d) continue;
      const SubsetMask u = c | d;
      for (SubsetMask rest = c & d; rest != 0; rest &= rest - 1) {
        const SubsetMask e = rest & -rest;
        if (!has_member[u & ~e]) {
          return Violation{"C3", {c, d, e}, "(C u D) - e contains no circuit"};
        }
      }
    }
  }
  return std::nullopt;
}

/// Exhaustively checks one axiom system for the matroid described by a rank table.
/// Circuits and independent sets are derived from the table.
inline std::optional<Violation> validate_axioms(int m, std::span<const std::uint8_t> table, AxiomSystem which) {
  detail::require_scan_size(m);
  if (table.size() != (std::size_t{1} << m)) {
    return Violation{"R1", {}, "table size does not match 2^m"};
  }
  switch (which) {
    case AxiomSystem::rank:
      return check_rank_table(m, table, false);
    case AxiomSystem::closure:
      return detail::check_closure_from_table(m, table);
    case AxiomSystem::circuits: {
      const auto cs = detail::circuits_from_table(m, table);
      return check_circuit_axioms(m, cs);
    }
    case AxiomSystem::independence: {
      std::vector<std::uint8_t> indep(table.size());
      for (SubsetMask x = 0; x < table.size(); ++x) indep[x] = table[x] == popcount(x);
      return detail::check_independence_family(m, indep);
    }
  }
  return std::nullopt;
}

inline std::optional<Violation> validate_axioms(const Matroid& M, AxiomSystem which) {
  return validate_axioms(M.size(), M.table(), which);
}

/// Axiom scan for a matroid given by its circuits. The independence system is
/// "contains no listed circuit".
inline std::optional<Violation> validate_axioms(int m, std::span<const SubsetMask> circuits, AxiomSystem which) {
  detail::require_scan_size(m);
  switch (which) {
    case AxiomSystem::circuits:
      return check_circuit_axioms(m, circuits);
    case AxiomSystem::independence: {
      for (SubsetMask c : circuits) {
        if ((c & ~full_mask(m)) != 0) throw InvalidSubset(c, m);
      }
      auto indep = detail::superset_closure(m, circuits);
      for (auto& v : indep) v = !v;
      return detail::check_independence_family(m, indep);
    }
    case AxiomSystem::rank:
    case AxiomSystem::closure: {
      if (auto v = check_circuit_axioms(m, circuits)) return v;
      auto indep = detail::superset_closure(m, circuits);
      for (auto& v : indep) v = !v;
      const auto rk = detail::rank_from_independence(m, indep);
      return validate_axioms(m, std::span<const std::uint8_t>(rk), which);
    }
  }
  return std::nullopt;
}

}  // namespace kinser
