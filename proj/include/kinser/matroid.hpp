#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/layout.hpp"
#include "kinser/mask.hpp"

namespace kinser {

/// Ground sizes up to this bound get an exhaustive R1-R3 scan at construction;
/// larger tables are checked on a fixed pseudo-random sample.
inline constexpr int kEagerValidationLimit = 16;

namespace detail {

inline std::optional<Violation> check_rank_at(int m, std::span<const std::uint8_t> t, SubsetMask x) {
  const int rx = t[x];
  if (rx > popcount(x)) {
    return Violation{"R1", {x}, "rank " + std::to_string(rx) + " exceeds cardinality"};
  }
  for (int a = 0; a < m; ++a) {
    if (contains(x, a)) continue;
    const SubsetMask xa = x | bit(a);
    if (t[xa] < rx) return Violation{"R2", {x, xa}, "rank decreases on a superset"};
    for (int b = a + 1; b < m; ++b) {
      if (contains(x, b)) continue;
      const SubsetMask xb = x | bit(b);
      if (t[xa] + t[xb] < t[xa | xb] + rx) {
        return Violation{"R3", {xa, xb}, "r(X u Y) + r(X n Y) > r(X) + r(Y)"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks R1-R3 on a full rank table. Monotonicity and submodularity are tested
/// through their single-element forms, which imply the general statements.
/// With `sampled`, R2/R3 are only checked on a deterministic sample of subsets.
inline std::optional<Violation> check_rank_table(int m, std::span<const std::uint8_t> t, bool sampled = false) {
  if (t.size() != (std::size_t{1} << m)) {
    return Violation{"R1", {}, "table has " + std::to_string(t.size()) + " entries, expected 2^" +
                                   std::to_string(m)};
  }
  if (t[0] != 0) return Violation{"R1", {0}, "rank of the empty set is not 0"};
  const SubsetMask full = full_mask(m);
  if (!sampled) {
    for (SubsetMask x = 0;; ++x) {
      if (auto v = detail::check_rank_at(m, t, x)) return v;
      if (x == full) break;
    }
    return std::nullopt;
  }
  for (SubsetMask x = 0;; ++x) {
    if (t[x] > popcount(x)) return Violation{"R1", {x}, "rank exceeds cardinality"};
    if (x == full) break;
  }
  std::mt19937_64 rng(0x6b696e736572ULL);
  std::uniform_int_distribution<SubsetMask> pick(0, full);
  for (int i = 0; i < (1 << 16); ++i) {
    if (auto v = detail::check_rank_at(m, t, pick(rng))) return v;
  }
  return std::nullopt;
}

/// A matroid on {0..m-1} stored as its full rank table. Immutable; copies share the table.
class Matroid {
 public:
  static Matroid from_table(int m, std::vector<std::uint8_t> table, std::string label = {},
                            std::optional<PartLayout> layout = std::nullopt) {
    if (m < 1 || m > kMaxGround) {
      throw SizeCapError("ground size " + std::to_string(m) + " outside 1.." + std::to_string(kMaxGround));
    }
    if (auto v = check_rank_table(m, table, m > kEagerValidationLimit)) throw NotAMatroid(*v);
    return Matroid(m, std::make_shared<const std::vector<std::uint8_t>>(std::move(table)), std::move(label),
                   std::move(layout));
  }

  /// Builds the table from a rank callback evaluated on every subset.
  template <class RankFn>
  static Matroid tabulate(int m, RankFn&& fn, std::string label = {},
                          std::optional<PartLayout> layout = std::nullopt) {
    if (m < 1 || m > kMaxGround) {
      throw SizeCapError("ground size " + std::to_string(m) + " outside 1.." + std::to_string(kMaxGround));
    }
    std::vector<std::uint8_t> table(std::size_t{1} << m);
    for (std::size_t x = 0; x < table.size(); ++x) {
      table[x] = static_cast<std::uint8_t>(fn(static_cast<SubsetMask>(x)));
    }
    return from_table(m, std::move(table), std::move(label), std::move(layout));
  }

  int size() const noexcept { return m_; }
  SubsetMask ground() const noexcept { return full_mask(m_); }
  int rank() const noexcept { return (*table_)[ground()]; }

  int rank(SubsetMask x) const {
    check(x);
    return (*table_)[x];
  }

  /// Table lookup without the width check; callers guarantee x is within the ground set.
  int rank_unchecked(SubsetMask x) const noexcept { return (*table_)[x]; }

  std::span<const std::uint8_t> table() const noexcept { return *table_; }

  void check(SubsetMask x) const {
    if ((x & ~ground()) != 0) throw InvalidSubset(x, m_);
  }

  const std::string& label() const noexcept { return label_; }
  const std::optional<PartLayout>& layout() const noexcept { return layout_; }

  Matroid relabeled(std::string label) const {
    Matroid out = *this;
    out.label_ = std::move(label);
    return out;
  }

  Matroid with_layout(std::optional<PartLayout> layout) const {
    Matroid out = *this;
    out.layout_ = std::move(layout);
    return out;
  }

  /// Table equality; labels and layouts are ignored.
  friend bool operator==(const Matroid& a, const Matroid& b) {
    if (a.m_ != b.m_) return false;
    return a.table_ == b.table_ || *a.table_ == *b.table_;
  }

 private:
  Matroid(int m, std::shared_ptr<const std::vector<std::uint8_t>> table, std::string label,
          std::optional<PartLayout> layout)
      : m_(m), table_(std::move(table)), label_(std::move(label)), layout_(std::move(layout)) {}

  int m_;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
  std::string label_;
  std::optional<PartLayout> layout_;
};

inline int rank(const Matroid& M, SubsetMask x) { return M.rank(x); }

/// X together with every element whose addition leaves the rank unchanged.
inline SubsetMask closure(const Matroid& M, SubsetMask x) {
  const int rx = M.rank(x);
  SubsetMask cl = x;
  for (int e = 0; e < M.size(); ++e) {
    if (!contains(x, e) && M.rank_unchecked(x | bit(e)) == rx) cl |= bit(e);
  }
  return cl;
}

inline bool is_flat(const Matroid& M, SubsetMask x) {
  const int rx = M.rank(x);
  for (int e = 0; e < M.size(); ++e) {
    if (!contains(x, e) && M.rank_unchecked(x | bit(e)) == rx) return false;
  }
  return true;
}

inline bool is_circuit(const Matroid& M, SubsetMask x) {
  const int size = popcount(x);
  if (x == 0 || M.rank(x) != size - 1) return false;
  for (SubsetMask rest = x; rest != 0; rest &= rest - 1) {
    const SubsetMask without = x & ~(rest & -rest);
    if (M.rank_unchecked(without) != size - 1) return false;
  }
  return true;
}

struct SetClass {
  bool independent = false;
  bool dependent = false;
  bool spanning = false;
  bool basis = false;
  bool flat = false;
  bool circuit = false;
  bool hyperplane = false;
  bool circuit_hyperplane = false;
  bool loop = false;
  bool coloop = false;
};

inline SetClass classify(const Matroid& M, SubsetMask x) {
  SetClass c;
  const int rx = M.rank(x);
  const int size = popcount(x);
  c.independent = rx == size;
  c.dependent = !c.independent;
  c.spanning = rx == M.rank();
  c.basis = c.independent && c.spanning;
  c.flat = is_flat(M, x);
  c.circuit = is_circuit(M, x);
  c.hyperplane = c.flat && rx == M.rank() - 1;
  c.circuit_hyperplane = c.circuit && c.hyperplane;
  if (size == 1) {
    c.loop = rx == 0;
    c.coloop = M.rank_unchecked(M.ground() & ~x) == M.rank() - 1;
  }
  return c;
}

enum class SetKind { flats, circuits, bases, hyperplanes, circuit_hyperplanes };

/// Every subset of the given kind, ascending by mask value.
inline std::vector<SubsetMask> enumerate(const Matroid& M, SetKind kind) {
  std::vector<SubsetMask> out;
  const SubsetMask full = M.ground();
  const int r = M.rank();
  for (SubsetMask x = 0;; ++x) {
    const int rx = M.rank_unchecked(x);
    bool keep = false;
    switch (kind) {
      case SetKind::flats:
        keep = is_flat(M, x);
        break;
      case SetKind::circuits:
        // cheap rank filter first; it discards all but the minimal dependent sets quickly
        keep = rx == popcount(x) - 1 && is_circuit(M, x);
        break;
      case SetKind::bases:
        keep = rx == r && popcount(x) == r;
        break;
      case SetKind::hyperplanes:
        keep = rx == r - 1 && is_flat(M, x);
        break;
      case SetKind::circuit_hyperplanes:
        keep = rx == r - 1 && popcount(x) == r && is_circuit(M, x) && is_flat(M, x);
        break;
    }
    if (keep) out.push_back(x);
    if (x == full) break;
  }
  return out;
}

/// FNV-1a over the ground size and rank table, as 16 hex digits.
inline std::string content_fingerprint(const Matroid& M) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  mix(static_cast<std::uint8_t>(M.size()));
  for (std::uint8_t v : M.table()) mix(v);
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf.data());
}

}  // namespace kinser
