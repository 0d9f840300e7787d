#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

/// X_1..X_n for inequality n (n >= 4). Sets may be empty or repeated.
struct Family {
  int n = 0;
  std::vector<SubsetMask> sets;

  Family() = default;
  explicit Family(std::vector<SubsetMask> s) : n(static_cast<int>(s.size())), sets(std::move(s)) {}

  /// 1-based access, matching the X_i naming.
  SubsetMask x(int i) const { return sets[static_cast<std::size_t>(i - 1)]; }

  friend bool operator==(const Family&, const Family&) = default;
  friend auto operator<=>(const Family& a, const Family& b) { return a.sets <=> b.sets; }
};

enum class Side { lhs, rhs };
enum class TermKind { single, pair, triple };

inline const char* to_string(Side s) { return s == Side::lhs ? "lhs" : "rhs"; }
inline const char* to_string(TermKind k) {
  switch (k) {
    case TermKind::single:
      return "single";
    case TermKind::pair:
      return "pair";
    case TermKind::triple:
      return "triple";
  }
  return "?";
}

struct Term {
  Side side;
  TermKind kind;
  std::vector<int> indices;  // which X_i form the union, 1-based
  SubsetMask mask = 0;
  int rank = 0;

  std::string name() const {
    std::string out;
    for (int i : indices) {
      if (!out.empty()) out += '+';
      out += "X" + std::to_string(i);
    }
    return out;
  }
};

struct InequalityValue {
  int lhs = 0;
  int rhs = 0;
  std::vector<Term> terms;

  bool satisfied() const noexcept { return lhs <= rhs; }
  int margin() const noexcept { return lhs - rhs; }
};

inline void check_family(const Matroid& M, const Family& fam) {
  if (fam.n < 4) throw PreconditionError("Kinser inequalities need n >= 4, got " + std::to_string(fam.n));
  if (static_cast<int>(fam.sets.size()) != fam.n) throw PreconditionError("family length differs from n");
  for (SubsetMask x : fam.sets) M.check(x);
}

/// The term skeleton of inequality n, in display order, without ranks.
///   lhs: r(X_i) for i = 3..n, r(X1 u X2), r(X1 u X3 u Xn), r(X2 u X_{i-1} u X_i) for i = 4..n
///   rhs: r(X1 u X3), r(X1 u Xn), r(X2 u X_i) for i = 3..n, r(X_{i-1} u X_i) for i = 4..n
inline std::vector<Term> kinser_terms(const Family& fam) {
  if (fam.n < 4) throw PreconditionError("Kinser inequalities need n >= 4, got " + std::to_string(fam.n));
  const int n = fam.n;
  std::vector<Term> t;
  auto add = [&](Side side, std::vector<int> idx) {
    SubsetMask mask = 0;
    for (int i : idx) mask |= fam.x(i);
    const auto kind = idx.size() == 1 ? TermKind::single : idx.size() == 2 ? TermKind::pair : TermKind::triple;
    t.push_back(Term{side, kind, std::move(idx), mask, 0});
  };
  for (int i = 3; i <= n; ++i) add(Side::lhs, {i});
  add(Side::lhs, {1, 2});
  add(Side::lhs, {1, 3, n});
  for (int i = 4; i <= n; ++i) add(Side::lhs, {2, i - 1, i});
  add(Side::rhs, {1, 3});
  add(Side::rhs, {1, n});
  for (int i = 3; i <= n; ++i) add(Side::rhs, {2, i});
  for (int i = 4; i <= n; ++i) add(Side::rhs, {i - 1, i});
  return t;
}

inline InequalityValue evaluate(const Matroid& M, const Family& fam) {
  check_family(M, fam);
  InequalityValue v;
  v.terms = kinser_terms(fam);
  for (Term& t : v.terms) {
    t.rank = M.rank_unchecked(t.mask);
    (t.side == Side::lhs ? v.lhs : v.rhs) += t.rank;
  }
  return v;
}

enum class Reduction { closure, basis };

/// Greedy basis of X scanning elements in ascending order (the lexicographically least one).
inline SubsetMask least_basis(const Matroid& M, SubsetMask x) {
  SubsetMask b = 0;
  for (ElementId e : elements_of(x)) {
    if (M.rank_unchecked(b | bit(e)) > popcount(b)) b |= bit(e);
  }
  return b;
}

/// Replaces every X_i by its closure or by a basis of it; all term ranks are unchanged.
inline Family reduce_family(const Matroid& M, const Family& fam, Reduction mode) {
  check_family(M, fam);
  Family out = fam;
  for (SubsetMask& x : out.sets) x = mode == Reduction::closure ? closure(M, x) : least_basis(M, x);
  return out;
}

/// Inequality n+1 family with X_{n+1} = X_n.
inline Family extend_family(const Family& fam) {
  if (fam.n < 4) throw PreconditionError("Kinser inequalities need n >= 4, got " + std::to_string(fam.n));
  Family out = fam;
  out.sets.push_back(fam.sets.back());
  out.n = fam.n + 1;
  return out;
}

// ---- canonical families ----------------------------------------------------

/// (V1, ..., Vr) from a Kinser layout.
inline Family canonical_kinser_family(const Matroid& M) {
  if (!M.layout()) throw PreconditionError("matroid has no part layout");
  std::vector<SubsetMask> sets;
  for (int i = 1;; ++i) {
    auto v = M.layout()->find("V" + std::to_string(i));
    if (!v) break;
    sets.push_back(*v);
  }
  if (sets.size() < 4) throw PreconditionError("layout does not name V1..Vr with r >= 4");
  return Family(std::move(sets));
}

/// For a spike circuit-hyperplane Z: X1 = Z n A, X2 = Z n B, X3 = {b_i : a_i in Z}, X4 = {a_j : b_j in Z}.
inline Family canonical_spike_family(const Matroid& M, SubsetMask Z) {
  if (!M.layout() || !M.layout()->find("A") || !M.layout()->find("B")) {
    throw PreconditionError("matroid has no spike layout");
  }
  M.check(Z);
  const int r = M.size() / 2;
  const SubsetMask A = M.layout()->at("A");
  const SubsetMask B = M.layout()->at("B");
  const SubsetMask za = Z & A;
  const SubsetMask zb = (Z & B) >> r;
  if ((za & zb) != 0 || (za | zb) != full_mask(r) || popcount(zb) % 2 != 0) {
    throw PreconditionError("{" + format_mask(Z) + "} is not an even transversal of the legs");
  }
  if (za == 0 || zb == 0) throw PreconditionError("Z must meet both A and B");
  return Family({za, zb << r, za << r, zb});
}

// ---- corank arithmetic -----------------------------------------------------

struct CorankTerm {
  Term term;
  int size = 0;            // |U|
  int complement_rank = 0;  // r(E - U)
  int corank = 0;           // r*(U) = |U| + r(E - U) - r(M)
};

/// Every inequality term of `fam` with the quantities of the dual rank formula.
inline std::vector<CorankTerm> corank_term_report(const Matroid& M, const Family& fam) {
  check_family(M, fam);
  std::vector<CorankTerm> out;
  for (Term& t : kinser_terms(fam)) {
    CorankTerm c;
    c.size = popcount(t.mask);
    c.complement_rank = M.rank_unchecked(M.ground() & ~t.mask);
    c.corank = c.size + c.complement_rank - M.rank();
    t.rank = c.corank;
    c.term = std::move(t);
    out.push_back(std::move(c));
  }
  return out;
}

/// Sum of |U| + r(E - U) over the terms on one side that do not involve X_excluded,
/// together with how many terms contributed (each one carries a -r(M)).
struct ConstantBlock {
  int constant = 0;
  int terms = 0;
};

inline ConstantBlock constant_block(const std::vector<CorankTerm>& report, Side side, int excluded) {
  ConstantBlock b;
  for (const CorankTerm& c : report) {
    if (c.term.side != side) continue;
    const auto& idx = c.term.indices;
    if (std::find(idx.begin(), idx.end(), excluded) != idx.end()) continue;
    b.constant += c.size + c.complement_rank;
    ++b.terms;
  }
  return b;
}

}  // namespace kinser
