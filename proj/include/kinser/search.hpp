#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/inequality.hpp"
#include "kinser/matroid.hpp"
#include "kinser/transforms.hpp"

namespace kinser {

enum class SearchSpace { flats, all_subsets, independent };
enum class Determinism { lex_first, any };

/// all_subsets is only accepted up to this ground size.
inline constexpr int kAllSubsetsLimit = 8;
/// Candidate lists up to this length get a precomputed pairwise-union rank table.
inline constexpr std::size_t kPairTableLimit = 4096;

struct SearchConfig {
  SearchSpace space = SearchSpace::flats;
  Determinism determinism = Determinism::lex_first;
  bool symmetry_pruning = true;
  int parallel_width = 1;  // 0 = hardware concurrency
  bool generic_engine = false;  // use the n-level engine even for n = 4
};

struct SearchStats {
  std::uint64_t candidates = 0;
  std::uint64_t tuples_examined = 0;
  std::uint64_t rank_queries = 0;
};

struct BadFamilyCertificate {
  std::string label;
  std::string fingerprint;
  Family family;
  int lhs = 0;
  int rhs = 0;
};

struct Verdict {
  bool in_class = true;
  int n = 0;
  SearchStats stats;
  std::optional<BadFamilyCertificate> certificate;
};

inline const char* to_string(SearchSpace s) {
  switch (s) {
    case SearchSpace::flats:
      return "flats";
    case SearchSpace::all_subsets:
      return "all";
    case SearchSpace::independent:
      return "independent";
  }
  return "?";
}

/// Candidate sets for every X_i, ascending by mask.
inline std::vector<SubsetMask> search_candidates(const Matroid& M, SearchSpace space) {
  switch (space) {
    case SearchSpace::flats:
      return enumerate(M, SetKind::flats);
    case SearchSpace::all_subsets: {
      if (M.size() > kAllSubsetsLimit) {
        throw SizeCapError("all-subsets search needs m <= " + std::to_string(kAllSubsetsLimit) + ", got m = " +
                           std::to_string(M.size()));
      }
      std::vector<SubsetMask> out(std::size_t{1} << M.size());
      for (SubsetMask x = 0; x < out.size(); ++x) out[x] = x;
      return out;
    }
    case SearchSpace::independent: {
      std::vector<SubsetMask> out;
      for (SubsetMask x = 0;; ++x) {
        if (M.rank_unchecked(x) == popcount(x)) out.push_back(x);
        if (x == M.ground()) break;
      }
      return out;
    }
  }
  return {};
}

namespace detail {

/// Rank access over a candidate list with query counting. Pairwise unions are tabulated
/// once when the list is short enough; every other lookup is a counted oracle query.
class CandidateRanks {
 public:
  CandidateRanks(const Matroid& M, std::vector<SubsetMask> cand) : M_(M), cand_(std::move(cand)) {
    const std::size_t F = cand_.size();
    single_.resize(F);
    for (std::size_t a = 0; a < F; ++a) single_[a] = static_cast<std::uint8_t>(M_.rank_unchecked(cand_[a]));
    setup_queries_ = F;
    if (F <= kPairTableLimit) {
      pair_.assign(F * F, 0);
      for (std::size_t a = 0; a < F; ++a) {
        for (std::size_t b = a; b < F; ++b) {
          const auto v = static_cast<std::uint8_t>(M_.rank_unchecked(cand_[a] | cand_[b]));
          pair_[a * F + b] = v;
          pair_[b * F + a] = v;
        }
      }
      setup_queries_ += F * (F + 1) / 2;
    }
  }

  std::size_t size() const noexcept { return cand_.size(); }
  SubsetMask mask(std::size_t a) const noexcept { return cand_[a]; }
  int single(std::size_t a) const noexcept { return single_[a]; }
  std::uint64_t setup_queries() const noexcept { return setup_queries_; }

  int pair(std::size_t a, std::size_t b, std::uint64_t& queries) const noexcept {
    if (!pair_.empty()) return pair_[a * cand_.size() + b];
    ++queries;
    return M_.rank_unchecked(cand_[a] | cand_[b]);
  }

  int query(SubsetMask x, std::uint64_t& queries) const noexcept {
    ++queries;
    return M_.rank_unchecked(x);
  }

 private:
  const Matroid& M_;
  std::vector<SubsetMask> cand_;
  std::vector<std::uint8_t> single_;
  std::vector<std::uint8_t> pair_;
  std::uint64_t setup_queries_ = 0;
};

using IndexTuple = std::vector<std::uint32_t>;

struct WorkerResult {
  std::optional<IndexTuple> best;
  std::uint64_t tuples = 0;
  std::uint64_t queries = 0;
};

/// Shared state across workers: an early-stop flag for "any" mode and the smallest
/// leading index pair found so far, used only to skip work that cannot win.
struct SharedBound {
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> lead{std::numeric_limits<std::uint64_t>::max()};

  void offer(std::uint64_t key) {
    std::uint64_t cur = lead.load();
    while (key < cur && !lead.compare_exchange_weak(cur, key)) {
    }
  }
};

inline std::uint64_t lead_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

inline bool tuple_less(std::uint32_t a, std::uint32_t b, std::uint32_t i, std::uint32_t j, const IndexTuple& t) {
  if (a != t[0]) return a < t[0];
  if (b != t[1]) return b < t[1];
  if (i != t[2]) return i < t[2];
  return j < t[3];
}

/// Inequality 4 with the margin written as
///   lhs - rhs = C(X3,X4) - c(X1) - c(X2) - I(X1,X2)
/// where C(X3,X4) = r3 + r4 - r34, c(Y) = r(Y3) + r(Y4) - r(Y34) - r(Y), I = r1 + r2 - r12,
/// and c, I are non-negative by submodularity. The outer loop runs over (X3, X4) with
/// C > 0, keeps the sets Y with c(Y) < C, and pairs them.
inline WorkerResult search_ingleton(const CandidateRanks& R, const SearchConfig& cfg, int worker, int workers,
                                    SharedBound& shared) {
  WorkerResult out;
  const auto F = static_cast<std::uint32_t>(R.size());
  const bool lex = cfg.determinism == Determinism::lex_first;
  const bool prune = cfg.symmetry_pruning;
  std::vector<int> c(F);
  std::vector<std::uint32_t> keep;
  keep.reserve(F);
  for (std::uint32_t i = static_cast<std::uint32_t>(worker); i < F; i += static_cast<std::uint32_t>(workers)) {
    if (shared.stop.load(std::memory_order_relaxed)) break;
    for (std::uint32_t j = prune ? i : 0; j < F; ++j) {
      const int C = R.single(i) + R.single(j) - R.pair(i, j, out.queries);
      if (C <= 0) continue;
      const SubsetMask u = R.mask(i) | R.mask(j);
      std::uint32_t amax = F - 1;
      if (lex) {
        const std::uint64_t lead = shared.lead.load(std::memory_order_relaxed);
        if (lead != std::numeric_limits<std::uint64_t>::max()) amax = static_cast<std::uint32_t>(lead >> 32);
        if (out.best) amax = std::min(amax, (*out.best)[0]);
      }
      keep.clear();
      for (std::uint32_t a = 0; a < F; ++a) {
        c[a] = R.pair(a, i, out.queries) + R.pair(a, j, out.queries) - R.query(R.mask(a) | u, out.queries) -
               R.single(a);
        if (c[a] < C) keep.push_back(a);
      }
      bool found = false;
      for (std::size_t ia = 0; ia < keep.size() && !found; ++ia) {
        const std::uint32_t a = keep[ia];
        if (a > amax) break;
        const int slack = C - c[a];
        for (std::size_t ib = prune ? ia : 0; ib < keep.size(); ++ib) {
          const std::uint32_t b = keep[ib];
          if (lex) {
            if (out.best && !tuple_less(a, b, i, j, *out.best)) break;
            if (lead_key(a, b) > shared.lead.load(std::memory_order_relaxed)) break;
          }
          if (c[b] >= slack) continue;
          ++out.tuples;
          const int I = R.single(a) + R.single(b) - R.pair(a, b, out.queries);
          if (I < slack - c[b]) {
            out.best = IndexTuple{a, b, i, j};
            found = true;
            if (lex) {
              shared.offer(lead_key(a, b));
            } else {
              shared.stop = true;
            }
            break;
          }
        }
      }
      if (found && !lex) return out;
    }
  }
  return out;
}

/// (X3..Xn) is no larger than its reverse.
inline bool reversal_canonical(const IndexTuple& t) {
  std::size_t lo = 2;
  std::size_t hi = t.size() - 1;
  while (lo < hi) {
    if (t[lo] != t[hi]) return t[lo] < t[hi];
    ++lo;
    --hi;
  }
  return true;
}

/// Nested lexicographic loops over X1..Xn with running partial margins. Every level past
/// the third only adds terms of the form r(Xi) + r(X2 Xi-1 Xi) - r(X2 Xi) - r(Xi-1 Xi) <= 0,
/// apart from the final r(X1 X3 Xn) - r(X1 Xn) <= r(X1 X3) - r(X1), which gives a bound
/// for cutting off a prefix.
inline WorkerResult search_generic(const CandidateRanks& R, int n, const SearchConfig& cfg, int worker, int workers,
                                   SharedBound& shared) {
  WorkerResult out;
  const auto F = static_cast<std::uint32_t>(R.size());
  const bool lex = cfg.determinism == Determinism::lex_first;
  const bool prune = cfg.symmetry_pruning;
  IndexTuple t(static_cast<std::size_t>(n));
  bool done = false;

  // level k chooses t[k-1]; partial is the margin accumulated so far; bound adds r13 - r1
  auto recurse = [&](auto&& self, int k, int partial, int bound_extra) -> void {
    if (done) return;
    const std::uint32_t a = t[0];
    const std::uint32_t b = t[1];
    std::uint32_t start = 0;
    if (k == n && prune) start = t[2];
    for (std::uint32_t d = start; d < F && !done; ++d) {
      t[static_cast<std::size_t>(k - 1)] = d;
      if (k == 3) {
        const int p = partial + R.single(d) - R.pair(a, d, out.queries) - R.pair(b, d, out.queries);
        const int extra = R.pair(a, d, out.queries) - R.single(a);
        if (p + extra <= 0) continue;
        self(self, k + 1, p, extra);
        continue;
      }
      if (k == n && prune && !reversal_canonical(t)) continue;
      const std::uint32_t prev = t[static_cast<std::size_t>(k - 2)];
      int p = partial + R.single(d) + R.query(R.mask(b) | R.mask(prev) | R.mask(d), out.queries) -
              R.pair(b, d, out.queries) - R.pair(prev, d, out.queries);
      if (k < n) {
        if (p + bound_extra <= 0) continue;
        self(self, k + 1, p, bound_extra);
        continue;
      }
      p += R.query(R.mask(a) | R.mask(t[2]) | R.mask(d), out.queries) - R.pair(a, d, out.queries);
      ++out.tuples;
      if (p > 0) {
        out.best = t;
        done = true;
        if (lex) {
          shared.offer(lead_key(a, 0));
        } else {
          shared.stop = true;
        }
      }
    }
  };

  for (std::uint32_t a = static_cast<std::uint32_t>(worker); a < F && !done; a += static_cast<std::uint32_t>(workers)) {
    if (shared.stop.load(std::memory_order_relaxed)) break;
    if (lex && lead_key(a, 0) > shared.lead.load(std::memory_order_relaxed)) break;
    t[0] = a;
    for (std::uint32_t b = (prune && n == 4) ? a : 0; b < F && !done; ++b) {
      t[1] = b;
      recurse(recurse, 3, R.pair(a, b, out.queries), 0);
    }
  }
  return out;
}

inline int resolve_width(int w) {
  if (w > 0) return w;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace detail

/// Exhaustive search for a bad family for inequality n over the configured candidate space.
/// In lex_first mode the result is the lexicographically least violating tuple of masks.
inline std::optional<BadFamilyCertificate> search_bad_family(const Matroid& M, int n, const SearchConfig& cfg,
                                                             SearchStats* stats = nullptr) {
  if (n < 4) throw PreconditionError("Kinser inequalities need n >= 4, got " + std::to_string(n));
  detail::CandidateRanks R(M, search_candidates(M, cfg.space));
  const int workers = std::max(1, std::min<int>(detail::resolve_width(cfg.parallel_width),
                                                static_cast<int>(std::max<std::size_t>(R.size(), 1))));
  detail::SharedBound shared;
  std::vector<detail::WorkerResult> results(static_cast<std::size_t>(workers));
  auto run = [&](int w) {
    if (n == 4 && !cfg.generic_engine) {
      results[static_cast<std::size_t>(w)] = detail::search_ingleton(R, cfg, w, workers, shared);
    } else {
      results[static_cast<std::size_t>(w)] = detail::search_generic(R, n, cfg, w, workers, shared);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  SearchStats s;
  s.candidates = R.size();
  s.rank_queries = R.setup_queries();
  std::optional<detail::IndexTuple> best;
  for (const auto& r : results) {
    s.tuples_examined += r.tuples;
    s.rank_queries += r.queries;
    if (r.best && (!best || *r.best < *best)) best = r.best;
  }
  if (stats) *stats = s;
  if (!best) return std::nullopt;

  std::vector<SubsetMask> sets;
  for (std::uint32_t idx : *best) sets.push_back(R.mask(idx));
  BadFamilyCertificate cert;
  cert.label = M.label();
  cert.fingerprint = content_fingerprint(M);
  cert.family = Family(std::move(sets));
  const InequalityValue v = evaluate(M, cert.family);
  if (v.satisfied()) throw Error("search produced a family that does not violate the inequality");
  cert.lhs = v.lhs;
  cert.rhs = v.rhs;
  return cert;
}

inline Verdict membership(const Matroid& M, int n, const SearchConfig& cfg = {}) {
  Verdict v;
  v.n = n;
  v.certificate = search_bad_family(M, n, cfg, &v.stats);
  v.in_class = !v.certificate.has_value();
  return v;
}

/// Membership of M in the dual class, i.e. of M* in the class.
inline Verdict dual_membership(const Matroid& M, int n, const SearchConfig& cfg = {}) {
  return membership(dual(M), n, cfg);
}

}  // namespace kinser
