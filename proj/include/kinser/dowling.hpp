#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "kinser/circuits.hpp"
#include "kinser/errors.hpp"
#include "kinser/layout.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

/// Finite group on {0..g-1} given by its multiplication table.
class GroupTable {
 public:
  GroupTable(std::string name, int order, std::vector<int> table)
      : name_(std::move(name)), g_(order), mul_(std::move(table)) {
    if (g_ < 1) throw PreconditionError("group order must be positive");
    if (mul_.size() != static_cast<std::size_t>(g_ * g_)) throw PreconditionError("multiplication table has wrong size");
    for (int v : mul_) {
      if (v < 0 || v >= g_) throw PreconditionError("multiplication table entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < g_ && identity_ < 0; ++e) {
      bool ok = true;
      for (int x = 0; x < g_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw PreconditionError("group table has no identity");
    inverse_.assign(g_, -1);
    for (int x = 0; x < g_; ++x) {
      for (int y = 0; y < g_; ++y) {
        if (mul(x, y) == identity_ && mul(y, x) == identity_) inverse_[x] = y;
      }
      if (inverse_[x] < 0) throw PreconditionError("element " + std::to_string(x) + " has no inverse");
    }
    for (int x = 0; x < g_; ++x) {
      for (int y = 0; y < g_; ++y) {
        for (int z = 0; z < g_; ++z) {
          if (mul(mul(x, y), z) != mul(x, mul(y, z))) throw PreconditionError("group table is not associative");
        }
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  int order() const noexcept { return g_; }
  int identity() const noexcept { return identity_; }
  int mul(int x, int y) const { return mul_[static_cast<std::size_t>(x) * g_ + y]; }
  int inverse(int x) const { return inverse_[x]; }

 private:
  std::string name_;
  int g_;
  std::vector<int> mul_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

inline GroupTable cyclic_group(int g) {
  std::vector<int> mul(static_cast<std::size_t>(g) * g);
  for (int x = 0; x < g; ++x) {
    for (int y = 0; y < g; ++y) mul[static_cast<std::size_t>(x) * g + y] = (x + y) % g;
  }
  return GroupTable("Z" + std::to_string(g), g, std::move(mul));
}

inline GroupTable klein_four() {
  std::vector<int> mul(16);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) mul[x * 4 + y] = x ^ y;
  }
  return GroupTable("Z2xZ2", 4, std::move(mul));
}

struct GainEdge {
  int tail;
  int head;
  int label;
  bool loop;
};

/// Complete graph on n vertices with |G| parallel edges per pair (tail < head, one per label)
/// followed by |G|-1 loops per vertex labeled with the non-identities.
struct GainGraph {
  int n = 0;
  std::vector<GainEdge> edges;
};

inline GainGraph dowling_graph(const GroupTable& G, int n) {
  if (n < 1) throw PreconditionError("Dowling geometry needs at least one vertex");
  const long long m = static_cast<long long>(n) * (n - 1) / 2 * G.order() + static_cast<long long>(n) * (G.order() - 1);
  if (m < 1 || m > kMaxGround) {
    throw SizeCapError("Dowling geometry on " + std::to_string(n) + " vertices over a group of order " +
                       std::to_string(G.order()) + " has " + std::to_string(m) + " elements, cap is 24");
  }
  GainGraph H;
  H.n = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      for (int g = 0; g < G.order(); ++g) H.edges.push_back({u, v, g, false});
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int g = 0; g < G.order(); ++g) {
      if (g != G.identity()) H.edges.push_back({v, v, g, true});
    }
  }
  return H;
}

struct BiasShape {
  int vertices = 0;
  int edges = 0;
  int components = 0;
  int balanced_components = 0;
  int min_degree = 0;
  int max_degree = 0;
};

/// Vertex, component and balance data of the subgraph formed by the edge set X.
/// A component is balanced when it has no loops and its gains admit vertex potentials.
inline BiasShape bias_shape(const GroupTable& G, const GainGraph& H, SubsetMask X) {
  BiasShape s;
  std::vector<int> degree(H.n, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(H.n);  // (edge, other endpoint)
  for (int i : elements_of(X)) {
    const GainEdge& e = H.edges[i];
    ++s.edges;
    if (e.loop) {
      degree[e.tail] += 2;
      adj[e.tail].push_back({i, e.tail});
    } else {
      ++degree[e.tail];
      ++degree[e.head];
      adj[e.tail].push_back({i, e.head});
      adj[e.head].push_back({i, e.tail});
    }
  }
  std::vector<int> potential(H.n, -1);
  s.min_degree = 1 << 20;
  for (int start = 0; start < H.n; ++start) {
    if (degree[start] == 0 || potential[start] >= 0) continue;
    ++s.components;
    bool balanced = true;
    potential[start] = G.identity();
    std::vector<int> queue{start};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int u = queue[q];
      for (auto [i, w] : adj[u]) {
        const GainEdge& e = H.edges[i];
        if (e.loop) {
          balanced = false;
          continue;
        }
        // phi(head) = phi(tail) * label
        const int want = u == e.tail ? G.mul(potential[u], e.label) : G.mul(potential[u], G.inverse(e.label));
        if (potential[w] < 0) {
          potential[w] = want;
          queue.push_back(w);
        } else if (potential[w] != want) {
          balanced = false;
        }
      }
    }
    if (balanced) ++s.balanced_components;
  }
  for (int v = 0; v < H.n; ++v) {
    if (degree[v] == 0) continue;
    ++s.vertices;
    s.min_degree = std::min(s.min_degree, degree[v]);
    s.max_degree = std::max(s.max_degree, degree[v]);
  }
  if (s.vertices == 0) s.min_degree = 0;
  return s;
}

/// Frame-matroid rank: vertices touched minus balanced components.
inline int bias_rank(const GroupTable& G, const GainGraph& H, SubsetMask X) {
  const BiasShape s = bias_shape(G, H, X);
  return s.vertices - s.balanced_components;
}

namespace detail {

inline bool is_positive_cycle(const BiasShape& s) {
  return s.components == 1 && s.min_degree == 2 && s.max_degree == 2 && s.edges == s.vertices &&
         s.balanced_components == 1;
}

}  // namespace detail

/// Positive cycles, and connected subgraphs with |E| = |V| + 1 and minimum degree 2
/// (thetas, tight and loose handcuffs) containing no positive cycle.
inline std::vector<SubsetMask> dowling_circuits(const GroupTable& G, const GainGraph& H) {
  const int m = static_cast<int>(H.edges.size());
  const int max_size = H.n + 1;
  std::vector<SubsetMask> positive;
  std::vector<SubsetMask> out;
  for (SubsetMask x = 1; x < (SubsetMask{1} << m); ++x) {
    if (popcount(x) > max_size) continue;
    const BiasShape s = bias_shape(G, H, x);
    if (s.components != 1 || s.min_degree < 2) continue;
    if (detail::is_positive_cycle(s)) {
      positive.push_back(x);
      out.push_back(x);
    } else if (s.edges == s.vertices + 1) {
      bool has_positive = false;
      for (SubsetMask c : positive) {
        if (is_subset(c, x)) {
          has_positive = true;
          break;
        }
      }
      if (!has_positive) out.push_back(x);
    }
  }
  return out;
}

/// Edge names "u-v:g" for pair edges and "Lv:g" for loops, vertices counted from 1.
inline PartLayout dowling_layout(const GainGraph& H) {
  PartLayout layout;
  for (std::size_t i = 0; i < H.edges.size(); ++i) {
    const GainEdge& e = H.edges[i];
    std::string name = e.loop ? "L" + std::to_string(e.tail + 1) : std::to_string(e.tail + 1) + "-" + std::to_string(e.head + 1);
    layout.set(name + ":" + std::to_string(e.label), bit(static_cast<int>(i)));
  }
  return layout;
}

/// Rank-n Dowling geometry over G built from its circuits, cross-checked against the
/// frame-matroid rank formula.
inline Matroid dowling(const GroupTable& G, int n) {
  const GainGraph H = dowling_graph(G, n);
  const int m = static_cast<int>(H.edges.size());
  const auto circuits = dowling_circuits(G, H);
  const int rank = bias_rank(G, H, full_mask(m));
  Matroid M = matroid_from_circuits(m, rank, circuits, "Q" + std::to_string(n) + "(" + G.name() + ")", dowling_layout(H));
  for (SubsetMask x = 0; x < (SubsetMask{1} << m); ++x) {
    if (M.rank_unchecked(x) != bias_rank(G, H, x)) {
      throw Error("Dowling construction disagrees with the frame rank at {" + format_mask(x) + "}");
    }
  }
  return M;
}

/// Rank table computed directly from the frame-matroid formula.
inline Matroid dowling_from_bias_rank(const GroupTable& G, int n) {
  const GainGraph H = dowling_graph(G, n);
  const int m = static_cast<int>(H.edges.size());
  return Matroid::tabulate(m, [&](SubsetMask x) { return bias_rank(G, H, x); },
                           "Q" + std::to_string(n) + "(" + G.name() + ")", dowling_layout(H));
}

}  // namespace kinser
