#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinser/axioms.hpp"
#include "kinser/circuits.hpp"
#include "kinser/errors.hpp"
#include "kinser/gfp.hpp"
#include "kinser/layout.hpp"
#include "kinser/matroid.hpp"
#include "kinser/transforms.hpp"
#include "kinser/transversal.hpp"

namespace kinser {

/// U_{k,m}: r(X) = min(|X|, k).
inline Matroid uniform(int k, int m) {
  if (m < 1 || m > kMaxGround) throw SizeCapError("ground size " + std::to_string(m) + " outside 1..24");
  if (k < 0 || k > m) throw PreconditionError("uniform matroid needs 0 <= k <= m");
  return Matroid::tabulate(
      m, [k](SubsetMask x) { return std::min(popcount(x), k); },
      "U" + std::to_string(k) + "," + std::to_string(m));
}

/// The 3x7 matrix whose GF(2) matroid is F7 and whose GF(3) matroid is F7-.
inline std::vector<int> fano_rows() {
  return {1, 0, 0, 1, 1, 0, 1,  //
          0, 1, 0, 1, 0, 1, 1,  //
          0, 0, 1, 0, 1, 1, 1};
}

inline std::pair<Matroid, Matroid> fano_pair() {
  return {from_matrix(MatrixGFp(2, 3, 7, fano_rows()), "F7"), from_matrix(MatrixGFp(3, 3, 7, fano_rows()), "F7-")};
}

// ---- Kinser matroids -------------------------------------------------------

inline constexpr int kKinserMinRank = 4;
inline constexpr int kKinserMaxRank = 6;

inline int kinser_ground_size(int r) { return r * r - 3 * r + 4; }

/// Element order: V1, then V2 = {e, f}, then V3, ..., Vr; every Vi other than V2 has r-2 elements.
inline PartLayout kinser_layout(int r) {
  PartLayout layout;
  const int w = r - 2;
  int next = 0;
  auto take = [&](int count) {
    SubsetMask s = 0;
    for (int i = 0; i < count; ++i) s |= bit(next++);
    return s;
  };
  const SubsetMask v1 = take(w);
  const SubsetMask e = take(1);
  const SubsetMask f = take(1);
  layout.set("V1", v1);
  layout.set("V2", e | f);
  for (int i = 3; i <= r; ++i) layout.set("V" + std::to_string(i), take(w));
  layout.set("e", e);
  layout.set("f", f);
  return layout;
}

inline void check_kinser_rank(int r) {
  if (r < kKinserMinRank || r > kKinserMaxRank) {
    throw PreconditionError("Kinser rank " + std::to_string(r) + " outside " + std::to_string(kKinserMinRank) +
                            ".." + std::to_string(kKinserMaxRank) + " (ground size r^2-3r+4 <= 24)");
  }
}

/// (A_1, A_3, ..., A_r, A, A') with W = V1 u V3 u ... u Vr,
/// A_1 = W - (V1 u Vr), A_3 = W - (V1 u V3), A_i = W - (V_{i-1} u V_i), A = E, A' = V2.
inline SetSystem kinser_set_system(int r) {
  check_kinser_rank(r);
  const PartLayout layout = kinser_layout(r);
  auto V = [&](int i) { return layout.at("V" + std::to_string(i)); };
  const int m = kinser_ground_size(r);
  const SubsetMask W = full_mask(m) & ~V(2);
  SetSystem S{m, {}};
  S.family.push_back(W & ~(V(1) | V(r)));
  S.family.push_back(W & ~(V(1) | V(3)));
  for (int i = 4; i <= r; ++i) S.family.push_back(W & ~(V(i - 1) | V(i)));
  S.family.push_back(full_mask(m));
  S.family.push_back(V(2));
  return S;
}

/// M_{r+1}: the rank r+1 transversal matroid of kinser_set_system(r).
inline Matroid kinser_base(int r) {
  const Matroid M = transversal(kinser_set_system(r), "M" + std::to_string(r + 1));
  return M.with_layout(kinser_layout(r));
}

/// Kin(r), the truncation of M_{r+1}.
inline Matroid kinser(int r) { return truncate(kinser_base(r)).relabeled("Kin(" + std::to_string(r) + ")"); }

/// Kin(r)- relaxes V1 u V2; with also_relax = i, V2 u Vi is relaxed as well (Kin(r)_i^=).
inline Matroid kinser_relaxed(int r, std::optional<int> also_relax = std::nullopt) {
  const Matroid K = kinser(r);
  const PartLayout& layout = *K.layout();
  Matroid out = relax(K, layout.at("V1") | layout.at("V2"));
  if (!also_relax) return out.relabeled("Kin(" + std::to_string(r) + ")-");
  const int i = *also_relax;
  if (i < 3 || i > r) throw PreconditionError("second relaxation index must lie in 3.." + std::to_string(r));
  out = relax(out, layout.at("V2") | layout.at("V" + std::to_string(i)));
  return out.relabeled("Kin(" + std::to_string(r) + ")_" + std::to_string(i) + "=");
}

// ---- binary spikes ---------------------------------------------------------

inline constexpr int kSpikeMinRank = 4;
inline constexpr int kSpikeMaxRank = 8;

inline void check_spike_rank(int r) {
  if (r < kSpikeMinRank || r > kSpikeMaxRank) {
    throw PreconditionError("spike rank " + std::to_string(r) + " outside " + std::to_string(kSpikeMinRank) + ".." +
                            std::to_string(kSpikeMaxRank));
  }
}

/// a_i is element i-1 and b_i is element r+i-1.
inline PartLayout spike_layout(int r) {
  PartLayout layout;
  for (int i = 1; i <= r; ++i) layout.set("a" + std::to_string(i), bit(i - 1));
  for (int i = 1; i <= r; ++i) layout.set("b" + std::to_string(i), bit(r + i - 1));
  layout.set("A", full_mask(r));
  layout.set("B", full_mask(r) << r);
  return layout;
}

/// The transversal taking b_i for i in `legs` (bit i-1) and a_i otherwise.
inline SubsetMask spike_transversal(int r, SubsetMask legs) {
  return (full_mask(r) & ~legs) | (legs << r);
}

/// Transversals using an even number of b-elements, ascending by mask.
inline std::vector<SubsetMask> spike_even_transversals(int r) {
  check_spike_rank(r);
  std::vector<SubsetMask> out;
  for (SubsetMask legs = 0; legs < (SubsetMask{1} << r); ++legs) {
    if (popcount(legs) % 2 == 0) out.push_back(spike_transversal(r, legs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SubsetMask> spike_nonspanning_circuits(int r) {
  std::vector<SubsetMask> out = spike_even_transversals(r);
  for (int i = 0; i < r; ++i) {
    for (int k = i + 1; k < r; ++k) out.push_back(bit(i) | bit(r + i) | bit(k) | bit(r + k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Z_r from its non-spanning circuits.
inline Matroid binary_spike(int r) {
  const auto circuits = spike_nonspanning_circuits(r);
  return matroid_from_circuits(2 * r, r, circuits, "Z" + std::to_string(r), spike_layout(r));
}

/// Circuit-hyperplanes of a spike that take exactly one element from each leg {a_i, b_i}.
inline std::vector<SubsetMask> spike_transversal_circuit_hyperplanes(const Matroid& Z) {
  const int r = Z.size() / 2;
  std::vector<SubsetMask> out;
  for (SubsetMask h : enumerate(Z, SetKind::circuit_hyperplanes)) {
    const SubsetMask a = h & full_mask(r);
    const SubsetMask b = h >> r;
    if ((a & b) == 0 && (a | b) == full_mask(r)) out.push_back(h);
  }
  return out;
}

}  // namespace kinser
