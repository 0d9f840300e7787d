#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "kinser/catalog.hpp"
#include "kinser/errors.hpp"
#include "kinser/search.hpp"

namespace kinser {

struct SpikeBenchRow {
  int r = 0;
  int elements = 0;
  std::size_t circuit_hyperplanes = 0;  // transversal ones, i.e. the even transversals
  bool in_class = false;
  SearchStats stats;
  double seconds = 0;
};

/// Exhaustive inequality-4 check of Z_r for every even r in [r_lo, r_hi].
inline std::vector<SpikeBenchRow> bench_spike(int r_lo, int r_hi, const SearchConfig& cfg = {}) {
  if (r_lo > r_hi) throw PreconditionError("empty spike range");
  if (r_lo < kSpikeMinRank || r_hi > kSpikeMaxRank) {
    throw SizeCapError("spike range must lie within " + std::to_string(kSpikeMinRank) + ".." +
                       std::to_string(kSpikeMaxRank));
  }
  std::vector<SpikeBenchRow> rows;
  for (int r = r_lo; r <= r_hi; ++r) {
    if (r % 2 != 0) continue;
    SpikeBenchRow row;
    row.r = r;
    const auto t0 = std::chrono::steady_clock::now();
    const Matroid Z = binary_spike(r);
    row.elements = Z.size();
    row.circuit_hyperplanes = spike_transversal_circuit_hyperplanes(Z).size();
    const Verdict v = membership(Z, 4, cfg);
    row.in_class = v.in_class;
    row.stats = v.stats;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);
  }
  return rows;
}

inline std::string bench_csv(const std::vector<SpikeBenchRow>& rows) {
  std::string out = "r,elements,circuit_hyperplanes,flats,tuples_examined,rank_queries_ingleton_check,seconds\n";
  for (const auto& row : rows) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", row.seconds);
    out += std::to_string(row.r) + "," + std::to_string(row.elements) + "," + std::to_string(row.circuit_hyperplanes) +
           "," + std::to_string(row.stats.candidates) + "," + std::to_string(row.stats.tuples_examined) + "," +
           std::to_string(row.stats.rank_queries) + "," + secs + "\n";
  }
  return out;
}

}  // namespace kinser
