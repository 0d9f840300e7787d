#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kinser/errors.hpp"
#include "kinser/matroid.hpp"

namespace kinser {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Dense matrix over GF(p), row-major.
class MatrixGFp {
 public:
  MatrixGFp(int p, int rows, int cols, std::vector<int> entries)
      : p_(p), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (!is_prime(p_)) throw PreconditionError("modulus " + std::to_string(p_) + " is not prime");
    if (p_ > 251) throw PreconditionError("modulus " + std::to_string(p_) + " too large");
    if (rows_ < 0 || cols_ < 1) throw PreconditionError("matrix needs at least one column");
    if (entries_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
      throw PreconditionError("matrix has " + std::to_string(entries_.size()) + " entries, expected " +
                              std::to_string(rows_ * cols_));
    }
    for (int v : entries_) {
      if (v < 0 || v >= p_) {
        throw PreconditionError("entry " + std::to_string(v) + " outside [0," + std::to_string(p_) + ")");
      }
    }
  }

  int p() const noexcept { return p_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  std::vector<int> column(int j) const {
    std::vector<int> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  friend bool operator==(const MatrixGFp&, const MatrixGFp&) = default;

 private:
  int p_;
  int rows_;
  int cols_;
  std::vector<int> entries_;
};

namespace detail {

inline int inverse_mod(int a, int p) {
  int result = 1;
  int base = a % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

/// Row-echelon basis that accepts vectors one at a time and reports whether each was new.
class EchelonBasis {
 public:
  EchelonBasis(int p, int dim) : p_(p), dim_(dim) {}

  /// Reduces v against the basis; if it is independent, adds it and returns true.
  bool insert(std::vector<int> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const int c = v[pivots_[k]];
      if (c == 0) continue;
      const auto& row = rows_[k];
      for (int i = 0; i < dim_; ++i) v[i] = ((v[i] - c * row[i]) % p_ + p_) % p_;
    }
    int pivot = -1;
    for (int i = 0; i < dim_; ++i) {
      if (v[i] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return false;
    const int inv = inverse_mod(v[pivot], p_);
    for (int& x : v) x = x * inv % p_;
    // keep rows fully reduced so later reductions only look at pivot columns
    for (auto& row : rows_) {
      const int c = row[pivot];
      if (c == 0) continue;
      for (int i = 0; i < dim_; ++i) row[i] = ((row[i] - c * v[i]) % p_ + p_) % p_;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  int size() const noexcept { return static_cast<int>(rows_.size()); }

 private:
  int p_;
  int dim_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> pivots_;
};

}  // namespace detail

/// Column rank over GF(p) of every column subset, via a depth-first walk over subsets
/// that extends an echelon basis by one column per level.
inline Matroid from_matrix(const MatrixGFp& A, std::string label = {}) {
  const int m = A.cols();
  if (m > kMaxGround) throw SizeCapError("matrix has " + std::to_string(m) + " columns, cap is 24");
  std::vector<std::vector<int>> cols(m);
  for (int j = 0; j < m; ++j) cols[j] = A.column(j);
  std::vector<std::uint8_t> table(std::size_t{1} << m, 0);

  struct Frame {
    detail::EchelonBasis basis;
    SubsetMask set;
    int next;
  };
  std::vector<Frame> stack;
  stack.push_back({detail::EchelonBasis(A.p(), A.rows()), 0, 0});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next >= m) {
      stack.pop_back();
      continue;
    }
    const int j = top.next++;
    detail::EchelonBasis basis = top.basis;
    const SubsetMask set = top.set | bit(j);
    basis.insert(cols[j]);
    table[set] = static_cast<std::uint8_t>(basis.size());
    stack.push_back({std::move(basis), set, j + 1});
  }
  return Matroid::from_table(m, std::move(table), std::move(label));
}

}  // namespace kinser
