#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kmflag/rational.hpp"

namespace kmflag {

/// Sparse rational vector indexed by opaque 64-bit keys, kept sorted by key
/// with no stored zeros.
class SparseVec {
public:
  using Key = uint64_t;
  using Entry = std::pair<Key, Rational>;

  SparseVec() = default;
  /// Entries may be unsorted and contain duplicate keys (they are summed).
  static SparseVec from_entries(std::vector<Entry> entries);

  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  Key lead() const { return entries_.front().first; }
  const Rational& lead_coeff() const { return entries_.front().second; }
  const std::vector<Entry>& entries() const { return entries_; }
  Rational at(Key k) const;

  /// this += a * x
  void axpy(const Rational& a, const SparseVec& x);
  void scale(const Rational& a);
  /// Keeps entries whose key satisfies pred.
  template <class Pred>
  void filter(Pred pred) {
    std::erase_if(entries_, [&](const Entry& e) { return !pred(e.first); });
  }

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

private:
  std::vector<Entry> entries_;
};

/// Row-echelon basis of a subspace; rows have distinct leading keys and
/// leading coefficient 1.
class EchelonBasis {
public:
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }

  /// Reduces v against the basis (leading terms only). v becomes zero iff it
  /// was in the span.
  void reduce(SparseVec& v) const;
  bool contains(SparseVec v) const;
  /// Adds v if independent; returns whether the rank grew.
  bool insert(SparseVec v);

private:
  std::vector<SparseVec> rows_;
  std::unordered_map<SparseVec::Key, std::size_t> pivot_;
};

/// Echelon basis where every row carries a companion vector transformed by
/// the same operations. Used to find kernels: a vector whose row reduces to
/// zero leaves its companion as a kernel element.
class TrackedEchelon {
public:
  /// Reduces (row, companion); returns true if row became a new pivot.
  bool insert(SparseVec row, SparseVec companion, SparseVec* kernel_out);
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<SparseVec>& companions() const { return companions_; }

private:
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> companions_;
  std::unordered_map<SparseVec::Key, std::size_t> pivot_;
};

using DenseMatrix = std::vector<std::vector<Rational>>;

/// Basis of {v : A v = 0} for A given as rows over ncols columns.
DenseMatrix nullspace(const DenseMatrix& rows, std::size_t ncols);
std::size_t rank(DenseMatrix rows);
Rational determinant(DenseMatrix m);

}  // namespace kmflag
