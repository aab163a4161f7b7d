#include "kmflag/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace kmflag {

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVec v;
  for (auto& e : entries) {
    if (!v.entries_.empty() && v.entries_.back().first == e.first) {
      v.entries_.back().second += e.second;
      if (v.entries_.back().second.is_zero()) v.entries_.pop_back();
    } else if (!e.second.is_zero()) {
      v.entries_.push_back(std::move(e));
    }
  }
  return v;
}

Rational SparseVec::at(Key k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, Key key) { return e.first < key; });
  if (it != entries_.end() && it->first == k) return it->second;
  return Rational();
}

void SparseVec::axpy(const Rational& a, const SparseVec& x) {
  if (a.is_zero() || x.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + x.entries_.size());
  auto i = entries_.begin();
  auto j = x.entries_.begin();
  while (i != entries_.end() || j != x.entries_.end()) {
    if (j == x.entries_.end() || (i != entries_.end() && i->first < j->first)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == entries_.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational s = i->second + a * j->second;
      if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  entries_ = std::move(out);
}

void SparseVec::scale(const Rational& a) {
  if (a.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= a;
}

void EchelonBasis::reduce(SparseVec& v) const {
  while (!v.empty()) {
    auto it = pivot_.find(v.lead());
    if (it == pivot_.end()) return;
    v.axpy(-v.lead_coeff(), rows_[it->second]);
  }
}

bool EchelonBasis::contains(SparseVec v) const {
  reduce(v);
  return v.empty();
}

bool EchelonBasis::insert(SparseVec v) {
  reduce(v);
  if (v.empty()) return false;
  Rational inv = Rational(1) / v.lead_coeff();
  v.scale(inv);
  pivot_.emplace(v.lead(), rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

bool TrackedEchelon::insert(SparseVec row, SparseVec companion, SparseVec* kernel_out) {
  while (!row.empty()) {
    auto it = pivot_.find(row.lead());
    if (it == pivot_.end()) break;
    Rational c = -row.lead_coeff();
    row.axpy(c, rows_[it->second]);
    companion.axpy(c, companions_[it->second]);
  }
  if (row.empty()) {
    if (kernel_out) *kernel_out = std::move(companion);
    return false;
  }
  Rational inv = Rational(1) / row.lead_coeff();
  row.scale(inv);
  companion.scale(inv);
  pivot_.emplace(row.lead(), rows_.size());
  rows_.push_back(std::move(row));
  companions_.push_back(std::move(companion));
  return true;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(DenseMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

}  // namespace

DenseMatrix nullspace(const DenseMatrix& rows, std::size_t ncols) {
  DenseMatrix m = rows;
  for (const auto& row : m)
    if (row.size() != ncols) throw std::invalid_argument("nullspace: ragged matrix");
  auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  DenseMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(ncols);
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(DenseMatrix rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size()).size();
}

Rational determinant(DenseMatrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace kmflag
