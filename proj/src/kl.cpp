#include "kmflag/kl.hpp"

#include "kmflag/error.hpp"

namespace kmflag {

namespace {

int first_descent(const WeylElement& w, const std::vector<int>&) { return w.reduced_word().front(); }

}  // namespace

KLTable::KLTable(const WeylGroup& group, BruhatIdeal ideal) : group_(&group), ideal_(std::move(ideal)) {
  build(first_descent);
}

KLTable::KLTable(const WeylGroup& group, BruhatIdeal ideal, const DescentPicker& picker)
    : group_(&group), ideal_(std::move(ideal)) {
  build(picker);
}

void KLTable::build(const DescentPicker& picker) {
  const std::size_t n = size();
  const auto& el = ideal_.elements();
  const int rank = group_->rank();
  constexpr std::size_t kOut = static_cast<std::size_t>(-1);

  leq_.assign(n * n, 0);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t w = 0; w < n; ++w) leq_[y * n + w] = group_->bruhat_leq(el[y], el[w]) ? 1 : 0;

  // lmul[y * rank + s] = index of s*y, or kOut
  std::vector<std::size_t> lmul(n * rank, kOut);
  for (std::size_t y = 0; y < n; ++y)
    for (int s = 0; s < rank; ++s) {
      auto idx = ideal_.find(group_->multiply(group_->simple(s), el[y]));
      if (idx) lmul[y * rank + s] = *idx;
    }

  p_.assign(n * n, QPolynomial());
  // Elements are sorted by length, so every P_{-,v} with l(v) < l(w) is ready.
  for (std::size_t w = 0; w < n; ++w) {
    p_[w * n + w] = QPolynomial::constant(1);
    if (el[w].is_identity()) continue;
    std::vector<int> descents;
    for (int s = 0; s < rank; ++s)
      if (group_->is_left_descent(el[w], s)) descents.push_back(s);
    const int s = picker(el[w], descents);
    const std::size_t v = lmul[w * rank + s];
    const int lw = el[w].length();

    // z < v with s z < z and mu(z, v) != 0
    std::vector<std::pair<std::size_t, int64_t>> mus;
    for (std::size_t z = 0; z < n; ++z) {
      if (z == v || !leq(z, v) || !group_->is_left_descent(el[z], s)) continue;
      int64_t m = mu(z, v);
      if (m != 0) mus.emplace_back(z, m);
    }

    for (std::size_t y = 0; y < n; ++y) {
      if (y == w || !leq(y, w)) continue;
      const std::size_t sy = lmul[y * rank + s];
      const bool c = group_->is_left_descent(el[y], s);
      QPolynomial r;
      if (sy != kOut) r += p(sy, v).shifted(c ? 0 : 1);
      r += p(y, v).shifted(c ? 1 : 0);
      for (const auto& [z, m] : mus) {
        if (!leq(y, z)) continue;
        r -= m * p(y, z).shifted((lw - el[z].length()) / 2);
      }
      p_[y * n + w] = std::move(r);
    }
  }

  q_.assign(n * n, QPolynomial());
  for (std::size_t w = 0; w < n; ++w) {
    q_[w * n + w] = QPolynomial::constant(1);
    for (std::size_t x = w; x-- > 0;) {
      if (!leq(x, w)) continue;
      QPolynomial acc;
      for (std::size_t y = x + 1; y <= w; ++y) {
        if (!leq(x, y) || !leq(y, w)) continue;
        QPolynomial term = p(x, y) * q(y, w);
        if ((el[y].length() - el[x].length()) % 2) acc += term;
        else acc -= term;
      }
      q_[x * n + w] = std::move(acc);
    }
  }
}

int64_t KLTable::mu(std::size_t z, std::size_t v) const {
  const int diff = ideal_.elements()[v].length() - ideal_.elements()[z].length() - 1;
  if (diff < 0 || diff % 2) return 0;
  return p(z, v).coeff(diff / 2);
}

QPolynomial KLTable::kl_polynomial(const WeylElement& y, const WeylElement& w) const {
  return p(ideal_.index_of(y), ideal_.index_of(w));
}

QPolynomial KLTable::inverse_kl(const WeylElement& x, const WeylElement& w) const {
  return q(ideal_.index_of(x), ideal_.index_of(w));
}

int64_t KLTable::mu_coefficient(const WeylElement& z, const WeylElement& v) const {
  return mu(ideal_.index_of(z), ideal_.index_of(v));
}

void KLTable::require_interval(const WeylElement& x, const WeylElement& w) const {
  // The ideal is downward closed, so [x, w] is inside it as soon as w is.
  if (!ideal_.contains(w) || !ideal_.contains(x))
    throw Error(ErrorCode::IntervalNotContained,
                "interval [" + x.word_string() + ", " + w.word_string() + "] is not contained in the ideal");
}

}  // namespace kmflag
