#include "kmflag/kl.hpp"

#include <sstream>

namespace kmflag {

QPolynomial::QPolynomial(std::vector<int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::monomial(int k, int64_t c) {
  std::vector<int64_t> v(static_cast<std::size_t>(k) + 1, 0);
  v[k] = c;
  return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int64_t QPolynomial::at_one() const {
  int64_t s = 0;
  for (auto c : c_) s += c;
  return s;
}

QPolynomial QPolynomial::shifted(int k) const {
  if (is_zero()) return {};
  std::vector<int64_t> v(static_cast<std::size_t>(k), 0);
  v.insert(v.end(), c_.begin(), c_.end());
  return QPolynomial(std::move(v));
}

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    int64_t c = c_[k];
    if (c == 0) continue;
    if (c < 0) os << "-";
    else if (!first) os << "+";
    int64_t a = c < 0 ? -c : c;
    if (k == 0) {
      os << a;
    } else {
      if (a != 1) os << a;
      os << "q";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return QPolynomial(std::move(v));
}

QPolynomial operator*(int64_t k, QPolynomial a) {
  for (auto& c : a.c_) c *= k;
  a.trim();
  return a;
}

}  // namespace kmflag
