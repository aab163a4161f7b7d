#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kmflag/weyl.hpp"

namespace kmflag {

/// Integer polynomial in q; coeffs[k] is the coefficient of q^k, no trailing
/// zeros (the zero polynomial is empty).
class QPolynomial {
public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<int64_t> coeffs);
  static QPolynomial constant(int64_t c) { return QPolynomial({c}); }
  static QPolynomial monomial(int k, int64_t c = 1);

  const std::vector<int64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int64_t coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }
  int64_t at_one() const;
  QPolynomial shifted(int k) const;
  /// "0", "1", "1+q", "2q^2-q^3", ascending exponents.
  std::string to_string() const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator*(int64_t k, QPolynomial a);
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

private:
  void trim();
  std::vector<int64_t> c_;
};

/// Kazhdan-Lusztig polynomials P_{y,w} and inverse polynomials Q_{x,w} for all
/// pairs of a finite Bruhat ideal. Q is the inverse of the signed P matrix:
///   sum_{x<=y<=w} (-1)^{l(y)-l(x)} P_{x,y} Q_{y,w} = delta_{x,w},
/// so Q_{x,w} is nonzero only for x <= w. Immutable after construction.
class KLTable {
public:
  /// Chooses the left descent s of w used in the recursion for P_{-,w}.
  using DescentPicker = std::function<int(const WeylElement& w, const std::vector<int>& left_descents)>;

  KLTable(const WeylGroup& group, BruhatIdeal ideal);
  KLTable(const WeylGroup& group, BruhatIdeal ideal, const DescentPicker& picker);

  const WeylGroup& group() const { return *group_; }
  const BruhatIdeal& ideal() const { return ideal_; }
  std::size_t size() const { return ideal_.size(); }

  bool leq(std::size_t y, std::size_t w) const { return leq_[y * size() + w]; }
  const QPolynomial& p(std::size_t y, std::size_t w) const { return p_[y * size() + w]; }
  const QPolynomial& q(std::size_t x, std::size_t w) const { return q_[x * size() + w]; }
  int64_t mu(std::size_t z, std::size_t v) const;

  /// Throw Error(NotInIdeal) for elements outside the ideal.
  QPolynomial kl_polynomial(const WeylElement& y, const WeylElement& w) const;
  QPolynomial inverse_kl(const WeylElement& x, const WeylElement& w) const;
  int64_t mu_coefficient(const WeylElement& z, const WeylElement& v) const;

  /// Throws Error(IntervalNotContained) unless [x, w] lies in the ideal.
  void require_interval(const WeylElement& x, const WeylElement& w) const;

private:
  void build(const DescentPicker& picker);

  const WeylGroup* group_;
  BruhatIdeal ideal_;
  std::vector<char> leq_;
  std::vector<QPolynomial> p_;
  std::vector<QPolynomial> q_;
};

}  // namespace kmflag
