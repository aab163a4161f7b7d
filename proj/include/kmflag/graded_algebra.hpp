#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kmflag/linalg.hpp"
#include "kmflag/rational.hpp"

namespace kmflag {

/// Polynomial in n commuting generators x_1..x_n with rational coefficients.
/// Each generator has degree 2, so a monomial of total degree t sits in
/// degree 2t.
class SPolynomial {
public:
  using Exponent = std::vector<int>;

  SPolynomial() = default;
  explicit SPolynomial(int nvars) : n_(nvars) {}
  static SPolynomial constant(int nvars, const Rational& c);
  static SPolynomial variable(int nvars, int i);
  static SPolynomial monomial(const Exponent& e, const Rational& c = 1);
  /// sum_i coeffs[i] x_i
  static SPolynomial linear(const std::vector<Rational>& coeffs);
  static SPolynomial linear(const std::vector<int64_t>& coeffs);

  int nvars() const { return n_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  bool is_homogeneous() const;
  /// Degree (2 * total degree) of a nonzero homogeneous polynomial; nullopt
  /// for zero. Throws Error(DegreeMismatch) when inhomogeneous.
  std::optional<int> degree() const;
  bool is_linear_form() const;

  /// "0", "3/2", "x1^2+2x1x2-x3"
  std::string to_string() const;

  SPolynomial& operator+=(const SPolynomial& o);
  SPolynomial& operator-=(const SPolynomial& o);
  SPolynomial& operator*=(const Rational& c);
  friend SPolynomial operator+(SPolynomial a, const SPolynomial& b) { return a += b; }
  friend SPolynomial operator-(SPolynomial a, const SPolynomial& b) { return a -= b; }
  friend SPolynomial operator*(const SPolynomial& a, const SPolynomial& b);
  friend SPolynomial operator*(const Rational& c, SPolynomial a) { return a *= c; }
  friend bool operator==(const SPolynomial&, const SPolynomial&) = default;

private:
  int n_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Normal form of p in S/(alpha): the first generator occurring in alpha is
/// eliminated by substitution. Throws ZeroForm for alpha = 0 and
/// DegreeMismatch when alpha is not a linear form.
SPolynomial reduce_mod_linear(const SPolynomial& p, const SPolynomial& alpha);

/// Exact quotient p / alpha, or nullopt if alpha does not divide p.
std::optional<SPolynomial> divide_by_linear(const SPolynomial& p, const SPolynomial& alpha);

/// Index of the variable eliminated by reduce_mod_linear.
int eliminated_variable(const SPolynomial& alpha);

/// Enumerates monomials of each total degree, grown on demand.
class MonomialTable {
public:
  explicit MonomialTable(int nvars);

  int nvars() const { return n_; }
  std::size_t count(int t);
  const SPolynomial::Exponent& exponent(int t, std::size_t idx);
  std::size_t index(const SPolynomial::Exponent& e);
  /// Index (in degree t+1) of x_i times monomial idx of degree t.
  std::size_t times_var(int t, std::size_t idx, int i);
  /// Index (in degree t1+t2) of the product.
  std::size_t product(int t1, std::size_t i1, int t2, std::size_t i2);

private:
  void ensure(int t);

  int n_;
  std::vector<std::vector<SPolynomial::Exponent>> mons_;
  std::vector<std::map<SPolynomial::Exponent, std::size_t>> index_;
  std::vector<std::vector<std::size_t>> times_;  // times_[t][idx * n + i]
};

/// One cyclic summand S(-shift) or (S/(modulus))(-shift).
struct CyclicPiece {
  int shift = 0;
  std::optional<SPolynomial> modulus;
};

/// One polynomial per cyclic piece of the ambient module.
using ModuleElement = std::vector<SPolynomial>;

/// Submodule of a finite direct sum of cyclic pieces, given by homogeneous
/// generators, with data exact up to degree_cap.
class GradedModuleRep {
public:
  GradedModuleRep(int nvars, std::vector<CyclicPiece> pieces, std::vector<ModuleElement> generators,
                  int degree_cap);

  int nvars() const { return n_; }
  const std::vector<CyclicPiece>& pieces() const { return pieces_; }
  const std::vector<ModuleElement>& generators() const { return gens_; }
  int degree_cap() const { return cap_; }

  /// Degree of a homogeneous element (nullopt for zero, including elements
  /// that vanish in the quotients). Throws DegreeMismatch otherwise.
  std::optional<int> element_degree(const ModuleElement& m) const;
  /// Reduces every component to its normal form.
  ModuleElement normalize(const ModuleElement& m) const;

  /// Coordinates of a homogeneous element of degree d; keys pack
  /// (piece, monomial index within its degree).
  SparseVec coordinates(const ModuleElement& m, int d, MonomialTable& mons) const;
  ModuleElement from_coordinates(const SparseVec& v, int d, MonomialTable& mons) const;
  /// x_i * v for v of degree d, as coordinates in degree d + 2.
  SparseVec multiply_coordinates(const SparseVec& v, int d, int i, MonomialTable& mons) const;

private:
  int n_;
  std::vector<CyclicPiece> pieces_;
  std::vector<ModuleElement> gens_;
  int cap_;
};

/// Basis (as coordinate rows, see GradedModuleRep::coordinates) of the
/// degree-d piece. Throws DegreeCapExceeded when d > degree_cap.
std::vector<SparseVec> degree_basis(const GradedModuleRep& module, int d, MonomialTable& mons);
std::vector<SparseVec> degree_basis(const GradedModuleRep& module, int d);

struct GeneratorSet {
  std::vector<int> degrees;
  std::vector<ModuleElement> representatives;
};

/// Minimal homogeneous generators, sweeping d = 0, 2, ..., degree_cap.
/// Throws CapBoundaryGenerator if one appears in degree >= degree_cap - 2.
GeneratorSet minimal_generators(const GradedModuleRep& module);

/// Indices of rows in m_d that extend a basis of span(s_plus_d) to one of
/// span(s_plus_d + m_d), scanning m_d in order.
std::vector<std::size_t> select_new_generators(const std::vector<SparseVec>& m_d,
                                               const std::vector<SparseVec>& s_plus_d);

struct ModuleMap {
  std::vector<CyclicPiece> target;
  /// Image of each source generator.
  std::vector<ModuleElement> images;
};

/// Submodule of map.target generated by the images. Throws DegreeMismatch if
/// an image is not homogeneous of its source generator's degree.
GradedModuleRep image_module(const ModuleMap& map, const GradedModuleRep& source);

namespace keys {
inline SparseVec::Key pack(uint64_t hi, uint64_t mid, uint64_t lo) { return (hi << 44) | (mid << 32) | lo; }
inline uint64_t hi(SparseVec::Key k) { return k >> 44; }
inline uint64_t mid(SparseVec::Key k) { return (k >> 32) & 0xfff; }
inline uint64_t lo(SparseVec::Key k) { return k & 0xffffffffULL; }
}  // namespace keys

}  // namespace kmflag
