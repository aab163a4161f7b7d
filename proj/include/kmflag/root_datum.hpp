#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "kmflag/rational.hpp"

namespace kmflag {

/// Coefficients of an element of the root lattice on the simple roots.
struct RootVector {
  std::vector<int64_t> coords;

  RootVector() = default;
  explicit RootVector(std::vector<int64_t> c) : coords(std::move(c)) {}
  static RootVector zero(int n) { return RootVector(std::vector<int64_t>(n, 0)); }
  static RootVector simple(int n, int i);

  int size() const { return static_cast<int>(coords.size()); }
  int64_t operator[](int i) const { return coords[i]; }
  int64_t& operator[](int i) { return coords[i]; }
  int64_t height() const;
  bool is_zero() const;
  bool is_positive() const;
  bool is_negative() const;
  std::string to_string() const;  // "1,0,2"

  RootVector operator-() const;
  RootVector& operator+=(const RootVector& o);
  RootVector& operator-=(const RootVector& o);
  friend RootVector operator+(RootVector a, const RootVector& b) { return a += b; }
  friend RootVector operator-(RootVector a, const RootVector& b) { return a -= b; }
  friend RootVector operator*(int64_t k, RootVector a) {
    for (auto& c : a.coords) c *= k;
    return a;
  }
  friend bool operator==(const RootVector&, const RootVector&) = default;
  friend auto operator<=>(const RootVector&, const RootVector&) = default;
};

enum class Kind { Finite, Affine, Indefinite };
std::string kind_name(Kind k);

/// Square integer table satisfying the generalized Cartan matrix axioms.
class CartanMatrix {
public:
  CartanMatrix() = default;
  /// Throws Error(NotGCM) unless the table is a generalized Cartan matrix.
  explicit CartanMatrix(const std::vector<std::vector<int64_t>>& entries);

  int rank() const { return n_; }
  int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::vector<std::vector<int64_t>> rows() const;
  CartanMatrix transpose() const;

private:
  int n_ = 0;
  std::vector<int64_t> a_;
};

/// A validated symmetrizable generalized Cartan matrix together with its
/// symmetrizer, type classification and affine auxiliaries. Immutable.
class RootDatum {
public:
  static constexpr int64_t kDefaultHeightBound = 100000;

  /// validate_cartan: throws Error(NotGCM) or Error(NotSymmetrizable).
  static RootDatum validate(const std::vector<std::vector<int64_t>>& entries);

  int rank() const { return cartan_.rank(); }
  const CartanMatrix& cartan() const { return cartan_; }
  int64_t a(int i, int j) const { return cartan_(i, j); }
  /// Minimal positive integers d with d_i a_ij = d_j a_ji.
  const std::vector<int64_t>& symmetrizer() const { return d_; }
  Kind kind() const { return kind_; }
  /// Affine only: primitive positive left null vector a^vee (a^vee A = 0).
  const std::vector<int64_t>& dual_labels() const { return dual_labels_; }
  /// Affine only: coefficients of the primitive imaginary root delta (A delta = 0).
  const RootVector& null_root() const { return null_root_; }

  /// (beta, gamma) = sum_ij beta_i gamma_j d_i a_ij, so (alpha_i, alpha_i) = 2 d_i.
  int64_t bilinear(const RootVector& beta, const RootVector& gamma) const;
  /// <beta, alpha_i^vee> = sum_j beta_j a_ij.
  int64_t coroot_pairing(const RootVector& beta, int i) const;
  /// s_i(beta) = beta - <beta, alpha_i^vee> alpha_i.
  RootVector simple_reflect(int i, RootVector beta) const;

  /// Height descent to a simple root. Throws HeightBoundExceeded when the
  /// height of beta exceeds the bound.
  bool is_real_root(const RootVector& beta, int64_t height_bound = kDefaultHeightBound) const;
  /// Coordinates of beta^vee on the simple coroots (i.e. a root of the dual
  /// datum). Throws NotRealRoot.
  RootVector coroot(const RootVector& beta) const;
  /// All positive real roots of height <= max_height, sorted by (height, coords).
  std::vector<RootVector> positive_real_roots(int64_t max_height) const;

  /// Langlands dual datum (transposed Cartan matrix).
  RootDatum dual() const;
  /// Untwisted affine: delta = alpha_0 + theta for some node 0 with label 1,
  /// theta the highest root of the finite datum left after removing node 0.
  bool is_untwisted_affine() const;

private:
  RootDatum() = default;

  CartanMatrix cartan_;
  std::vector<int64_t> d_;
  Kind kind_ = Kind::Indefinite;
  std::vector<int64_t> dual_labels_;
  RootVector null_root_;
};

/// Parses {"cartan": [[...], ...]}. Syntax or schema problems raise
/// Error(BadInput); matrix problems raise NotGCM / NotSymmetrizable.
RootDatum parse_cartan_json(const std::string& text);
RootDatum load_cartan_file(const std::string& path);

}  // namespace kmflag
