#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "kmflag/rational.hpp"
#include "kmflag/root_datum.hpp"

namespace kmflag {

/// Square integer matrix acting on simple-root coordinates (column j is the
/// image of alpha_j).
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  static IntMatrix identity(int n);

  int size() const { return n_; }
  int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  RootVector column(int j) const;
  RootVector apply(const RootVector& v) const;
  std::size_t hash() const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  int n_ = 0;
  std::vector<int64_t> a_;
};

/// Weyl group element. Identity is matrix equality; the canonical reduced
/// word is produced greedily by taking the smallest left descent first.
class WeylElement {
public:
  const IntMatrix& action() const { return mat_; }
  const IntMatrix& inverse_action() const { return inv_; }
  int length() const { return static_cast<int>(word_.size()); }
  /// 0-based simple reflection indices, leftmost letter first.
  const std::vector<int>& reduced_word() const { return word_; }
  /// "e" for the identity, otherwise 1-based comma separated indices.
  std::string word_string() const;
  bool is_identity() const { return word_.empty(); }

  friend bool operator==(const WeylElement& x, const WeylElement& y) { return x.mat_ == y.mat_; }

private:
  friend class WeylGroup;
  IntMatrix mat_;
  IntMatrix inv_;
  std::vector<int> word_;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const { return w.action().hash(); }
};

/// Order by (length, canonical word).
bool shortlex_less(const WeylElement& x, const WeylElement& y);

std::string word_to_string(const std::vector<int>& word);
/// Accepts "e", "" or 1-based indices separated by commas.
std::vector<int> parse_word(const std::string& text, int rank);

/// Finite Bruhat ideal (downward closed), elements sorted by shortlex.
class BruhatIdeal {
public:
  struct MaxLength {
    int value;
  };
  using Description = std::variant<MaxLength, std::vector<std::vector<int>>>;

  const std::vector<WeylElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const WeylElement& w) const { return index_.count(w) > 0; }
  /// Throws Error(NotInIdeal).
  std::size_t index_of(const WeylElement& w) const;
  std::optional<std::size_t> find(const WeylElement& w) const;
  int max_length() const;
  const Description& description() const { return description_; }

private:
  friend class WeylGroup;
  std::vector<WeylElement> elements_;
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> index_;
  Description description_ = MaxLength{0};
};

/// lambda in block coordinates: pairings <lambda, alpha_i^vee> and the offset
/// of lambda from the block base point in the root lattice.
struct WeightCoords {
  std::vector<Rational> pairings;
  std::vector<Rational> offset;

  static WeightCoords from_pairings(std::vector<Rational> p);
  bool is_integral() const;
  friend bool operator==(const WeightCoords&, const WeightCoords&) = default;
};

class WeylGroup {
public:
  static constexpr std::size_t kDefaultSizeLimit = 100000;

  explicit WeylGroup(RootDatum datum);

  const RootDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank(); }

  WeylElement identity() const;
  WeylElement simple(int i) const;
  /// Product of simple reflections, leftmost first (need not be reduced).
  WeylElement from_word(const std::vector<int>& word) const;
  WeylElement parse(const std::string& text) const { return from_word(parse_word(text, rank())); }

  WeylElement multiply(const WeylElement& u, const WeylElement& v) const;
  WeylElement inverse(const WeylElement& u) const;
  RootVector apply(const WeylElement& u, const RootVector& beta) const { return u.action().apply(beta); }
  int length(const WeylElement& u) const { return u.length(); }

  /// l(s_i u) < l(u)
  bool is_left_descent(const WeylElement& u, int i) const;
  /// l(u s_i) < l(u)
  bool is_right_descent(const WeylElement& u, int i) const;

  /// Subword criterion, scanning the canonical word of w.
  bool bruhat_leq(const WeylElement& y, const WeylElement& w) const;

  /// s_beta for a real root beta (either sign). Throws NotRealRoot.
  WeylElement reflection(const RootVector& beta) const;
  /// The positive root beta with t = s_beta, if t is a reflection.
  std::optional<RootVector> reflection_root(const WeylElement& t) const;

  /// All elements of length <= max_length. Throws SizeLimitExceeded.
  BruhatIdeal enumerate_ideal(int max_length, std::size_t size_limit = kDefaultSizeLimit) const;
  /// Downward closure of the given elements.
  BruhatIdeal ideal_from_generators(const std::vector<WeylElement>& gens,
                                    std::size_t size_limit = kDefaultSizeLimit) const;

  /// {alpha > 0 : u^{-1}(alpha) < 0}, from the canonical word.
  std::vector<RootVector> inversion_set(const WeylElement& u) const;
  /// R^+ \ S_J: positive roots sent negative by x^{-1} for some x in J.
  std::set<RootVector> sj_complement(const BruhatIdeal& ideal) const;
  /// dim C^x / U_J, computed both as |R^+ cap x(R^+) cap (R^+ \ S_J)| and as
  /// |R^+ \ S_J| - l(x). Throws NotInIdeal; std::logic_error if they differ.
  int stratum_dimension(const WeylElement& x, const BruhatIdeal& ideal) const;

  /// w.lambda = w(lambda + rho) - rho.
  WeightCoords dot_action(const WeylElement& w, const WeightCoords& lambda) const;

private:
  WeylElement make(IntMatrix mat, IntMatrix inv) const;

  RootDatum datum_;
  std::vector<IntMatrix> simple_;
};

}  // namespace kmflag
