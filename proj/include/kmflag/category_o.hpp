#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kmflag/bmp.hpp"
#include "kmflag/kl.hpp"
#include "kmflag/moment_graph.hpp"
#include "kmflag/weyl.hpp"

namespace kmflag {

/// A block given by a base weight lambda (through its pairings with the
/// simple coroots) and the four weight predicates.
struct BlockSpec {
  WeightCoords lambda;
  bool integral = false;
  bool regular = false;
  bool antidominant = false;
  bool noncritical = false;
};

/// Positive real roots of height at most this are checked for singular
/// pairings with lambda + rho.
inline constexpr int64_t kRegularityHeight = 40;

/// Regularity also requires that no element of `ideal` other than e fixes
/// lambda under the dot action. Noncritical is decided for finite and affine
/// kinds and reported false for indefinite ones.
BlockSpec classify_weight(const WeylGroup& group, const std::vector<Rational>& pairings,
                          const BruhatIdeal& ideal);
BlockSpec classify_weight(const WeylGroup& group, const std::vector<Rational>& pairings);

/// Weight multiplicities below a highest weight: keys are offsets (nonpositive
/// in the root lattice) from the highest weight, truncated at height depth.
/// Only nonzero coefficients are stored.
struct CharacterSeries {
  WeightCoords base;
  std::map<RootVector, int64_t> coeffs;
  int depth = 0;
  int64_t at(const RootVector& offset) const;
};

/// Kostant partition counts for every mu >= 0 with height(mu) <= depth.
/// Imaginary roots k*delta of an untwisted affine datum count with
/// multiplicity rank - 1. Throws UnsupportedKind otherwise.
class KostantTable {
public:
  KostantTable(const RootDatum& datum, int depth);
  int depth() const { return depth_; }
  /// 0 for mu not in the cone; throws HeightBoundExceeded above the depth.
  int64_t count(const RootVector& mu) const;
  const std::map<RootVector, int64_t>& counts() const { return counts_; }

private:
  int depth_;
  std::map<RootVector, int64_t> counts_;
};

int64_t kostant_partition(const RootDatum& datum, const RootVector& beta, int depth);

/// Character of the Verma module with highest weight y.lambda.
CharacterSeries verma_character(const WeylGroup& group, const BlockSpec& block, const WeylElement& y, int depth);

/// ch L(w.lambda) = sum_{y <= w} (-1)^{l(w)-l(y)} P_{y,w}(1) ch Delta(y.lambda).
/// Throws PredicateViolation, IntervalNotContained, NegativeCoefficient.
CharacterSeries irreducible_character(const WeylGroup& group, const BlockSpec& block, const WeylElement& w, int depth,
                                      const KLTable& table);

/// [Delta(x.lambda) : L(y.lambda)], which is Q_{y,x}(1).
int64_t jh_multiplicity(const BlockSpec& block, const WeylElement& x, const WeylElement& y, const KLTable& table);

/// (P(w.lambda) : Delta(x.lambda)) read off the stalk at x of the canonical
/// sheaf with base w on the dual moment graph, checked against
/// jh_multiplicity(x, w). Throws CrossCheckFailed on disagreement.
int64_t projective_verma_multiplicity(const BlockSpec& block, const WeylElement& w, const WeylElement& x,
                                      const MomentGraph& dual_graph, const KLTable& table);
int64_t projective_verma_multiplicity(const BlockSpec& block, const BMPSheaf& dual_sheaf, const WeylElement& x,
                                      const KLTable& table);

struct MultiplicityRow {
  WeylElement w;
  WeylElement x;
  int64_t projective;
  int64_t jh;
};

/// All pairs (w, x) of the graph's vertices, one BMP run per w.
std::vector<MultiplicityRow> multiplicity_table(const BlockSpec& block, const MomentGraph& dual_graph,
                                                const KLTable& table);

}  // namespace kmflag
