#include "kmflag/category_o.hpp"

#include <algorithm>
#include <limits>

#include "kmflag/error.hpp"

namespace kmflag {

namespace {

// <lambda + rho, beta^vee>
Rational shifted_pairing(const RootDatum& datum, const WeightCoords& lambda, const RootVector& beta) {
  RootVector c = datum.coroot(beta);
  Rational s = 0;
  for (int j = 0; j < datum.rank(); ++j) s += Rational(c[j]) * (lambda.pairings[j] + Rational(1));
  return s;
}

RootVector integral_offset(const WeightCoords& mu) {
  RootVector v = RootVector::zero(static_cast<int>(mu.offset.size()));
  for (std::size_t i = 0; i < mu.offset.size(); ++i) {
    if (!mu.offset[i].is_integer()) throw Error(ErrorCode::PredicateViolation, "weight is not integral");
    v[static_cast<int>(i)] = mu.offset[i].to_int64();
  }
  return v;
}

void require_character_kind(const RootDatum& datum) {
  if (datum.kind() == Kind::Finite) return;
  if (datum.kind() == Kind::Affine && datum.is_untwisted_affine()) return;
  throw Error(ErrorCode::UnsupportedKind,
              "characters need a finite or untwisted affine datum, got " + kind_name(datum.kind()));
}

}  // namespace

BlockSpec classify_weight(const WeylGroup& group, const std::vector<Rational>& pairings, const BruhatIdeal& ideal) {
  const RootDatum& datum = group.datum();
  if (static_cast<int>(pairings.size()) != datum.rank())
    throw Error(ErrorCode::BadInput, "expected " + std::to_string(datum.rank()) + " pairings");
  BlockSpec b;
  b.lambda = WeightCoords::from_pairings(pairings);
  b.integral = b.lambda.is_integral();
  b.antidominant = std::none_of(pairings.begin(), pairings.end(),
                                [](const Rational& p) { return p.is_integer() && p.sign() >= 0; });

  switch (datum.kind()) {
    case Kind::Finite:
      b.noncritical = true;
      break;
    case Kind::Affine: {
      Rational s = 0;
      for (int i = 0; i < datum.rank(); ++i) s += Rational(datum.dual_labels()[i]) * (pairings[i] + Rational(1));
      b.noncritical = !s.is_zero();
      break;
    }
    default:
      b.noncritical = false;
  }

  b.regular = std::none_of(pairings.begin(), pairings.end(), [](const Rational& p) { return (p + 1).is_zero(); });
  if (b.regular) {
    for (const auto& beta : datum.positive_real_roots(kRegularityHeight))
      if (shifted_pairing(datum, b.lambda, beta).is_zero()) {
        b.regular = false;
        break;
      }
  }
  if (b.regular) {
    for (const auto& w : ideal.elements())
      if (!w.is_identity() && group.dot_action(w, b.lambda) == b.lambda) {
        b.regular = false;
        break;
      }
  }
  return b;
}

BlockSpec classify_weight(const WeylGroup& group, const std::vector<Rational>& pairings) {
  BruhatIdeal ideal = group.enumerate_ideal(0);
  if (group.datum().kind() == Kind::Finite) ideal = group.enumerate_ideal(std::numeric_limits<int>::max());
  return classify_weight(group, pairings, ideal);
}

int64_t CharacterSeries::at(const RootVector& offset) const {
  auto it = coeffs.find(offset);
  return it == coeffs.end() ? 0 : it->second;
}

KostantTable::KostantTable(const RootDatum& datum, int depth) : depth_(depth) {
  require_character_kind(datum);
  if (depth < 0) throw Error(ErrorCode::BadInput, "depth must be nonnegative");
  const int n = datum.rank();

  // parts with multiplicity
  std::vector<RootVector> parts = datum.positive_real_roots(depth);
  if (datum.kind() == Kind::Affine) {
    const RootVector& delta = datum.null_root();
    for (int k = 1; k * delta.height() <= depth; ++k)
      for (int m = 0; m < n - 1; ++m) parts.push_back(k * delta);
  }

  // all mu >= 0 of height <= depth, in increasing height
  std::vector<RootVector> cone{RootVector::zero(n)};
  for (std::size_t i = 0; i < cone.size(); ++i) {
    if (cone[i].height() == depth) continue;
    // extend only in coordinates >= the last nonzero one, so each vector appears once
    int last = 0;
    for (int j = 0; j < n; ++j)
      if (cone[i][j] != 0) last = j;
    for (int j = last; j < n; ++j) {
      RootVector v = cone[i];
      ++v[j];
      cone.push_back(v);
    }
  }
  std::sort(cone.begin(), cone.end(), [](const RootVector& a, const RootVector& b) {
    return a.height() != b.height() ? a.height() < b.height() : a < b;
  });
  for (const auto& v : cone) counts_.emplace(v, 0);
  counts_[RootVector::zero(n)] = 1;
  for (const auto& part : parts)
    for (const auto& v : cone) {
      RootVector rest = v - part;
      if (!rest.is_zero() && !rest.is_positive()) continue;
      auto it = counts_.find(rest);
      if (it == counts_.end()) continue;
      int64_t& slot = counts_[v];
      if (__builtin_add_overflow(slot, it->second, &slot))
        throw Error(ErrorCode::SizeLimitExceeded, "partition count overflows 64 bits");
    }
}

int64_t KostantTable::count(const RootVector& mu) const {
  if (mu.height() > depth_)
    throw Error(ErrorCode::HeightBoundExceeded, "height " + std::to_string(mu.height()) + " exceeds depth " +
                                                    std::to_string(depth_));
  auto it = counts_.find(mu);
  return it == counts_.end() ? 0 : it->second;
}

int64_t kostant_partition(const RootDatum& datum, const RootVector& beta, int depth) {
  return KostantTable(datum, depth).count(beta);
}

CharacterSeries verma_character(const WeylGroup& group, const BlockSpec& block, const WeylElement& y, int depth) {
  require_character_kind(group.datum());
  if (!block.integral) throw Error(ErrorCode::PredicateViolation, "block is not integral");
  KostantTable table(group.datum(), depth);
  CharacterSeries ch;
  ch.base = group.dot_action(y, block.lambda);
  ch.depth = depth;
  for (const auto& [mu, c] : table.counts())
    if (c != 0) ch.coeffs.emplace(-mu, c);
  return ch;
}

CharacterSeries irreducible_character(const WeylGroup& group, const BlockSpec& block, const WeylElement& w, int depth,
                                      const KLTable& table) {
  require_character_kind(group.datum());
  if (!(block.integral && block.regular && block.antidominant && block.noncritical))
    throw Error(ErrorCode::PredicateViolation, "block must be integral, regular, antidominant and noncritical");
  table.require_interval(group.identity(), w);

  const WeightCoords top = group.dot_action(w, block.lambda);
  const RootVector top_off = integral_offset(top);
  KostantTable kostant(group.datum(), depth);
  std::map<RootVector, int64_t> acc;
  const std::size_t wi = table.ideal().index_of(w);
  for (std::size_t yi = 0; yi < table.size(); ++yi) {
    if (!table.leq(yi, wi)) continue;
    const WeylElement& y = table.ideal().elements()[yi];
    const int64_t coeff = table.p(yi, wi).at_one() * ((w.length() - y.length()) % 2 ? -1 : 1);
    // Delta(y.lambda) sits gap below the top weight
    const RootVector gap = top_off - integral_offset(group.dot_action(y, block.lambda));
    if (!gap.is_zero() && !gap.is_positive())
      throw Error(ErrorCode::PredicateViolation, "y.lambda is not below w.lambda for y = " + y.word_string());
    for (const auto& [mu, c] : kostant.counts()) {
      if (c == 0 || mu.height() + gap.height() > depth) continue;
      acc[-(mu + gap)] += coeff * c;
    }
  }
  CharacterSeries ch;
  ch.base = top;
  ch.depth = depth;
  for (const auto& [off, c] : acc) {
    if (c < 0)
      throw Error(ErrorCode::NegativeCoefficient,
                  "negative multiplicity " + std::to_string(c) + " at offset " + off.to_string());
    if (c != 0) ch.coeffs.emplace(off, c);
  }
  return ch;
}

int64_t jh_multiplicity(const BlockSpec&, const WeylElement& x, const WeylElement& y, const KLTable& table) {
  table.require_interval(x, y);
  table.require_interval(y, x);
  return table.inverse_kl(y, x).at_one();
}

int64_t projective_verma_multiplicity(const BlockSpec& block, const BMPSheaf& dual_sheaf, const WeylElement& x,
                                      const KLTable& table) {
  const WeylElement& w = dual_sheaf.graph().vertices().elements()[dual_sheaf.base()];
  const int64_t rank = static_cast<int64_t>(dual_sheaf.stalk(x).size());
  const int64_t jh = jh_multiplicity(block, x, w, table);
  if (rank != jh)
    throw Error(ErrorCode::CrossCheckFailed, "reciprocity fails at w = " + w.word_string() + ", x = " +
                                                 x.word_string() + ": stalk rank " + std::to_string(rank) +
                                                 ", Jordan-Holder multiplicity " + std::to_string(jh));
  return rank;
}

int64_t projective_verma_multiplicity(const BlockSpec& block, const WeylElement& w, const WeylElement& x,
                                      const MomentGraph& dual_graph, const KLTable& table) {
  dual_graph.vertices().index_of(x);
  return projective_verma_multiplicity(block, compute_bmp(dual_graph, w), x, table);
}

std::vector<MultiplicityRow> multiplicity_table(const BlockSpec& block, const MomentGraph& dual_graph,
                                                const KLTable& table) {
  std::vector<MultiplicityRow> rows;
  const auto& el = dual_graph.vertices().elements();
  for (const auto& w : el) {
    BMPSheaf sheaf = compute_bmp(dual_graph, w);
    for (const auto& x : el) {
      const int64_t p = projective_verma_multiplicity(block, sheaf, x, table);
      rows.push_back({w, x, p, jh_multiplicity(block, x, w, table)});
    }
  }
  return rows;
}

}  // namespace kmflag
