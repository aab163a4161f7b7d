#include "kmflag/bmp.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "kmflag/error.hpp"

namespace kmflag {

namespace {

// Normal forms of monomials in S/(alpha), cached per degree.
class QuotientTable {
public:
  QuotientTable(const RootVector& label, MonomialTable& mons)
      : alpha_(SPolynomial::linear(label.coords)), mons_(&mons) {}

  const SparseVec& normal_form(int t, std::size_t idx) {
    while (static_cast<int>(nf_.size()) <= t) nf_.emplace_back();
    auto& row = nf_[t];
    if (row.empty()) {
      row.resize(mons_->count(t));
      for (std::size_t j = 0; j < row.size(); ++j) {
        SPolynomial r = reduce_mod_linear(SPolynomial::monomial(mons_->exponent(t, j)), alpha_);
        std::vector<SparseVec::Entry> e;
        for (const auto& [ex, c] : r.terms()) e.emplace_back(mons_->index(ex), c);
        row[j] = SparseVec::from_entries(std::move(e));
      }
    }
    return row[idx];
  }

private:
  SPolynomial alpha_;
  MonomialTable* mons_;
  std::vector<std::vector<SparseVec>> nf_;
};

struct Builder {
  const MomentGraph& graph;
  std::size_t base;
  int cap;
  MonomialTable mons;
  std::map<RootVector, QuotientTable> quotients;
  std::vector<std::vector<int>> stalks;
  std::vector<std::vector<SparseVec>> upper_images;
  // Basis of sections over the processed vertices, projected away from
  // retired ones; indexed by degree / 2.
  std::vector<std::vector<SparseVec>> sections;

  Builder(const MomentGraph& g, std::size_t x, int c)
      : graph(g), base(x), cap(c), mons(g.rank()), stalks(g.size()), upper_images(g.edges().size()),
        sections(c / 2 + 1) {}

  QuotientTable& quotient(const RootVector& label) {
    auto it = quotients.find(label);
    if (it == quotients.end()) it = quotients.emplace(label, QuotientTable(label, mons)).first;
    return it->second;
  }

  int mono_degree(std::size_t v, uint64_t gen, int d) const { return (d - stalks[v][gen]) / 2; }

  // Monomial mu of degree s times a vector of degree d.
  SparseVec times_monomial(const SparseVec& v, int d, int s, std::size_t mu) {
    std::vector<SparseVec::Entry> out;
    out.reserve(v.nnz());
    for (const auto& [k, c] : v.entries()) {
      const auto y = keys::hi(k), j = keys::mid(k);
      const int t = mono_degree(y, j, d);
      out.emplace_back(keys::pack(y, j, mons.product(t, keys::lo(k), s, mu)), c);
    }
    return SparseVec::from_entries(std::move(out));
  }

  void start() {
    stalks[base] = {0};
    for (int d = 0; d <= cap; d += 2)
      for (std::size_t j = 0; j < mons.count(d / 2); ++j)
        sections[d / 2].push_back(SparseVec::from_entries({{keys::pack(base, 0, j), Rational(1)}}));
  }

  void process(std::size_t w, const std::vector<char>& in_support) {
    // edges down to processed vertices of the support
    std::vector<std::size_t> down;
    std::map<std::size_t, std::size_t> slot_of_lower;
    for (std::size_t e : graph.incident(w)) {
      const auto& edge = graph.edges()[e];
      if (edge.upper != w || !in_support[edge.lower]) continue;
      slot_of_lower.emplace(edge.lower, down.size());
      down.push_back(e);
    }
    std::vector<QuotientTable*> quot;
    for (std::size_t e : down) quot.push_back(&quotient(graph.edges()[e].label));

    // restriction of a section to the boundary of w
    auto restrict = [&](const SparseVec& v, int d) {
      std::vector<SparseVec::Entry> out;
      for (const auto& [k, c] : v.entries()) {
        auto it = slot_of_lower.find(keys::hi(k));
        if (it == slot_of_lower.end()) continue;
        const std::size_t q = it->second;
        const auto j = keys::mid(k);
        const int t = mono_degree(it->first, j, d);
        for (const auto& [m, a] : quot[q]->normal_form(t, keys::lo(k)).entries())
          out.emplace_back(keys::pack(q, j, m), c * a);
      }
      return SparseVec::from_entries(std::move(out));
    };
    auto times_var = [&](const SparseVec& u, int d, int i) {
      std::vector<SparseVec::Entry> out;
      for (const auto& [k, c] : u.entries()) {
        const std::size_t q = keys::hi(k);
        const auto j = keys::mid(k);
        const std::size_t y = graph.edges()[down[q]].lower;
        const int t = mono_degree(y, j, d);
        const std::size_t idx = mons.times_var(t, keys::lo(k), i);
        for (const auto& [m, a] : quot[q]->normal_form(t + 1, idx).entries())
          out.emplace_back(keys::pack(q, j, m), c * a);
      }
      return SparseVec::from_entries(std::move(out));
    };

    std::vector<SparseVec> lifts;
    std::vector<SparseVec> prev_image;
    for (int d = 0; d <= cap; d += 2) {
      TrackedEchelon te;
      std::vector<SparseVec> next;
      for (const auto& v : sections[d / 2]) {
        SparseVec ker;
        if (!te.insert(restrict(v, d), v, &ker)) next.push_back(std::move(ker));
      }
      std::vector<SparseVec> s_plus;
      for (const auto& u : prev_image)
        for (int i = 0; i < graph.rank(); ++i) s_plus.push_back(times_var(u, d - 2, i));
      for (std::size_t j : select_new_generators(te.rows(), s_plus)) {
        if (d >= cap - 2)
          throw Error(ErrorCode::CapBoundaryGenerator,
                      "stalk generator in degree " + std::to_string(d) + " at the degree cap " +
                          std::to_string(cap) + "; raise the cap");
        stalks[w].push_back(d);
        lifts.push_back(te.companions()[j]);
        const SparseVec& u = te.rows()[j];
        for (std::size_t q = 0; q < down.size(); ++q) {
          SparseVec part = u;
          part.filter([q](SparseVec::Key k) { return keys::hi(k) == q; });
          std::vector<SparseVec::Entry> rekeyed;
          for (const auto& [k, c] : part.entries()) rekeyed.emplace_back(keys::pack(0, keys::mid(k), keys::lo(k)), c);
          upper_images[down[q]].push_back(SparseVec::from_entries(std::move(rekeyed)));
        }
      }
      // sections extended by the new stalk
      for (std::size_t k = 0; k < lifts.size(); ++k) {
        const int s = (d - stalks[w][k]) / 2;
        for (std::size_t mu = 0; mu < mons.count(s); ++mu) {
          SparseVec v = times_monomial(lifts[k], stalks[w][k], s, mu);
          v.axpy(1, SparseVec::from_entries({{keys::pack(w, k, mu), Rational(1)}}));
          next.push_back(std::move(v));
        }
      }
      sections[d / 2] = std::move(next);
      prev_image = te.rows();
    }
  }

  // Drops the coordinates of vertices no later vertex reads.
  void retire(const std::vector<std::size_t>& gone) {
    if (gone.empty()) return;
    for (auto& basis : sections) {
      EchelonBasis eb;
      for (auto& v : basis) {
        v.filter([&](SparseVec::Key k) { return std::find(gone.begin(), gone.end(), keys::hi(k)) == gone.end(); });
        eb.insert(std::move(v));
      }
      basis = eb.rows();
    }
  }
};

}  // namespace

BMPSheaf compute_bmp(const MomentGraph& graph, const WeylElement& x, const BMPOptions& options) {
  auto found = graph.vertices().find(x);
  if (!found) throw Error(ErrorCode::BaseNotVertex, "base " + x.word_string() + " is not a vertex of the graph");
  const std::size_t xi = *found;
  const int cap = options.degree_cap.value_or(2 * (graph.vertices().max_length() - x.length()) + 4);
  if (cap < 0 || cap % 2 != 0) throw Error(ErrorCode::BadInput, "degree cap must be a nonnegative even integer");

  const auto& el = graph.vertices().elements();
  std::vector<char> in_support(graph.size(), 0);
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < graph.size(); ++v)
    if (graph.leq(xi, v)) {
      in_support[v] = 1;
      order.push_back(v);
    }
  // elements are sorted by length already
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    auto it = order.begin();
    while (it != order.end()) {
      auto jt = it;
      while (jt != order.end() && el[*jt].length() == el[*it].length()) ++jt;
      std::shuffle(it, jt, rng);
      it = jt;
    }
  }

  std::vector<int> pending_up(graph.size(), 0);
  for (const auto& e : graph.edges())
    if (in_support[e.lower] && in_support[e.upper]) ++pending_up[e.lower];

  Builder b(graph, xi, cap);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t w = order[pos];
    if (pos == 0) b.start();
    else b.process(w, in_support);
    std::vector<std::size_t> gone;
    for (std::size_t e : graph.incident(w)) {
      const auto& edge = graph.edges()[e];
      if (edge.upper == w && in_support[edge.lower] && --pending_up[edge.lower] == 0) gone.push_back(edge.lower);
    }
    if (pending_up[w] == 0) gone.push_back(w);
    b.retire(gone);
  }

  BMPSheaf s;
  s.graph_ = &graph;
  s.base_ = xi;
  s.cap_ = cap;
  s.stalks_ = std::move(b.stalks);
  s.order_ = std::move(order);
  s.upper_images_ = std::move(b.upper_images);
  return s;
}

GraphSheaf BMPSheaf::to_graph_sheaf() const {
  GraphSheaf g;
  g.nvars = graph_->rank();
  g.degree_cap = cap_;
  g.vertex_degrees = stalks_;
  MonomialTable mons(g.nvars);
  for (std::size_t i = 0; i < graph_->edges().size(); ++i) {
    const auto& e = graph_->edges()[i];
    const auto& low = stalks_[e.lower];
    const auto& up = stalks_[e.upper];
    SPolynomial alpha = SPolynomial::linear(e.label.coords);
    std::vector<CyclicPiece> pieces;
    std::vector<ModuleElement> lower_maps;
    for (std::size_t j = 0; j < low.size(); ++j) {
      pieces.push_back({low[j], alpha});
      ModuleElement unit(low.size(), SPolynomial(g.nvars));
      unit[j] = SPolynomial::constant(g.nvars, 1);
      lower_maps.push_back(std::move(unit));
    }
    std::vector<ModuleElement> upper_maps;
    for (std::size_t k = 0; k < up.size(); ++k) {
      ModuleElement m(low.size(), SPolynomial(g.nvars));
      if (!low.empty()) {
        for (const auto& [key, c] : upper_images_[i][k].entries()) {
          const auto j = keys::mid(key);
          m[j].add_term(mons.exponent((up[k] - low[j]) / 2, keys::lo(key)), c);
        }
      }
      upper_maps.push_back(std::move(m));
    }
    g.edge_pieces.push_back(std::move(pieces));
    g.lower_maps.push_back(std::move(lower_maps));
    g.upper_maps.push_back(std::move(upper_maps));
  }
  return g;
}

QPolynomial stalk_poincare(const BMPSheaf& sheaf, const WeylElement& w) {
  std::vector<int64_t> c;
  for (int d : sheaf.stalk(w)) {
    const std::size_t k = static_cast<std::size_t>(d / 2);
    if (c.size() <= k) c.resize(k + 1, 0);
    ++c[k];
  }
  return QPolynomial(std::move(c));
}

bool VerifyReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.pass; });
}

VerifyReport verify_against_inverse_kl(const MomentGraph& graph, const WeylElement& x, const KLTable& table,
                                       const BMPOptions& options) {
  for (const auto& w : graph.vertices().elements())
    if (table.group().bruhat_leq(x, w)) table.require_interval(x, w);
  BMPSheaf sheaf = compute_bmp(graph, x, options);
  VerifyReport report{x, {}};
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (!graph.leq(sheaf.base(), v)) continue;
    const WeylElement& w = graph.vertices().elements()[v];
    QPolynomial s = stalk_poincare(sheaf, w);
    QPolynomial q = table.inverse_kl(x, w);
    report.entries.push_back({w, s, q, s == q});
  }
  return report;
}

}  // namespace kmflag
