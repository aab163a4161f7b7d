#include "kmflag/moment_graph.hpp"

#include <algorithm>

#include "kmflag/error.hpp"

namespace kmflag {

std::vector<std::pair<std::size_t, std::size_t>> MomentGraph::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& el = vertices_.elements();
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (el[b].length() == el[a].length() + 1 && leq(a, b)) out.emplace_back(a, b);
  return out;
}

MomentGraph build_moment_graph(const WeylGroup& group, const BruhatIdeal& ideal, bool dual) {
  MomentGraph g;
  g.vertices_ = ideal;
  g.dual_ = dual;
  g.rank_ = group.rank();
  const auto& el = ideal.elements();
  const std::size_t n = el.size();

  g.leq_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.leq_[a * n + b] = group.bruhat_leq(el[a], el[b]) ? 1 : 0;

  std::optional<WeylGroup> dual_group;
  std::vector<WeylElement> dual_el;
  if (dual) {
    dual_group.emplace(group.datum().dual());
    for (const auto& w : el) dual_el.push_back(dual_group->from_word(w.reduced_word()));
  }

  std::vector<WeylElement> inv;
  for (const auto& w : el) inv.push_back(group.inverse(w));
  g.incident_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if ((el[b].length() - el[a].length()) % 2 == 0) continue;
      auto beta = group.reflection_root(group.multiply(el[b], inv[a]));
      if (!beta) continue;
      if (dual) {
        auto t = dual_group->multiply(dual_el[b], dual_group->inverse(dual_el[a]));
        beta = dual_group->reflection_root(t);
        if (!beta) throw std::logic_error("dual graph lost an edge");
      }
      std::size_t lo = a, hi = b;
      if (el[a].length() > el[b].length()) std::swap(lo, hi);
      g.incident_[a].push_back(g.edges_.size());
      g.incident_[b].push_back(g.edges_.size());
      g.edges_.push_back({lo, hi, *beta});
    }
  return g;
}

bool structure_algebra_check(const MomentGraph& graph, const std::vector<SPolynomial>& tuple) {
  for (const auto& e : graph.edges()) {
    SPolynomial diff = tuple.at(e.lower) - tuple.at(e.upper);
    SPolynomial alpha = SPolynomial::linear(e.label.coords);
    if (!reduce_mod_linear(diff, alpha).is_zero()) return false;
  }
  return true;
}

GraphSheaf constant_sheaf(const MomentGraph& graph, int degree_cap) {
  GraphSheaf s;
  s.nvars = graph.rank();
  s.degree_cap = degree_cap;
  s.vertex_degrees.assign(graph.size(), {0});
  const SPolynomial one = SPolynomial::constant(s.nvars, 1);
  for (const auto& e : graph.edges()) {
    s.edge_pieces.push_back({CyclicPiece{0, SPolynomial::linear(e.label.coords)}});
    s.lower_maps.push_back({ModuleElement{one}});
    s.upper_maps.push_back({ModuleElement{one}});
  }
  return s;
}

void check_edge_annihilation(const MomentGraph& graph, const GraphSheaf& sheaf) {
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    SPolynomial alpha = SPolynomial::linear(graph.edges()[i].label.coords);
    for (const auto& p : sheaf.edge_pieces[i]) {
      // the piece is S/(m); it is killed by alpha iff m divides alpha
      if (!p.modulus || !divide_by_linear(alpha, *p.modulus))
        throw Error(ErrorCode::PredicateViolation, "edge module is not annihilated by its label");
    }
  }
}

SectionSpace sections(const MomentGraph& graph, const GraphSheaf& sheaf, const std::vector<std::size_t>& subset,
                      int cap) {
  if (cap > sheaf.degree_cap)
    throw Error(ErrorCode::DegreeCapExceeded,
                "cap " + std::to_string(cap) + " exceeds the sheaf cap " + std::to_string(sheaf.degree_cap));
  SectionSpace out;
  out.vertices = subset;
  out.degree_cap = cap;
  std::vector<long> pos(graph.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) pos[subset[i]] = static_cast<long>(i);

  std::vector<std::size_t> internal;
  std::vector<GradedModuleRep> edge_mods;
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    const auto& e = graph.edges()[i];
    if (pos[e.lower] < 0 || pos[e.upper] < 0) continue;
    internal.push_back(i);
    edge_mods.emplace_back(sheaf.nvars, sheaf.edge_pieces[i], std::vector<ModuleElement>{}, sheaf.degree_cap);
  }

  MonomialTable mons(sheaf.nvars);
  for (int d = 0; d <= cap; d += 2) {
    TrackedEchelon te;
    std::vector<SparseVec> kernel;
    for (std::size_t p = 0; p < subset.size(); ++p) {
      const std::size_t v = subset[p];
      const auto& degs = sheaf.vertex_degrees[v];
      for (std::size_t k = 0; k < degs.size(); ++k) {
        if (degs[k] > d) continue;
        const int t = (d - degs[k]) / 2;
        for (std::size_t j = 0; j < mons.count(t); ++j) {
          SPolynomial mu = SPolynomial::monomial(mons.exponent(t, j));
          std::vector<SparseVec::Entry> row;
          for (std::size_t q = 0; q < internal.size(); ++q) {
            const auto& e = graph.edges()[internal[q]];
            const ModuleElement* img = nullptr;
            Rational sign = 1;
            if (e.lower == v) {
              img = &sheaf.lower_maps[internal[q]][k];
            } else if (e.upper == v) {
              img = &sheaf.upper_maps[internal[q]][k];
              sign = -1;
            } else {
              continue;
            }
            ModuleElement prod(img->size());
            for (std::size_t c = 0; c < img->size(); ++c) prod[c] = mu * (*img)[c];
            SparseVec coords = edge_mods[q].coordinates(prod, d, mons);
            for (const auto& [key, val] : coords.entries())
              row.emplace_back(keys::pack(q, keys::hi(key), keys::lo(key)), sign * val);
          }
          SparseVec unit = SparseVec::from_entries({{keys::pack(p, k, j), Rational(1)}});
          SparseVec ker;
          if (!te.insert(SparseVec::from_entries(std::move(row)), unit, &ker)) kernel.push_back(std::move(ker));
        }
      }
    }
    out.basis.push_back(std::move(kernel));
  }
  return out;
}

}  // namespace kmflag
