#pragma once

#include <cstddef>
#include <vector>

#include "kmflag/graded_algebra.hpp"
#include "kmflag/weyl.hpp"

namespace kmflag {

/// Edge {lower, upper = s_label * lower}; lower < upper in the Bruhat order.
struct MomentEdge {
  std::size_t lower;
  std::size_t upper;
  RootVector label;
};

/// Moment graph of a finite Bruhat ideal. Vertex indices are ideal indices.
/// The order stored is the Bruhat order itself.
class MomentGraph {
public:
  const BruhatIdeal& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<MomentEdge>& edges() const { return edges_; }
  bool is_dual() const { return dual_; }
  int rank() const { return rank_; }
  /// Edge indices incident to vertex v.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  /// Covering relations (a, b): a < b with l(b) = l(a) + 1.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

private:
  friend MomentGraph build_moment_graph(const WeylGroup&, const BruhatIdeal&, bool);
  BruhatIdeal vertices_;
  std::vector<MomentEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<char> leq_;
  bool dual_ = false;
  int rank_ = 0;
};

/// Edges are the pairs {x, y} in the ideal with y x^{-1} a reflection. With
/// dual set, labels are the roots of the same reflections in the Weyl group
/// of the transposed Cartan matrix (that is, the coroots).
MomentGraph build_moment_graph(const WeylGroup& group, const BruhatIdeal& ideal, bool dual);

/// Whether z_x - z_y is divisible by the label of every edge {x, y}.
bool structure_algebra_check(const MomentGraph& graph, const std::vector<SPolynomial>& tuple);

/// Sheaf on a moment graph with graded free vertex modules. Each edge module
/// is a sum of cyclic pieces; the maps give the image of every vertex
/// generator in the edge module.
struct GraphSheaf {
  int nvars = 0;
  int degree_cap = 0;
  std::vector<std::vector<int>> vertex_degrees;
  std::vector<std::vector<CyclicPiece>> edge_pieces;
  std::vector<std::vector<ModuleElement>> lower_maps;
  std::vector<std::vector<ModuleElement>> upper_maps;
};

/// Stalks S, edge modules S/(label), restriction maps the quotient maps.
GraphSheaf constant_sheaf(const MomentGraph& graph, int degree_cap);

/// Throws PredicateViolation if an edge module is not killed by its label.
void check_edge_annihilation(const MomentGraph& graph, const GraphSheaf& sheaf);

struct SectionSpace {
  std::vector<std::size_t> vertices;
  int degree_cap = 0;
  /// basis[d / 2]: keys pack(position in vertices, generator, monomial).
  std::vector<std::vector<SparseVec>> basis;
  std::size_t dimension(int d) const { return basis[d / 2].size(); }
};

/// Sections over the vertex subset (only edges with both ends inside count),
/// degreewise up to cap. Throws DegreeCapExceeded if cap > sheaf.degree_cap.
SectionSpace sections(const MomentGraph& graph, const GraphSheaf& sheaf, const std::vector<std::size_t>& subset,
                      int cap);

}  // namespace kmflag
