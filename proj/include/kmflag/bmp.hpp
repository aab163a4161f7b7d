#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kmflag/kl.hpp"
#include "kmflag/moment_graph.hpp"

namespace kmflag {

struct BMPOptions {
  /// Defaults to 2 * (max length in the ideal - l(x)) + 4.
  std::optional<int> degree_cap;
  /// When set, vertices of equal length are visited in a shuffled order.
  std::optional<uint64_t> shuffle_seed;
};

/// Canonical sheaf B(x) on a moment graph: graded free stalks supported on
/// {w : x <= w}.
class BMPSheaf {
public:
  const MomentGraph& graph() const { return *graph_; }
  std::size_t base() const { return base_; }
  int degree_cap() const { return cap_; }
  /// Generator degrees of the stalk at vertex v, ascending.
  const std::vector<int>& stalk(std::size_t v) const { return stalks_[v]; }
  const std::vector<int>& stalk(const WeylElement& w) const { return stalks_[graph_->vertices().index_of(w)]; }
  /// Vertices in the order they were processed.
  const std::vector<std::size_t>& order() const { return order_; }

  GraphSheaf to_graph_sheaf() const;

private:
  friend BMPSheaf compute_bmp(const MomentGraph&, const WeylElement&, const BMPOptions&);
  const MomentGraph* graph_ = nullptr;
  std::size_t base_ = 0;
  int cap_ = 0;
  std::vector<std::vector<int>> stalks_;
  std::vector<std::size_t> order_;
  // upper_images_[edge][k]: image of generator k of the upper vertex in the
  // edge module, keys pack(0, generator of the lower vertex, monomial).
  std::vector<std::vector<SparseVec>> upper_images_;
};

/// Throws BaseNotVertex, CapBoundaryGenerator.
BMPSheaf compute_bmp(const MomentGraph& graph, const WeylElement& x, const BMPOptions& options = {});

/// sum over generator degrees d of q^(d/2)
QPolynomial stalk_poincare(const BMPSheaf& sheaf, const WeylElement& w);

struct VerifyEntry {
  WeylElement w;
  QPolynomial stalk;
  QPolynomial inverse_kl;
  bool pass;
};

struct VerifyReport {
  WeylElement base;
  std::vector<VerifyEntry> entries;
  bool all_pass() const;
};

/// Compares stalks of B(x) with Q_{x,w} for every vertex w >= x. Throws
/// IntervalNotContained when the table lacks some w.
VerifyReport verify_against_inverse_kl(const MomentGraph& graph, const WeylElement& x, const KLTable& table,
                                       const BMPOptions& options = {});

}  // namespace kmflag
