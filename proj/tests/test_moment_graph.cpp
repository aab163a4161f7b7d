#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "doctest.h"
#include "kmflag/error.hpp"
#include "kmflag/moment_graph.hpp"

using namespace kmflag;

namespace {

WeylGroup make(const std::vector<std::vector<int64_t>>& m) { return WeylGroup(RootDatum::validate(m)); }

const std::vector<std::vector<int64_t>> kA1{{2}};
const std::vector<std::vector<int64_t>> kA2{{2, -1}, {-1, 2}};
const std::vector<std::vector<int64_t>> kB2{{2, -2}, {-1, 2}};
const std::vector<std::vector<int64_t>> kA3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const std::vector<std::vector<int64_t>> kAffA1{{2, -2}, {-2, 2}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadInput;
}

SPolynomial form(const RootVector& r) { return SPolynomial::linear(r.coords); }

std::vector<std::size_t> all_vertices(const MomentGraph& g) {
  std::vector<std::size_t> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

int64_t binom(int64_t a, int64_t b) {
  if (b < 0 || b > a) return 0;
  int64_t r = 1;
  for (int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

// dimension of the degree d piece of a polynomial ring in n variables
int64_t sym_dim(int n, int d) { return d < 0 ? 0 : binom(d / 2 + n - 1, n - 1); }

}  // namespace

TEST_CASE("edge counts") {
  auto a1 = make(kA1);
  auto g1 = build_moment_graph(a1, a1.enumerate_ideal(1), false);
  REQUIRE(g1.edges().size() == 1);
  CHECK(g1.edges()[0].label == RootVector({1}));
  CHECK(g1.edges()[0].lower == 0);
  CHECK(g1.edges()[0].upper == 1);

  for (const auto& [m, len, npos] : std::vector<std::tuple<std::vector<std::vector<int64_t>>, int, std::size_t>>{
           {kA2, 3, 3}, {kB2, 4, 4}, {kA3, 6, 6}}) {
    auto w = make(m);
    auto g = build_moment_graph(w, w.enumerate_ideal(len), false);
    CHECK(g.edges().size() == npos * g.size() / 2);
  }
}

TEST_CASE("edge structure") {
  for (const auto& [m, len] : std::vector<std::pair<std::vector<std::vector<int64_t>>, int>>{
           {kA2, 3}, {kB2, 4}, {kA3, 6}, {kAffA1, 6}, {{{2, -3}, {-1, 2}}, 5}}) {
    auto w = make(m);
    auto g = build_moment_graph(w, w.enumerate_ideal(len), false);
    const auto& el = g.vertices().elements();
    for (const auto& e : g.edges()) {
      CHECK(e.lower != e.upper);
      CHECK(g.leq(e.lower, e.upper));
      CHECK(e.label.is_positive());
      CHECK(w.multiply(w.reflection(e.label), el[e.lower]) == el[e.upper]);
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
      const auto& inc = g.incident(v);
      for (std::size_t a = 0; a < inc.size(); ++a)
        for (std::size_t b = a + 1; b < inc.size(); ++b) {
          const auto& p = g.edges()[inc[a]].label;
          const auto& q = g.edges()[inc[b]].label;
          // non-proportional: some 2x2 minor is nonzero
          bool independent = false;
          for (int i = 0; i < p.size(); ++i)
            for (int j = i + 1; j < p.size(); ++j) independent |= p[i] * q[j] != p[j] * q[i];
          CHECK(independent);
        }
    }
    // every covering relation is an edge
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : g.edges()) pairs.insert({e.lower, e.upper});
    for (const auto& c : g.covers()) CHECK(pairs.count(c) == 1);
  }
}

TEST_CASE("dual graph carries the coroots") {
  for (const auto& [m, len] : std::vector<std::pair<std::vector<std::vector<int64_t>>, int>>{
           {kB2, 4}, {{{2, -3}, {-1, 2}}, 6}, {{{2, -4}, {-1, 2}}, 5}}) {
    auto w = make(m);
    auto ideal = w.enumerate_ideal(len);
    auto g = build_moment_graph(w, ideal, false);
    auto d = build_moment_graph(w, ideal, true);
    CHECK(d.is_dual());
    CHECK_FALSE(g.is_dual());
    REQUIRE(g.edges().size() == d.edges().size());
    std::map<std::pair<std::size_t, std::size_t>, RootVector> dual_labels;
    for (const auto& e : d.edges()) dual_labels[{e.lower, e.upper}] = e.label;
    for (const auto& e : g.edges()) {
      auto it = dual_labels.find({e.lower, e.upper});
      REQUIRE(it != dual_labels.end());
      CHECK(it->second == w.datum().coroot(e.label));
    }
  }
}

TEST_CASE("structure algebra membership") {
  auto a1 = make(kA1);
  auto g1 = build_moment_graph(a1, a1.enumerate_ideal(1), false);
  CHECK(structure_algebra_check(g1, {SPolynomial::constant(1, 5), SPolynomial::constant(1, 5)}));
  CHECK(structure_algebra_check(g1, {SPolynomial::variable(1, 0), SPolynomial(1)}));
  CHECK_FALSE(structure_algebra_check(g1, {SPolynomial::constant(1, 1), SPolynomial(1)}));

  // z_x = x(lambda) is always a section
  for (const auto& [m, len] : std::vector<std::pair<std::vector<std::vector<int64_t>>, int>>{
           {kA2, 3}, {kB2, 4}, {kA3, 6}, {kAffA1, 5}}) {
    auto w = make(m);
    auto g = build_moment_graph(w, w.enumerate_ideal(len), false);
    const int n = w.rank();
    for (int i = 0; i < n; ++i) {
      RootVector lambda = RootVector::simple(n, i);
      lambda[(i + 1) % n] += 2;
      std::vector<SPolynomial> z, sq;
      for (const auto& x : g.vertices().elements()) {
        z.push_back(form(w.apply(x, lambda)));
        sq.push_back(z.back() * z.back());
      }
      CHECK(structure_algebra_check(g, z));
      CHECK(structure_algebra_check(g, sq));
      // perturbing a single vertex by a constant breaks it
      z[g.size() / 2] += SPolynomial::constant(n, 1);
      CHECK_FALSE(structure_algebra_check(g, z));
    }
  }
}

TEST_CASE("sections of the constant sheaf") {
  auto a1 = make(kA1);
  auto g1 = build_moment_graph(a1, a1.enumerate_ideal(1), false);
  auto sh1 = constant_sheaf(g1, 6);
  check_edge_annihilation(g1, sh1);
  auto s1 = sections(g1, sh1, {0, 1}, 6);
  CHECK(s1.dimension(0) == 1);
  CHECK(s1.dimension(2) == 2);
  auto single = sections(g1, sh1, {1}, 6);
  for (int d = 0; d <= 6; d += 2) CHECK(single.dimension(d) == 1);
  CHECK(code_of([&] { sections(g1, sh1, {0, 1}, 8); }) == ErrorCode::DegreeCapExceeded);

  // equivariant cohomology of a flag variety is free with generators in degrees 2 l(w)
  for (const auto& [m, len] : std::vector<std::pair<std::vector<std::vector<int64_t>>, int>>{{kA2, 3}, {kB2, 4}}) {
    auto w = make(m);
    auto g = build_moment_graph(w, w.enumerate_ideal(len), false);
    const int cap = 8;
    auto s = sections(g, constant_sheaf(g, cap), all_vertices(g), cap);
    for (int d = 0; d <= cap; d += 2) {
      int64_t expected = 0;
      for (const auto& x : g.vertices().elements()) expected += sym_dim(2, d - 2 * x.length());
      CHECK(static_cast<int64_t>(s.dimension(d)) == expected);
    }
  }
}

TEST_CASE("sections over disjoint vertices form a direct sum") {
  auto a2 = make(kA2);
  auto g = build_moment_graph(a2, a2.enumerate_ideal(3), false);
  auto sh = constant_sheaf(g, 6);
  // s1 and s2 are not joined by an edge
  const std::size_t v1 = g.vertices().index_of(a2.parse("1"));
  const std::size_t v2 = g.vertices().index_of(a2.parse("2"));
  auto both = sections(g, sh, {v1, v2}, 6);
  for (int d = 0; d <= 6; d += 2) CHECK(both.dimension(d) == 2 * static_cast<std::size_t>(sym_dim(2, d)));
}

TEST_CASE("sections restrict to smaller subsets") {
  auto b2 = make(kB2);
  auto g = build_moment_graph(b2, b2.enumerate_ideal(4), false);
  const int cap = 6;
  auto sh = constant_sheaf(g, cap);
  const auto& el = g.vertices().elements();
  std::vector<std::size_t> big, small;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (el[v].length() <= 3) big.push_back(v);
    if (el[v].length() <= 1) small.push_back(v);
  }
  auto sb = sections(g, sh, big, cap);
  auto ss = sections(g, sh, small, cap);
  // positions in `small` are a prefix of positions in `big`
  for (int d = 0; d <= cap; d += 2) {
    EchelonBasis target;
    for (const auto& row : ss.basis[d / 2]) target.insert(row);
    EchelonBasis image;
    for (auto row : sb.basis[d / 2]) {
      row.filter([&](SparseVec::Key k) { return keys::hi(k) < small.size(); });
      CHECK(target.contains(row));
      image.insert(row);
    }
    // the constant sheaf is flabby on these lower sets
    CHECK(image.rank() == target.rank());
  }
}
