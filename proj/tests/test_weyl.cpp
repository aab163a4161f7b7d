#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "kmflag/error.hpp"
#include "kmflag/weyl.hpp"
#include "oracles.hpp"

using namespace kmflag;

namespace {

WeylGroup make(const std::vector<std::vector<int64_t>>& m) { return WeylGroup(RootDatum::validate(m)); }

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

}  // namespace

TEST_CASE("lengths and canonical words") {
  auto a2 = make(kA2);
  CHECK(a2.identity().length() == 0);
  CHECK(a2.identity().word_string() == "e");
  CHECK(a2.parse("1,2,1").length() == 3);
  CHECK(a2.parse("2,1,2") == a2.parse("1,2,1"));
  CHECK(a2.parse("2,1,2").word_string() == "1,2,1");
  CHECK(a2.parse("1,1").is_identity());
  auto aff = make(kAffA1);
  CHECK(aff.parse("1,2,1,2").length() == 4);
  // greedy smallest left descent
  auto a3 = make(kA3);
  WeylElement w = a3.parse("3,1");
  CHECK(w.word_string() == "1,3");
  auto all3 = a3.enumerate_ideal(6);
  for (const auto& u : all3.elements()) {
    CHECK(a3.from_word(u.reduced_word()) == u);
    if (!u.is_identity()) {
      int first = u.reduced_word().front();
      for (int i = 0; i < first; ++i) CHECK_FALSE(a3.is_left_descent(u, i));
      CHECK(a3.is_left_descent(u, first));
    }
  }
}

TEST_CASE("word parsing") {
  auto a2 = make(kA2);
  CHECK(parse_word("e", 2).empty());
  CHECK(parse_word("", 2).empty());
  CHECK(parse_word("1, 2,1", 2) == std::vector<int>{0, 1, 0});
  CHECK(code_of([] { parse_word("1,3", 2); }) == ErrorCode::BadInput);
  CHECK(code_of([] { parse_word("0", 2); }) == ErrorCode::BadInput);
  CHECK(code_of([] { parse_word("1,,2", 2); }) == ErrorCode::BadInput);
  CHECK(code_of([] { parse_word("a", 2); }) == ErrorCode::BadInput);
}

TEST_CASE("Bruhat order examples") {
  auto a2 = make(kA2);
  CHECK(a2.bruhat_leq(a2.identity(), a2.parse("1,2,1")));
  CHECK(a2.bruhat_leq(a2.parse("1"), a2.parse("1,2")));
  CHECK_FALSE(a2.bruhat_leq(a2.parse("1"), a2.parse("2")));
  CHECK_FALSE(a2.bruhat_leq(a2.parse("1,2"), a2.parse("2,1")));
}

TEST_CASE("Bruhat order agrees with the permutation tableau criterion on S4") {
  auto a3 = make(kA3);
  auto ideal = a3.enumerate_ideal(6);
  const auto& el = ideal.elements();
  REQUIRE(el.size() == 24);
  for (const auto& y : el) {
    auto py = oracle::perm_from_word(4, y.reduced_word());
    CHECK(oracle::perm_length(py) == y.length());
    for (const auto& w : el)
      CHECK(a3.bruhat_leq(y, w) == oracle::perm_bruhat_leq(py, oracle::perm_from_word(4, w.reduced_word())));
  }
}

TEST_CASE("Bruhat order is a partial order and matches covering closure") {
  for (const auto& [m, len] : std::vector<std::pair<std::vector<std::vector<int64_t>>, int>>{
           {kA2, 3}, {kB2, 4}, {kA3, 6}, {kAffA1, 6}}) {
    auto g = make(m);
    auto ideal = g.enumerate_ideal(len);
    const auto& el = ideal.elements();
    oracle::CoverClosure order(g, el);
    for (std::size_t a = 0; a < el.size(); ++a) {
      CHECK(g.bruhat_leq(el[a], el[a]));
      for (std::size_t b = 0; b < el.size(); ++b) {
        CHECK(g.bruhat_leq(el[a], el[b]) == order.leq(a, b));
        if (a != b && g.bruhat_leq(el[a], el[b])) CHECK_FALSE(g.bruhat_leq(el[b], el[a]));
      }
    }
  }
}

TEST_CASE("reflections") {
  auto a2 = make(kA2);
  CHECK(a2.reflection(RootVector({1, 0})) == a2.simple(0));
  CHECK(a2.reflection(RootVector({1, 1})) == a2.parse("1,2,1"));
  CHECK(a2.reflection(RootVector({-1, -1})) == a2.parse("1,2,1"));
  CHECK(code_of([&] { a2.reflection(RootVector({1, 2})); }) == ErrorCode::NotRealRoot);
  auto aff = make(kAffA1);
  for (const auto& beta : aff.datum().positive_real_roots(9)) {
    WeylElement t = aff.reflection(beta);
    CHECK(aff.multiply(t, t).is_identity());
    CHECK(aff.reflection_root(t) == beta);
    CHECK(aff.apply(t, beta) == -beta);
  }
  CHECK_FALSE(aff.reflection_root(aff.parse("1,2")));
  CHECK_FALSE(aff.reflection_root(aff.identity()));
}

TEST_CASE("ideal enumeration") {
  auto a2 = make(kA2);
  auto j = a2.enumerate_ideal(2);
  CHECK(j.size() == 5);
  CHECK(a2.enumerate_ideal(0).size() == 1);
  CHECK(a2.enumerate_ideal(10).size() == 6);
  auto aff = make(kAffA1);
  CHECK(aff.enumerate_ideal(3).size() == 7);
  CHECK(aff.enumerate_ideal(6).size() == 13);
  CHECK(make(kB2).enumerate_ideal(4).size() == 8);
  auto hyp = make({{2, -3}, {-3, 2}});
  CHECK(code_of([&] { hyp.enumerate_ideal(200, 50); }) == ErrorCode::SizeLimitExceeded);
  CHECK(code_of([&] { j.index_of(a2.parse("1,2,1")); }) == ErrorCode::NotInIdeal);

  // downward closed
  auto a3 = make(kA3);
  auto j3 = a3.enumerate_ideal(3);
  auto all = a3.enumerate_ideal(6);
  for (const auto& x : j3.elements())
    for (const auto& y : all.elements())
      if (a3.bruhat_leq(y, x)) CHECK(j3.contains(y));

  // generated ideals are lower intervals
  auto gen = a3.ideal_from_generators({a3.parse("2,1,3,2"), a3.parse("1,2")});
  for (const auto& y : all.elements()) {
    bool below = a3.bruhat_leq(y, a3.parse("2,1,3,2")) || a3.bruhat_leq(y, a3.parse("1,2"));
    CHECK(gen.contains(y) == below);
  }
  CHECK(a3.ideal_from_generators({all.elements().back()}).size() == 24);
}

TEST_CASE("inversion sets and lengths") {
  auto a2 = make(kA2);
  CHECK(a2.inversion_set(a2.identity()).empty());
  auto inv = a2.inversion_set(a2.parse("1,2"));
  std::set<RootVector> s(inv.begin(), inv.end());
  CHECK(s == std::set<RootVector>{RootVector({1, 0}), RootVector({1, 1})});
  auto a3 = make(kA3);
  auto all3 = a3.enumerate_ideal(6);
  for (const auto& u : all3.elements()) {
    auto iv = a3.inversion_set(u);
    CHECK(static_cast<int>(iv.size()) == u.length());
    for (const auto& b : iv) CHECK(u.inverse_action().apply(b).is_negative());
  }
  // l(uv) = l(u) + l(v) - 2 |inv(u^{-1}) cap inv(v)|
  auto full = a2.enumerate_ideal(3);
  const auto& el = full.elements();
  for (const auto& u : el)
    for (const auto& v : el) {
      auto a = a2.inversion_set(a2.inverse(u));
      auto b = a2.inversion_set(v);
      std::set<RootVector> sa(a.begin(), a.end());
      int common = 0;
      for (const auto& r : b) common += static_cast<int>(sa.count(r));
      const int luv = a2.multiply(u, v).length();
      CHECK(luv <= u.length() + v.length());
      CHECK(luv == u.length() + v.length() - 2 * common);
    }
}

TEST_CASE("complement of S_J and stratum dimensions") {
  auto a2 = make(kA2);
  auto e_only = a2.enumerate_ideal(0);
  CHECK(a2.sj_complement(e_only).empty());
  auto j1 = a2.enumerate_ideal(1);
  CHECK(a2.sj_complement(j1) == std::set<RootVector>{RootVector({1, 0}), RootVector({0, 1})});
  auto full = a2.enumerate_ideal(3);
  CHECK(a2.sj_complement(full).size() == 3);
  CHECK(a2.stratum_dimension(a2.identity(), e_only) == 0);
  CHECK(a2.stratum_dimension(a2.parse("1"), j1) == 1);
  CHECK(a2.stratum_dimension(a2.parse("1,2,1"), full) == 0);
  CHECK(code_of([&] { a2.stratum_dimension(a2.parse("1,2"), j1); }) == ErrorCode::NotInIdeal);

  auto aff = make(kAffA1);
  for (int n = 0; n <= 6; ++n) {
    auto j = aff.enumerate_ideal(n);
    auto comp = aff.sj_complement(j);
    const int expected = n == 0 ? 0 : 2 * n;  // two elements of each positive length
    CHECK(static_cast<int>(comp.size()) == expected);
    for (const auto& x : j.elements()) {
      CHECK(aff.stratum_dimension(x, j) == expected - x.length());
      // the complement contains every inversion set of the ideal
      for (const auto& b : aff.inversion_set(x)) CHECK(comp.count(b) == 1);
    }
  }
}

TEST_CASE("dot action") {
  auto a1 = make({{2}});
  auto lam = WeightCoords::from_pairings({Rational(-2)});
  CHECK(a1.dot_action(a1.identity(), lam) == lam);
  auto s = a1.dot_action(a1.simple(0), lam);
  CHECK(s.pairings[0] == Rational(0));
  CHECK(s.offset[0] == Rational(1));

  auto a2 = make(kA2);
  std::mt19937_64 rng(5);
  auto full = a2.enumerate_ideal(3);
  const auto& el = full.elements();
  for (int trial = 0; trial < 50; ++trial) {
    auto mu = WeightCoords::from_pairings(
        {Rational(static_cast<int64_t>(rng() % 11) - 5, 1 + static_cast<int64_t>(rng() % 3)),
         Rational(static_cast<int64_t>(rng() % 11) - 5)});
    const auto& u = el[rng() % el.size()];
    const auto& v = el[rng() % el.size()];
    CHECK(a2.dot_action(u, a2.dot_action(v, mu)) == a2.dot_action(a2.multiply(u, v), mu));
  }
}
