#include "kmflag/graded_algebra.hpp"

#include <numeric>
#include <sstream>

#include "kmflag/error.hpp"

namespace kmflag {

namespace {

int total(const SPolynomial::Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

SPolynomial SPolynomial::constant(int nvars, const Rational& c) {
  SPolynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

SPolynomial SPolynomial::variable(int nvars, int i) {
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(e);
}

SPolynomial SPolynomial::monomial(const Exponent& e, const Rational& c) {
  SPolynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

SPolynomial SPolynomial::linear(const std::vector<Rational>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  SPolynomial p(n);
  for (int i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

SPolynomial SPolynomial::linear(const std::vector<int64_t>& coeffs) {
  return linear(std::vector<Rational>(coeffs.begin(), coeffs.end()));
}

Rational SPolynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SPolynomial::add_term(const Exponent& e, const Rational& c) {
  if (c.is_zero()) return;
  if (n_ == 0) n_ = static_cast<int>(e.size());
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool SPolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int t = total(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (total(e) != t) return false;
  return true;
}

std::optional<int> SPolynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  if (!is_homogeneous()) throw Error(ErrorCode::DegreeMismatch, "polynomial is not homogeneous: " + to_string());
  return 2 * total(terms_.begin()->first);
}

bool SPolynomial::is_linear_form() const {
  for (const auto& [e, c] : terms_)
    if (total(e) != 1) return false;
  return !terms_.empty();
}

std::string SPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending exponent order puts x1^2 before x1x2 before x2^2.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool unit = total(e) == 0;
    std::string cs = c.to_string();
    if (c.sign() < 0) {
      os << "-";
      cs = (-c).to_string();
    } else if (!first) {
      os << "+";
    }
    if (unit || cs != "1") os << cs;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
    first = false;
  }
  return os.str();
}

SPolynomial& SPolynomial::operator+=(const SPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SPolynomial& SPolynomial::operator-=(const SPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SPolynomial& SPolynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

SPolynomial operator*(const SPolynomial& a, const SPolynomial& b) {
  SPolynomial r(std::max(a.n_, b.n_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      SPolynomial::Exponent e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

int eliminated_variable(const SPolynomial& alpha) {
  if (alpha.is_zero()) throw Error(ErrorCode::ZeroForm, "cannot reduce modulo the zero form");
  if (!alpha.is_linear_form()) throw Error(ErrorCode::DegreeMismatch, "not a linear form: " + alpha.to_string());
  const int n = alpha.nvars();
  for (int i = 0; i < n; ++i) {
    SPolynomial::Exponent e(n, 0);
    e[i] = 1;
    if (!alpha.coeff(e).is_zero()) return i;
  }
  throw Error(ErrorCode::ZeroForm, "cannot reduce modulo the zero form");
}

SPolynomial reduce_mod_linear(const SPolynomial& p, const SPolynomial& alpha) {
  const int k = eliminated_variable(alpha);
  const int n = alpha.nvars();
  SPolynomial::Exponent ek(n, 0);
  ek[k] = 1;
  // x_k = sub
  SPolynomial sub(n);
  const Rational lead = alpha.coeff(ek);
  for (const auto& [e, c] : alpha.terms())
    if (e != ek) sub.add_term(e, -c / lead);

  std::vector<SPolynomial> powers{SPolynomial::constant(n, 1)};
  SPolynomial r(n);
  for (const auto& [e, c] : p.terms()) {
    const int m = e[k];
    while (static_cast<int>(powers.size()) <= m) powers.push_back(powers.back() * sub);
    SPolynomial::Exponent rest(e);
    rest[k] = 0;
    r += SPolynomial::monomial(rest, c) * powers[m];
  }
  return r;
}

std::optional<SPolynomial> divide_by_linear(const SPolynomial& p, const SPolynomial& alpha) {
  const int k = eliminated_variable(alpha);
  const int n = alpha.nvars();
  SPolynomial::Exponent ek(n, 0);
  ek[k] = 1;
  const Rational lead = alpha.coeff(ek);
  SPolynomial quotient(n);
  SPolynomial rem = p;
  for (;;) {
    // term with the largest power of x_k
    const SPolynomial::Exponent* best = nullptr;
    for (const auto& [e, c] : rem.terms())
      if (e[k] > 0 && (!best || e[k] > (*best)[k])) best = &e;
    if (!best) break;
    SPolynomial::Exponent e = *best;
    Rational c = rem.coeff(e) / lead;
    e[k] -= 1;
    SPolynomial t = SPolynomial::monomial(e, c);
    quotient += t;
    rem -= t * alpha;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quotient;
}

MonomialTable::MonomialTable(int nvars) : n_(nvars) { ensure(0); }

void MonomialTable::ensure(int t) {
  while (static_cast<int>(mons_.size()) <= t) {
    const int d = static_cast<int>(mons_.size());
    std::vector<SPolynomial::Exponent> list;
    if (n_ == 0) {
      if (d == 0) list.emplace_back();
    } else {
      // lexicographically decreasing: x1^d first
      SPolynomial::Exponent e(n_, 0);
      auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n_ - 1) {
          e[i] = left;
          list.push_back(e);
          return;
        }
        for (int a = left; a >= 0; --a) {
          e[i] = a;
          self(self, i + 1, left - a);
        }
      };
      rec(rec, 0, d);
    }
    std::map<SPolynomial::Exponent, std::size_t> idx;
    for (std::size_t i = 0; i < list.size(); ++i) idx.emplace(list[i], i);
    mons_.push_back(std::move(list));
    index_.push_back(std::move(idx));
    times_.emplace_back();
  }
}

std::size_t MonomialTable::count(int t) {
  ensure(t);
  return mons_[t].size();
}

const SPolynomial::Exponent& MonomialTable::exponent(int t, std::size_t idx) {
  ensure(t);
  return mons_[t][idx];
}

std::size_t MonomialTable::index(const SPolynomial::Exponent& e) {
  const int t = total(e);
  ensure(t);
  return index_[t].at(e);
}

std::size_t MonomialTable::times_var(int t, std::size_t idx, int i) {
  ensure(t + 1);
  auto& tab = times_[t];
  if (tab.empty()) {
    tab.resize(mons_[t].size() * n_);
    for (std::size_t j = 0; j < mons_[t].size(); ++j)
      for (int v = 0; v < n_; ++v) {
        SPolynomial::Exponent e = mons_[t][j];
        ++e[v];
        tab[j * n_ + v] = index_[t + 1].at(e);
      }
  }
  return tab[idx * n_ + i];
}

std::size_t MonomialTable::product(int t1, std::size_t i1, int t2, std::size_t i2) {
  ensure(t1 + t2);
  SPolynomial::Exponent e = mons_[t1][i1];
  const auto& f = mons_[t2][i2];
  for (int v = 0; v < n_; ++v) e[v] += f[v];
  return index_[t1 + t2].at(e);
}

GradedModuleRep::GradedModuleRep(int nvars, std::vector<CyclicPiece> pieces, std::vector<ModuleElement> generators,
                                 int degree_cap)
    : n_(nvars), pieces_(std::move(pieces)), gens_(std::move(generators)), cap_(degree_cap) {
  for (const auto& p : pieces_)
    if (p.modulus) eliminated_variable(*p.modulus);
  for (auto& g : gens_) {
    if (g.size() != pieces_.size())
      throw Error(ErrorCode::DegreeMismatch, "generator has the wrong number of components");
    g = normalize(g);
    element_degree(g);
  }
}

ModuleElement GradedModuleRep::normalize(const ModuleElement& m) const {
  ModuleElement r(m.size(), SPolynomial(n_));
  for (std::size_t i = 0; i < m.size(); ++i)
    r[i] = pieces_[i].modulus ? reduce_mod_linear(m[i], *pieces_[i].modulus) : m[i];
  return r;
}

std::optional<int> GradedModuleRep::element_degree(const ModuleElement& m) const {
  std::optional<int> deg;
  ModuleElement nm = normalize(m);
  for (std::size_t i = 0; i < nm.size(); ++i) {
    auto d = nm[i].degree();
    if (!d) continue;
    int full = *d + pieces_[i].shift;
    if (deg && *deg != full) throw Error(ErrorCode::DegreeMismatch, "element is not homogeneous");
    deg = full;
  }
  return deg;
}

SparseVec GradedModuleRep::coordinates(const ModuleElement& m, int d, MonomialTable& mons) const {
  std::vector<SparseVec::Entry> entries;
  ModuleElement nm = normalize(m);
  for (std::size_t i = 0; i < nm.size(); ++i)
    for (const auto& [e, c] : nm[i].terms()) {
      if (2 * total(e) + pieces_[i].shift != d)
        throw Error(ErrorCode::DegreeMismatch, "component is not of degree " + std::to_string(d));
      entries.emplace_back(keys::pack(i, 0, mons.index(e)), c);
    }
  return SparseVec::from_entries(std::move(entries));
}

ModuleElement GradedModuleRep::from_coordinates(const SparseVec& v, int d, MonomialTable& mons) const {
  ModuleElement m(pieces_.size(), SPolynomial(n_));
  for (const auto& [k, c] : v.entries()) {
    const auto piece = keys::hi(k);
    const int t = (d - pieces_[piece].shift) / 2;
    m[piece].add_term(mons.exponent(t, keys::lo(k)), c);
  }
  return m;
}

SparseVec GradedModuleRep::multiply_coordinates(const SparseVec& v, int d, int i, MonomialTable& mons) const {
  std::vector<SparseVec::Entry> entries;
  for (const auto& [k, c] : v.entries()) {
    const auto piece = keys::hi(k);
    const int t = (d - pieces_[piece].shift) / 2;
    const std::size_t idx = mons.times_var(t, keys::lo(k), i);
    if (!pieces_[piece].modulus) {
      entries.emplace_back(keys::pack(piece, 0, idx), c);
      continue;
    }
    SPolynomial nf = reduce_mod_linear(SPolynomial::monomial(mons.exponent(t + 1, idx), c), *pieces_[piece].modulus);
    for (const auto& [e, a] : nf.terms()) entries.emplace_back(keys::pack(piece, 0, mons.index(e)), a);
  }
  return SparseVec::from_entries(std::move(entries));
}

std::vector<SparseVec> degree_basis(const GradedModuleRep& module, int d, MonomialTable& mons) {
  if (d > module.degree_cap())
    throw Error(ErrorCode::DegreeCapExceeded,
                "degree " + std::to_string(d) + " exceeds cap " + std::to_string(module.degree_cap()));
  EchelonBasis basis;
  if (d % 2 != 0) return {};
  for (const auto& g : module.generators()) {
    auto dg = module.element_degree(g);
    if (!dg || *dg > d) continue;
    const int t = (d - *dg) / 2;
    for (std::size_t j = 0; j < mons.count(t); ++j) {
      SPolynomial mu = SPolynomial::monomial(mons.exponent(t, j));
      ModuleElement prod(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) prod[i] = mu * g[i];
      basis.insert(module.coordinates(prod, d, mons));
    }
  }
  return basis.rows();
}

std::vector<SparseVec> degree_basis(const GradedModuleRep& module, int d) {
  MonomialTable mons(module.nvars());
  return degree_basis(module, d, mons);
}

std::vector<std::size_t> select_new_generators(const std::vector<SparseVec>& m_d,
                                               const std::vector<SparseVec>& s_plus_d) {
  EchelonBasis span;
  for (const auto& v : s_plus_d) span.insert(v);
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < m_d.size(); ++j)
    if (span.insert(m_d[j])) chosen.push_back(j);
  return chosen;
}

GeneratorSet minimal_generators(const GradedModuleRep& module) {
  MonomialTable mons(module.nvars());
  GeneratorSet out;
  std::vector<SparseVec> prev;
  for (int d = 0; d <= module.degree_cap(); d += 2) {
    std::vector<SparseVec> cur = degree_basis(module, d, mons);
    std::vector<SparseVec> s_plus;
    for (const auto& v : prev)
      for (int i = 0; i < module.nvars(); ++i) s_plus.push_back(module.multiply_coordinates(v, d - 2, i, mons));
    for (std::size_t j : select_new_generators(cur, s_plus)) {
      if (d >= module.degree_cap() - 2)
        throw Error(ErrorCode::CapBoundaryGenerator,
                    "generator in degree " + std::to_string(d) + " is too close to the cap " +
                        std::to_string(module.degree_cap()));
      out.degrees.push_back(d);
      out.representatives.push_back(module.from_coordinates(cur[j], d, mons));
    }
    prev = std::move(cur);
  }
  return out;
}

GradedModuleRep image_module(const ModuleMap& map, const GradedModuleRep& source) {
  if (map.images.size() != source.generators().size())
    throw Error(ErrorCode::DegreeMismatch, "map does not give one image per source generator");
  GradedModuleRep target(source.nvars(), map.target, {}, source.degree_cap());
  std::vector<ModuleElement> gens;
  for (std::size_t j = 0; j < map.images.size(); ++j) {
    if (map.images[j].size() != map.target.size())
      throw Error(ErrorCode::DegreeMismatch, "image has the wrong number of components");
    auto di = target.element_degree(map.images[j]);
    if (!di) continue;
    auto ds = source.element_degree(source.generators()[j]);
    if (ds != di)
      throw Error(ErrorCode::DegreeMismatch, "image of generator " + std::to_string(j) + " has degree " +
                                                 std::to_string(*di) + ", expected " +
                                                 (ds ? std::to_string(*ds) : std::string("none")));
    gens.push_back(map.images[j]);
  }
  return GradedModuleRep(source.nvars(), map.target, std::move(gens), source.degree_cap());
}

}  // namespace kmflag
