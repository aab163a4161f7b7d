#include "kmflag/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kmflag/error.hpp"

namespace kmflag {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RootVector IntMatrix::column(int j) const {
  RootVector v = RootVector::zero(n_);
  for (int i = 0; i < n_; ++i) v[i] = (*this)(i, j);
  return v;
}

RootVector IntMatrix::apply(const RootVector& v) const {
  RootVector out = RootVector::zero(n_);
  for (int i = 0; i < n_; ++i) {
    int64_t s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

std::size_t IntMatrix::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto x : a_) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
  return h;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  const int n = x.size();
  IntMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int64_t xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

std::string word_to_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::ostringstream os;
  for (std::size_t k = 0; k < word.size(); ++k) os << (k ? "," : "") << word[k] + 1;
  return os.str();
}

std::vector<int> parse_word(const std::string& text, int rank) {
  std::vector<int> word;
  if (text.empty() || text == "e") return word;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadInput, "malformed word \"" + text + "\"");
    }
    if (used != tok.size() || v < 1 || v > rank)
      throw Error(ErrorCode::BadInput, "reflection index out of range in \"" + text + "\"");
    word.push_back(v - 1);
  }
  return word;
}

std::string WeylElement::word_string() const { return word_to_string(word_); }

bool shortlex_less(const WeylElement& x, const WeylElement& y) {
  if (x.length() != y.length()) return x.length() < y.length();
  return x.reduced_word() < y.reduced_word();
}

std::size_t BruhatIdeal::index_of(const WeylElement& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw Error(ErrorCode::NotInIdeal, "element " + w.word_string() + " is not in the ideal");
  return it->second;
}

std::optional<std::size_t> BruhatIdeal::find(const WeylElement& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int BruhatIdeal::max_length() const { return elements_.empty() ? 0 : elements_.back().length(); }

WeightCoords WeightCoords::from_pairings(std::vector<Rational> p) {
  WeightCoords w;
  w.offset.assign(p.size(), Rational(0));
  w.pairings = std::move(p);
  return w;
}

bool WeightCoords::is_integral() const {
  return std::all_of(pairings.begin(), pairings.end(), [](const Rational& r) { return r.is_integer(); });
}

WeylGroup::WeylGroup(RootDatum datum) : datum_(std::move(datum)) {
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    IntMatrix s = IntMatrix::identity(n);
    // s_i(alpha_j) = alpha_j - a_ij alpha_i
    for (int j = 0; j < n; ++j) s(i, j) -= datum_.a(i, j);
    simple_.push_back(std::move(s));
  }
}

WeylElement WeylGroup::make(IntMatrix mat, IntMatrix inv) const {
  WeylElement w;
  w.mat_ = std::move(mat);
  w.inv_ = std::move(inv);
  // Greedy left descents: u^{-1}(alpha_i) < 0 means s_i u < u.
  IntMatrix uinv = w.inv_;
  while (true) {
    int desc = -1;
    for (int i = 0; i < rank() && desc < 0; ++i)
      if (uinv.column(i).is_negative()) desc = i;
    if (desc < 0) break;
    w.word_.push_back(desc);
    uinv = uinv * simple_[desc];
  }
  return w;
}

WeylElement WeylGroup::identity() const { return make(IntMatrix::identity(rank()), IntMatrix::identity(rank())); }

WeylElement WeylGroup::simple(int i) const { return make(simple_.at(i), simple_.at(i)); }

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
  IntMatrix m = IntMatrix::identity(rank()), inv = IntMatrix::identity(rank());
  for (int i : word) {
    if (i < 0 || i >= rank()) throw Error(ErrorCode::BadInput, "reflection index out of range");
    m = m * simple_[i];
    inv = simple_[i] * inv;
  }
  return make(std::move(m), std::move(inv));
}

WeylElement WeylGroup::multiply(const WeylElement& u, const WeylElement& v) const {
  return make(u.action() * v.action(), v.inverse_action() * u.inverse_action());
}

WeylElement WeylGroup::inverse(const WeylElement& u) const { return make(u.inverse_action(), u.action()); }

bool WeylGroup::is_left_descent(const WeylElement& u, int i) const {
  return u.inverse_action().column(i).is_negative();
}

bool WeylGroup::is_right_descent(const WeylElement& u, int i) const { return u.action().column(i).is_negative(); }

bool WeylGroup::bruhat_leq(const WeylElement& y, const WeylElement& w) const {
  if (y.length() > w.length()) return false;
  // For s w < w: y <= w iff min(y, s y) <= s w.
  IntMatrix yinv = y.inverse_action();
  int ylen = y.length();
  for (int s : w.reduced_word()) {
    if (yinv.column(s).is_negative()) {
      yinv = yinv * simple_[s];
      --ylen;
    }
  }
  return ylen == 0;
}

WeylElement WeylGroup::reflection(const RootVector& beta) const {
  if (!datum_.is_real_root(beta)) throw Error(ErrorCode::NotRealRoot, "not a real root: " + beta.to_string());
  const int n = rank();
  const int64_t norm = datum_.bilinear(beta, beta);
  IntMatrix m = IntMatrix::identity(n);
  for (int j = 0; j < n; ++j) {
    // <alpha_j, beta^vee> = 2 (alpha_j, beta) / (beta, beta)
    int64_t c = 2 * datum_.bilinear(RootVector::simple(n, j), beta) / norm;
    for (int i = 0; i < n; ++i) m(i, j) -= c * beta[i];
  }
  return make(m, m);
}

std::optional<RootVector> WeylGroup::reflection_root(const WeylElement& t) const {
  if (t.is_identity() || t.length() % 2 == 0) return std::nullopt;
  const int n = rank();
  if (!(t.action() * t.action() == IntMatrix::identity(n))) return std::nullopt;
  std::optional<RootVector> beta;
  for (int j = 0; j < n; ++j) {
    RootVector col = t.action().column(j);
    col[j] -= 1;
    if (col.is_zero()) continue;
    int64_t g = 0;
    for (auto c : col.coords) g = std::gcd(g, c);
    for (auto& c : col.coords) c /= g;
    if (col.is_negative()) col = -col;
    if (!col.is_positive()) return std::nullopt;
    if (!beta) {
      beta = col;
    } else if (!(*beta == col)) {
      return std::nullopt;
    }
  }
  if (!beta || !datum_.is_real_root(*beta)) return std::nullopt;
  if (!(reflection(*beta) == t)) return std::nullopt;
  return beta;
}

BruhatIdeal WeylGroup::enumerate_ideal(int max_length, std::size_t size_limit) const {
  if (max_length < 0) throw Error(ErrorCode::BadInput, "max_length must be nonnegative");
  BruhatIdeal ideal;
  ideal.description_ = BruhatIdeal::MaxLength{max_length};
  std::vector<WeylElement> level{identity()};
  auto add_level = [&](std::vector<WeylElement>& lv) {
    std::sort(lv.begin(), lv.end(), shortlex_less);
    for (auto& w : lv) {
      ideal.index_.emplace(w, ideal.elements_.size());
      ideal.elements_.push_back(w);
    }
    if (ideal.elements_.size() > size_limit)
      throw Error(ErrorCode::SizeLimitExceeded,
                  "ideal exceeds size limit of " + std::to_string(size_limit) + " elements");
  };
  add_level(level);
  for (int len = 1; len <= max_length; ++len) {
    std::vector<WeylElement> next;
    std::unordered_map<WeylElement, bool, WeylElementHash> seen;
    for (const auto& u : level)
      for (int i = 0; i < rank(); ++i) {
        if (is_right_descent(u, i)) continue;
        WeylElement v = make(u.action() * simple_[i], simple_[i] * u.inverse_action());
        if (seen.emplace(v, true).second) next.push_back(std::move(v));
      }
    if (next.empty()) break;
    add_level(next);
    level = std::move(next);
  }
  return ideal;
}

BruhatIdeal WeylGroup::ideal_from_generators(const std::vector<WeylElement>& gens, std::size_t size_limit) const {
  std::unordered_map<WeylElement, bool, WeylElementHash> seen;
  std::vector<WeylElement> stack, all;
  for (const auto& g : gens)
    if (seen.emplace(g, true).second) {
      stack.push_back(g);
      all.push_back(g);
    }
  while (!stack.empty()) {
    WeylElement u = stack.back();
    stack.pop_back();
    const auto& word = u.reduced_word();
    for (std::size_t k = 0; k < word.size(); ++k) {
      std::vector<int> sub;
      for (std::size_t m = 0; m < word.size(); ++m)
        if (m != k) sub.push_back(word[m]);
      WeylElement v = from_word(sub);
      if (v.length() != u.length() - 1) continue;
      if (seen.emplace(v, true).second) {
        stack.push_back(v);
        all.push_back(v);
        if (all.size() > size_limit)
          throw Error(ErrorCode::SizeLimitExceeded,
                      "ideal exceeds size limit of " + std::to_string(size_limit) + " elements");
      }
    }
  }
  std::sort(all.begin(), all.end(), shortlex_less);
  BruhatIdeal ideal;
  std::vector<std::vector<int>> desc;
  for (const auto& g : gens) desc.push_back(g.reduced_word());
  ideal.description_ = std::move(desc);
  for (auto& w : all) {
    ideal.index_.emplace(w, ideal.elements_.size());
    ideal.elements_.push_back(std::move(w));
  }
  return ideal;
}

std::vector<RootVector> WeylGroup::inversion_set(const WeylElement& u) const {
  std::vector<RootVector> out;
  IntMatrix prefix = IntMatrix::identity(rank());
  for (int i : u.reduced_word()) {
    out.push_back(prefix.column(i));
    prefix = prefix * simple_[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<RootVector> WeylGroup::sj_complement(const BruhatIdeal& ideal) const {
  std::set<RootVector> out;
  for (const auto& x : ideal.elements()) {
    auto inv = inversion_set(x);
    out.insert(inv.begin(), inv.end());
  }
  return out;
}

int WeylGroup::stratum_dimension(const WeylElement& x, const BruhatIdeal& ideal) const {
  ideal.index_of(x);
  auto complement = sj_complement(ideal);
  int direct = 0;
  for (const auto& alpha : complement)
    if (x.inverse_action().apply(alpha).is_positive()) ++direct;
  int by_length = static_cast<int>(complement.size()) - x.length();
  if (direct != by_length)
    throw std::logic_error("stratum dimension formulas disagree for " + x.word_string());
  return direct;
}

WeightCoords WeylGroup::dot_action(const WeylElement& w, const WeightCoords& lambda) const {
  WeightCoords mu = lambda;
  const auto& word = w.reduced_word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int i = *it;
    // s_i . mu = mu - (<mu, alpha_i^vee> + 1) alpha_i
    Rational c = mu.pairings[i] + Rational(1);
    mu.offset[i] -= c;
    for (int j = 0; j < rank(); ++j) mu.pairings[j] -= c * Rational(datum_.a(j, i));
  }
  return mu;
}

}  // namespace kmflag
