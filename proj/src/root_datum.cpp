#include "kmflag/root_datum.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "kmflag/error.hpp"
#include "kmflag/linalg.hpp"

namespace kmflag {

RootVector RootVector::simple(int n, int i) {
  RootVector v = zero(n);
  v.coords[i] = 1;
  return v;
}

int64_t RootVector::height() const { return std::accumulate(coords.begin(), coords.end(), int64_t{0}); }

bool RootVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int64_t c) { return c == 0; });
}

bool RootVector::is_positive() const {
  return !is_zero() && std::all_of(coords.begin(), coords.end(), [](int64_t c) { return c >= 0; });
}

bool RootVector::is_negative() const {
  return !is_zero() && std::all_of(coords.begin(), coords.end(), [](int64_t c) { return c <= 0; });
}

std::string RootVector::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  return os.str();
}

RootVector RootVector::operator-() const {
  RootVector r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

RootVector& RootVector::operator+=(const RootVector& o) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

RootVector& RootVector::operator-=(const RootVector& o) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Finite: return "finite";
    case Kind::Affine: return "affine";
    case Kind::Indefinite: return "indefinite";
  }
  return "unknown";
}

CartanMatrix::CartanMatrix(const std::vector<std::vector<int64_t>>& entries) {
  const std::size_t n = entries.size();
  if (n == 0) throw Error(ErrorCode::NotGCM, "Cartan matrix is empty");
  for (const auto& row : entries)
    if (row.size() != n) throw Error(ErrorCode::NotGCM, "Cartan matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i][i] != 2)
      throw Error(ErrorCode::NotGCM, "diagonal entry a_" + std::to_string(i + 1) + std::to_string(i + 1) + " != 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries[i][j] > 0) throw Error(ErrorCode::NotGCM, "positive off-diagonal entry");
      if ((entries[i][j] == 0) != (entries[j][i] == 0))
        throw Error(ErrorCode::NotGCM, "zero pattern is not symmetric");
    }
  }
  n_ = static_cast<int>(n);
  for (const auto& row : entries) a_.insert(a_.end(), row.begin(), row.end());
}

std::vector<std::vector<int64_t>> CartanMatrix::rows() const {
  std::vector<std::vector<int64_t>> r(n_, std::vector<int64_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

CartanMatrix CartanMatrix::transpose() const {
  auto r = rows();
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) std::swap(r[i][j], r[j][i]);
  return CartanMatrix(r);
}

namespace {

// Minimal positive integer symmetrizer, component by component.
std::vector<int64_t> symmetrize(const CartanMatrix& a) {
  const int n = a.rank();
  std::vector<Rational> d(n);
  std::vector<bool> seen(n, false);
  std::vector<int64_t> out(n, 0);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<int> component{root};
    seen[root] = true;
    d[root] = Rational(1);
    for (std::size_t k = 0; k < component.size(); ++k) {
      int i = component[k];
      for (int j = 0; j < n; ++j) {
        if (j == i || a(i, j) == 0) continue;
        Rational dj = d[i] * Rational(a(i, j)) / Rational(a(j, i));
        if (!seen[j]) {
          seen[j] = true;
          d[j] = dj;
          component.push_back(j);
        } else if (d[j] != dj) {
          throw Error(ErrorCode::NotSymmetrizable, "no positive diagonal symmetrizer exists");
        }
      }
    }
    int64_t l = 1;
    for (int i : component) l = std::lcm(l, d[i].den());
    int64_t g = 0;
    for (int i : component) {
      out[i] = (d[i] * Rational(l)).to_int64();
      g = std::gcd(g, out[i]);
    }
    for (int i : component) out[i] /= g;
  }
  return out;
}

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
};

// Sylvester inertia by symmetric congruence elimination.
Inertia inertia(DenseMatrix m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  Inertia res;
  while (!active.empty()) {
    int piv = -1;
    for (int i : active)
      if (!m[i][i].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) {
      int pj = -1, pk = -1;
      for (int j : active)
        for (int k : active)
          if (j != k && !m[j][k].is_zero() && pj < 0) {
            pj = j;
            pk = k;
          }
      if (pj < 0) {
        res.zero += static_cast<int>(active.size());
        break;
      }
      for (int c = 0; c < n; ++c) m[pj][c] += m[pk][c];
      for (int r = 0; r < n; ++r) m[r][pj] += m[r][pk];
      continue;
    }
    const Rational p = m[piv][piv];
    (p.sign() > 0 ? res.positive : res.negative)++;
    std::erase(active, piv);
    for (int j : active) {
      if (m[j][piv].is_zero()) continue;
      Rational f = m[j][piv] / p;
      for (int k : active) m[j][k] -= f * m[piv][k];
    }
    for (int j : active) m[j][piv] = m[piv][j] = Rational(0);
  }
  return res;
}

std::vector<int64_t> primitive_positive(const std::vector<Rational>& v) {
  int64_t l = 1;
  for (const auto& x : v) l = std::lcm(l, x.den());
  std::vector<int64_t> out;
  int64_t g = 0;
  for (const auto& x : v) {
    out.push_back((x * Rational(l)).to_int64());
    g = std::gcd(g, out.back());
  }
  int sign = 0;
  for (auto x : out)
    if (x != 0) {
      sign = x > 0 ? 1 : -1;
      break;
    }
  for (auto& x : out) x = sign * x / g;
  return out;
}

}  // namespace

RootDatum RootDatum::validate(const std::vector<std::vector<int64_t>>& entries) {
  RootDatum rd;
  rd.cartan_ = CartanMatrix(entries);
  rd.d_ = symmetrize(rd.cartan_);
  const int n = rd.rank();

  DenseMatrix b(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = Rational(rd.d_[i] * rd.a(i, j));
  Inertia in = inertia(b);
  if (in.positive == n) {
    rd.kind_ = Kind::Finite;
  } else if (in.positive == n - 1 && in.zero == 1) {
    DenseMatrix at(n, std::vector<Rational>(n)), a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        at[i][j] = Rational(rd.a(j, i));
        a[i][j] = Rational(rd.a(i, j));
      }
    auto left = primitive_positive(nullspace(at, n).front());
    auto right = primitive_positive(nullspace(a, n).front());
    bool positive = std::all_of(left.begin(), left.end(), [](int64_t x) { return x > 0; });
    // A decomposable matrix with an affine factor has zeros here; such
    // products are not treated as affine.
    if (positive) {
      rd.kind_ = Kind::Affine;
      rd.dual_labels_ = std::move(left);
      rd.null_root_ = RootVector(std::move(right));
    }
  }
  return rd;
}

int64_t RootDatum::bilinear(const RootVector& beta, const RootVector& gamma) const {
  int64_t s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (beta[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) s += beta[i] * gamma[j] * d_[i] * a(i, j);
  }
  return s;
}

int64_t RootDatum::coroot_pairing(const RootVector& beta, int i) const {
  int64_t s = 0;
  for (int j = 0; j < rank(); ++j) s += beta[j] * a(i, j);
  return s;
}

RootVector RootDatum::simple_reflect(int i, RootVector beta) const {
  beta[i] -= coroot_pairing(beta, i);
  return beta;
}

bool RootDatum::is_real_root(const RootVector& beta, int64_t height_bound) const {
  if (beta.is_zero()) return false;
  RootVector b = beta;
  if (b.is_negative()) b = -b;
  if (!b.is_positive()) return false;
  if (b.height() > height_bound)
    throw Error(ErrorCode::HeightBoundExceeded, "root height " + std::to_string(b.height()) + " exceeds bound");
  while (true) {
    if (b.height() == 1) return true;
    int desc = -1;
    for (int i = 0; i < rank(); ++i)
      if (coroot_pairing(b, i) > 0) {
        desc = i;
        break;
      }
    if (desc < 0) return false;
    b = simple_reflect(desc, std::move(b));
    if (!b.is_positive()) return false;
  }
}

RootVector RootDatum::coroot(const RootVector& beta) const {
  if (!is_real_root(beta)) throw Error(ErrorCode::NotRealRoot, "not a real root: " + beta.to_string());
  const int64_t half_norm = bilinear(beta, beta) / 2;  // d_i for beta = w(alpha_i)
  RootVector out = RootVector::zero(rank());
  for (int j = 0; j < rank(); ++j) {
    Rational c = Rational(beta[j] * d_[j], half_norm);
    out[j] = c.to_int64();
  }
  return out;
}

std::vector<RootVector> RootDatum::positive_real_roots(int64_t max_height) const {
  std::set<RootVector> found;
  std::vector<RootVector> frontier;
  for (int i = 0; i < rank() && max_height >= 1; ++i) {
    frontier.push_back(RootVector::simple(rank(), i));
    found.insert(frontier.back());
  }
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const auto& b : frontier)
      for (int i = 0; i < rank(); ++i) {
        if (coroot_pairing(b, i) >= 0) continue;
        RootVector up = simple_reflect(i, b);
        if (up.height() <= max_height && found.insert(up).second) next.push_back(up);
      }
    frontier = std::move(next);
  }
  std::vector<RootVector> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const RootVector& x, const RootVector& y) {
    return std::make_pair(x.height(), x) < std::make_pair(y.height(), y);
  });
  return out;
}

RootDatum RootDatum::dual() const { return validate(cartan_.transpose().rows()); }

bool RootDatum::is_untwisted_affine() const {
  if (kind_ != Kind::Affine) return false;
  const int n = rank();
  for (int node = 0; node < n; ++node) {
    if (null_root_[node] != 1) continue;
    std::vector<std::vector<int64_t>> sub;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (i != node) keep.push_back(i);
    for (int i : keep) {
      sub.emplace_back();
      for (int j : keep) sub.back().push_back(a(i, j));
    }
    RootDatum fin = validate(sub);
    if (fin.kind() != Kind::Finite) continue;
    auto roots = fin.positive_real_roots(std::numeric_limits<int64_t>::max());
    const RootVector& theta = roots.back();
    bool match = true;
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (theta[static_cast<int>(k)] != null_root_[keep[k]]) match = false;
    if (match) return true;
  }
  return false;
}

RootDatum parse_cartan_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::BadInput, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cartan"))
    throw Error(ErrorCode::BadInput, "expected an object with key \"cartan\"");
  for (const auto& [key, _] : doc.items())
    if (key != "cartan") throw Error(ErrorCode::BadInput, "unknown key \"" + key + "\"");
  const auto& m = doc["cartan"];
  if (!m.is_array()) throw Error(ErrorCode::NotGCM, "\"cartan\" must be an array of rows");
  std::vector<std::vector<int64_t>> rows;
  for (const auto& row : m) {
    if (!row.is_array()) throw Error(ErrorCode::NotGCM, "Cartan rows must be arrays");
    rows.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::NotGCM, "Cartan entries must be integers");
      rows.back().push_back(x.get<int64_t>());
    }
  }
  return RootDatum::validate(rows);
}

RootDatum load_cartan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cartan_json(ss.str());
}

}  // namespace kmflag
