#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "enumeration.hpp"
#include "mask.hpp"
#include "matroid.hpp"
#include "models.hpp"
#include "numeric.hpp"
#include "primefield.hpp"

namespace matsym {

// x_i_j (hat = false) or its homogenizing partner y_i_j (hat = true); 0-based.
struct Var {
  int i = 0, j = 0;
  bool hat = false;
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var& a, const Var& b) {
    return std::tie(a.hat, a.i, a.j) <=> std::tie(b.hat, b.i, b.j);
  }
};

using Monomial = std::vector<std::pair<Var, int>>;  // sorted by Var, positive exponents

class PolyParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SparsePoly {
 public:
  SparsePoly() = default;
  static SparsePoly constant(const Rational& c) {
    SparsePoly p;
    if (c != 0) p.terms_[{}] = c;
    return p;
  }
  static SparsePoly variable(Var v, int e = 1) {
    SparsePoly p;
    p.terms_[e ? Monomial{{v, e}} : Monomial{}] = 1;
    return p;
  }
  static SparsePoly x(int i, int j) { return variable({i, j, false}); }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly& a) { return SparsePoly() - a; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
    return out;
  }
  friend SparsePoly operator*(const Rational& s, const SparsePoly& a) { return SparsePoly::constant(s) * a; }
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

  static Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t p = 0, q = 0;
    while (p < a.size() || q < b.size()) {
      if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
        out.push_back(a[p++]);
      } else if (p == a.size() || b[q].first < a[p].first) {
        out.push_back(b[q++]);
      } else {
        out.emplace_back(a[p].first, a[p].second + b[q].second);
        ++p, ++q;
      }
    }
    return out;
  }

  // Applies a variable renaming (must be injective on the variables present).
  SparsePoly rename(const std::function<Var(Var)>& f) const {
    SparsePoly out;
    for (const auto& [m, c] : terms_) {
      Monomial n;
      for (auto [v, e] : m) n.emplace_back(f(v), e);
      std::sort(n.begin(), n.end());
      out.add_term(n, c);
    }
    return out;
  }

 private:
  std::map<Monomial, Rational> terms_;
};

// Per-variable maximal exponent (the top-degree multiset).
inline std::map<Var, int> topdeg(const SparsePoly& f) {
  std::map<Var, int> out;
  for (const auto& [m, c] : f.terms())
    for (auto [v, e] : m) out[v] = std::max(out[v], e);
  return out;
}

inline int degree_in(const SparsePoly& f, Var v) {
  auto t = topdeg(f);
  auto it = t.find(v);
  return it == t.end() ? 0 : it->second;
}

inline std::vector<Var> support_vars(const SparsePoly& f) {
  std::vector<Var> out;
  for (const auto& [v, d] : topdeg(f))
    if (!v.hat) out.push_back(v);
  return out;
}

inline GroundElem normalize(const ModelSpec& s, Var v) {
  if (!s.bipartite() && v.i > v.j) return {v.j, v.i};
  return {v.i, v.j};
}

inline EdgeSet support(const SparsePoly& f, const ModelSpec& s) {
  EdgeSet out(s.ground_size());
  for (Var v : support_vars(f)) {
    GroundElem e = normalize(s, v);
    if (!s.contains(e)) throw std::invalid_argument("polynomial variable outside the ground set of " + s.to_string());
    out.set(s.index_of(e));
  }
  return out;
}

inline SparsePoly multihomogenize(const SparsePoly& f) {
  auto top = topdeg(f);
  SparsePoly out;
  for (const auto& [m, c] : f.terms()) {
    Monomial n = m;
    for (auto [v, d] : top) {
      if (v.hat) throw std::invalid_argument("already contains homogenizing variables");
      auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == v; });
      int e = it == m.end() ? 0 : it->second;
      if (d > e) n.emplace_back(Var{v.i, v.j, true}, d - e);
    }
    std::sort(n.begin(), n.end());
    out.add_term(n, c);
  }
  return out;
}

inline SparsePoly dehomogenize(const SparsePoly& g) {
  SparsePoly out;
  for (const auto& [m, c] : g.terms()) {
    Monomial n;
    for (auto [v, e] : m)
      if (!v.hat) n.emplace_back(v, e);
    out.add_term(n, c);
  }
  return out;
}

// Degree in each pair (x_v, y_v); empty when g is not multihomogeneous.
inline std::optional<std::map<Var, int>> multidegree(const SparsePoly& g) {
  std::optional<std::map<Var, int>> ref;
  for (const auto& [m, c] : g.terms()) {
    std::map<Var, int> d;
    for (auto [v, e] : m) d[Var{v.i, v.j, false}] += e;
    if (ref && *ref != d) return std::nullopt;
    ref = d;
  }
  return ref ? ref : std::map<Var, int>{};
}

// Evaluation

inline std::uint64_t rational_mod(const Rational& q, std::uint64_t p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt num = numerator(q) % p, den = denominator(q) % p;
  if (num < 0) num += p;
  if (den == 0) throw std::domain_error("coefficient denominator vanishes modulo p");
  return mul_mod(static_cast<std::uint64_t>(num), inv_mod(static_cast<std::uint64_t>(den), p), p);
}

inline std::uint64_t evaluate_mod(const SparsePoly& f, std::uint64_t p, const std::function<std::uint64_t(Var)>& val) {
  std::uint64_t acc = 0;
  std::map<Var, std::uint64_t> memo;
  for (const auto& [m, c] : f.terms()) {
    std::uint64_t t = rational_mod(c, p);
    for (auto [v, e] : m) {
      auto it = memo.find(v);
      if (it == memo.end()) it = memo.emplace(v, val(v) % p).first;
      t = mul_mod(t, pow_mod(it->second, e, p), p);
    }
    acc = add_mod(acc, t, p);
  }
  return acc;
}

inline Rational evaluate(const SparsePoly& f, const std::function<Rational(Var)>& val) {
  Rational acc = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (auto [v, e] : m) {
      Rational x = val(v);
      for (int k = 0; k < e; ++k) t *= x;
    }
    acc += t;
  }
  return acc;
}

struct VanishingReport {
  int evaluations = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};

// Evaluates f at `trials` sampled parameter points per prime.
inline VanishingReport vanishing_report(const SparsePoly& f, const ModelSpec& s, int trials,
                                        const std::vector<std::uint64_t>& primes = {kDefaultPrimes.begin(),
                                                                                    kDefaultPrimes.end()},
                                        std::uint64_t seed = 1) {
  for (const auto& [v, d] : topdeg(f))
    if (v.hat) throw std::invalid_argument("dehomogenize before evaluation");
  support(f, s);
  VanishingReport rep;
  for (std::size_t pi = 0; pi < primes.size(); ++pi)
    for (int t = 0; t < trials; ++t) {
      auto pt = sample_point(s, primes[pi], seed * 7919 + pi * 131 + t);
      auto val = [&](Var v) { return coordinate(s, normalize(s, v), pt).value; };
      ++rep.evaluations;
      if (evaluate_mod(f, primes[pi], val) != 0) ++rep.failures;
    }
  return rep;
}

inline bool verify_vanishing(const SparsePoly& f, const ModelSpec& s, int trials = 200,
                             const std::vector<std::uint64_t>& primes = {kDefaultPrimes.begin(), kDefaultPrimes.end()},
                             std::uint64_t seed = 1) {
  return vanishing_report(f, s, trials, primes, seed).ok();
}

struct SupportVerdict {
  Verdict verdict = Verdict::Independent;
  bool minimal = false;  // support is a circuit
};

inline SupportVerdict support_minimality_check(const SparsePoly& f, const RankOracle& o) {
  auto c = classify(o, support(f, o.spec()));
  return {c.verdict, c.verdict == Verdict::Circuit};
}

// Constructors

inline SparsePoly determinant(const std::vector<std::vector<SparsePoly>>& a) {
  const std::size_t n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SparsePoly det;
  do {
    int inversions = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) inversions += perm[p] > perm[q];
    SparsePoly term = SparsePoly::constant(inversions % 2 ? -1 : 1);
    for (std::size_t p = 0; p < n && !term.is_zero(); ++p) term = term * a[p][perm[p]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Minor of the generic (or generic symmetric) matrix on the given rows and columns.
inline SparsePoly minor_polynomial(const std::vector<int>& rows, const std::vector<int>& cols, Family family) {
  if (rows.size() != cols.size() || rows.empty()) throw std::invalid_argument("minor needs equally many rows and columns");
  if (family != Family::Det && family != Family::SymDet)
    throw std::invalid_argument("use cayley_menger_minor for rigidity families");
  std::vector<std::vector<SparsePoly>> a(rows.size(), std::vector<SparsePoly>(cols.size()));
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t q = 0; q < cols.size(); ++q) {
      int i = rows[p], j = cols[q];
      if (family == Family::SymDet && i > j) std::swap(i, j);
      a[p][q] = SparsePoly::x(i, j);
    }
  return determinant(a);
}

// Minor of CM(n); index 0 is the border, index v+1 is point v.
inline SparsePoly cayley_menger_minor(const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size() || rows.empty()) throw std::invalid_argument("minor needs equally many rows and columns");
  std::vector<std::vector<SparsePoly>> a(rows.size(), std::vector<SparsePoly>(cols.size()));
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t q = 0; q < cols.size(); ++q) {
      int i = rows[p], j = cols[q];
      if (i < 0 || j < 0) throw std::invalid_argument("negative Cayley-Menger index");
      if (i == j) continue;
      if (i == 0 || j == 0)
        a[p][q] = SparsePoly::constant(1);
      else
        a[p][q] = SparsePoly::x(std::min(i, j) - 1, std::max(i, j) - 1);
    }
  return determinant(a);
}

// The bordered principal minor on a point set: r+2 points give an (r+3)-minor.
inline SparsePoly cayley_menger_principal(const std::vector<int>& points) {
  std::vector<int> idx{0};
  for (int v : points) idx.push_back(v + 1);
  return cayley_menger_minor(idx, idx);
}

// Alternating product binomial of an even cycle (bipartite or symmetric mask).
inline SparsePoly cycle_binomial(const Mask& cycle) {
  Mask m = cycle;
  const int V = m.symmetric() ? m.rows() : m.rows() + m.cols();
  auto neighbors = [&](int v) {
    std::vector<int> out;
    if (m.symmetric()) {
      for (int u = 0; u < m.cols(); ++u)
        if (u != v && m.get(v, u)) out.push_back(u);
    } else if (v < m.rows()) {
      for (int j = 0; j < m.cols(); ++j)
        if (m.get(v, j)) out.push_back(m.rows() + j);
    } else {
      for (int i = 0; i < m.rows(); ++i)
        if (m.get(i, v - m.rows())) out.push_back(i);
    }
    return out;
  };
  if (m.has_loops()) throw std::invalid_argument("not a cycle: loops present");
  int start = -1, used = 0;
  for (int v = 0; v < V; ++v) {
    auto nb = neighbors(v);
    if (nb.empty()) continue;
    if (nb.size() != 2) throw std::invalid_argument("not a cycle: vertex of degree " + std::to_string(nb.size()));
    if (start < 0) start = v;
    ++used;
  }
  if (start < 0) throw std::invalid_argument("not a cycle: empty mask");
  auto var = [&](int a, int b) {
    if (m.symmetric()) return Var{std::min(a, b), std::max(a, b), false};
    if (a > b) std::swap(a, b);
    return Var{a, b - m.rows(), false};
  };
  SparsePoly even = SparsePoly::constant(1), odd = SparsePoly::constant(1);
  int prev = -1, cur = start, len = 0;
  do {
    auto nb = neighbors(cur);
    int nxt = nb[0] == prev ? nb[1] : nb[0];
    if (prev < 0) nxt = nb[0];
    (len % 2 ? odd : even) = (len % 2 ? odd : even) * SparsePoly::variable(var(cur, nxt));
    prev = cur;
    cur = nxt;
    ++len;
  } while (cur != start);
  if (len != used) throw std::invalid_argument("not a cycle: disconnected");
  if (len % 2) throw std::invalid_argument("not an even cycle");
  return even - odd;
}

// Row/column permutations (bipartite) or a vertex permutation (cols empty).
struct VarPermutation {
  std::vector<int> rows, cols;
  Var operator()(Var v) const {
    if (cols.empty()) {
      int a = rows.at(v.i), b = rows.at(v.j);
      return {std::min(a, b), std::max(a, b), v.hat};
    }
    return {rows.at(v.i), cols.at(v.j), v.hat};
  }
};

// sigma(f)/f when it is a constant; nullopt otherwise.
inline std::optional<Rational> symmetry_character(const SparsePoly& f, const VarPermutation& sigma) {
  auto sup = support_vars(f);
  std::vector<Var> img;
  for (Var v : sup) img.push_back(sigma(v));
  std::sort(img.begin(), img.end());
  if (img != sup) throw std::invalid_argument("permutation does not fix the support");
  SparsePoly g = f.rename(sigma);
  if (f.is_zero()) return Rational(1);
  const auto& [m0, c0] = *f.terms().begin();
  auto it = g.terms().find(m0);
  if (it == g.terms().end()) return std::nullopt;
  Rational ratio = it->second / c0;
  if (g == ratio * f) return ratio;
  return std::nullopt;
}

// Text format: terms `coef * x_i_j^e` (1-based indices, y_i_j for homogenizing variables).
inline std::string to_string(const SparsePoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    Rational a = c < 0 ? Rational(-c) : c;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::vector<std::string> factors;
    if (a != 1 || m.empty()) factors.push_back(to_string(a));
    for (auto [v, e] : m) {
      std::string s = std::string(v.hat ? "y_" : "x_") + std::to_string(v.i + 1) + "_" + std::to_string(v.j + 1);
      if (e != 1) s += "^" + std::to_string(e);
      factors.push_back(s);
    }
    for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? " * " : "") + factors[k];
  }
  return out;
}

inline SparsePoly parse_poly(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw PolyParseError("empty polynomial");
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) { throw PolyParseError(msg + " at offset " + std::to_string(pos)); };
  auto number = [&]() {
    std::size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected a number");
    return s.substr(b, pos - b);
  };
  SparsePoly out;
  bool first = true;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = sign;
    Monomial mono;
    while (true) {
      if (pos >= s.size()) fail("unexpected end");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        BigInt num(number());
        BigInt den = 1;
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          den = BigInt(number());
          if (den == 0) fail("zero denominator");
        }
        coef *= Rational(num, den);
      } else if (s[pos] == 'x' || s[pos] == 'y') {
        bool hat = s[pos] == 'y';
        ++pos;
        if (pos >= s.size() || s[pos] != '_') fail("expected '_'");
        ++pos;
        int i = std::stoi(number());
        if (pos >= s.size() || s[pos] != '_') fail("expected '_'");
        ++pos;
        int j = std::stoi(number());
        if (i < 1 || j < 1) fail("indices are 1-based");
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = std::stoi(number());
        }
        mono = SparsePoly::multiply(mono, e ? Monomial{{Var{i - 1, j - 1, hat}, e}} : Monomial{});
      } else {
        fail(std::string("unexpected character '") + s[pos] + "'");
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    out.add_term(mono, coef);
  }
  return out;
}

}  // namespace matsym
