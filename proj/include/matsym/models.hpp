#pragma once

#include <cstdint>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primefield.hpp"

namespace matsym {

enum class Family { Det, SymDet, Rig, BipRig };

inline bool is_bipartite(Family f) { return f == Family::Det || f == Family::BipRig; }

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Det: return "det";
    case Family::SymDet: return "symdet";
    case Family::Rig: return "rig";
    case Family::BipRig: return "biprig";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "det") return Family::Det;
  if (s == "symdet") return Family::SymDet;
  if (s == "rig") return Family::Rig;
  if (s == "biprig") return Family::BipRig;
  throw std::invalid_argument("unknown family: " + s);
}

// 0-based indices throughout; text formats are 1-based.
struct GroundElem {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const GroundElem&, const GroundElem&) = default;
};

struct ModelSpec {
  Family family = Family::Det;
  int m = 1;  // rows; equals n for the symmetric families
  int n = 1;
  int r = 1;

  static ModelSpec det(int m, int n, int r) { return make(Family::Det, m, n, r); }
  static ModelSpec biprig(int m, int n, int r) { return make(Family::BipRig, m, n, r); }
  static ModelSpec symdet(int n, int r) { return make(Family::SymDet, n, n, r); }
  static ModelSpec rig(int n, int r) { return make(Family::Rig, n, n, r); }

  static ModelSpec make(Family f, int m, int n, int r) {
    ModelSpec s{f, m, n, r};
    s.validate();
    return s;
  }

  void validate() const {
    if (r < 1) throw std::invalid_argument("rank parameter r must be >= 1");
    if (is_bipartite(family)) {
      if (m < 1 || n < 1) throw std::invalid_argument("m and n must be >= 1");
    } else {
      if (m != n) throw std::invalid_argument("symmetric families are square");
      if (n < 2) throw std::invalid_argument("n must be >= 2");
    }
  }

  bool bipartite() const { return is_bipartite(family); }

  std::size_t ground_size() const {
    switch (family) {
      case Family::Det:
      case Family::BipRig: return static_cast<std::size_t>(m) * n;
      case Family::SymDet: return static_cast<std::size_t>(n) * (n + 1) / 2;
      case Family::Rig: return static_cast<std::size_t>(n) * (n - 1) / 2;
    }
    return 0;
  }

  std::size_t num_params() const {
    return static_cast<std::size_t>(bipartite() ? (m + n) * r : n * r);
  }

  bool contains(GroundElem e) const {
    if (bipartite()) return e.i >= 0 && e.i < m && e.j >= 0 && e.j < n;
    if (e.i < 0 || e.j >= n) return false;
    return family == Family::SymDet ? e.i <= e.j : e.i < e.j;
  }

  // Position of e in ground_set order.
  std::size_t index_of(GroundElem e) const {
    if (!contains(e)) throw std::out_of_range("element out of range for model");
    if (bipartite()) return static_cast<std::size_t>(e.i) * n + e.j;
    std::size_t idx = 0;
    bool diag = family == Family::SymDet;
    for (int a = 0; a < e.i; ++a) idx += static_cast<std::size_t>(n - a - (diag ? 0 : 1));
    return idx + static_cast<std::size_t>(e.j - e.i - (diag ? 0 : 1));
  }

  std::string to_string() const {
    std::string s = std::string(family_name(family)) + ":";
    if (bipartite()) s += std::to_string(m) + "x";
    return s + std::to_string(n) + "x" + std::to_string(r);
  }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Accepts `det:MxNxR`, `biprig:MxNxR`, `symdet:NxR`, `rig:NxR`.
inline ModelSpec parse_model(const std::string& text) {
  static const std::regex bip(R"(^(det|biprig):(\d+)x(\d+)x(\d+)$)");
  static const std::regex sym(R"(^(symdet|rig):(\d+)x(\d+)$)");
  std::smatch mt;
  if (std::regex_match(text, mt, bip))
    return ModelSpec::make(parse_family(mt[1]), std::stoi(mt[2]), std::stoi(mt[3]), std::stoi(mt[4]));
  if (std::regex_match(text, mt, sym)) {
    int n = std::stoi(mt[2]);
    return ModelSpec::make(parse_family(mt[1]), n, n, std::stoi(mt[3]));
  }
  throw std::invalid_argument("cannot parse model '" + text + "'");
}

inline std::vector<GroundElem> ground_set(const ModelSpec& s) {
  std::vector<GroundElem> out;
  out.reserve(s.ground_size());
  if (s.bipartite()) {
    for (int i = 0; i < s.m; ++i)
      for (int j = 0; j < s.n; ++j) out.push_back({i, j});
  } else {
    int off = s.family == Family::SymDet ? 0 : 1;
    for (int i = 0; i < s.n; ++i)
      for (int j = i + off; j < s.n; ++j) out.push_back({i, j});
  }
  return out;
}

struct GenericPoint {
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> values;  // layout given by param_index
};

// Parameter slot of the k-th coordinate of a vertex. Bipartite families put the
// row block (U or P) first and the column block (V or Q) after it.
inline std::size_t row_param(const ModelSpec& s, int i, int k) {
  return static_cast<std::size_t>(i * s.r + k);
}
inline std::size_t col_param(const ModelSpec& s, int j, int k) {
  return static_cast<std::size_t>((s.bipartite() ? s.m * s.r : 0) + j * s.r + k);
}

inline GenericPoint sample_point(const ModelSpec& s, std::uint64_t prime, std::uint64_t seed) {
  check_modulus(prime);
  GenericPoint pt{prime, seed, {}};
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(prime)};
  std::mt19937_64 gen(sq);
  pt.values.resize(s.num_params());
  // Plain modular reduction keeps the stream identical across standard libraries.
  for (auto& v : pt.values) v = gen() % prime;
  return pt;
}

inline FieldElem coordinate(const ModelSpec& s, GroundElem e, const GenericPoint& pt) {
  if (!s.contains(e)) throw std::out_of_range("element out of range for model");
  if (pt.values.size() != s.num_params()) throw std::invalid_argument("point does not match model");
  const std::uint64_t p = pt.prime;
  std::uint64_t acc = 0;
  for (int k = 0; k < s.r; ++k) {
    std::uint64_t a = pt.values[row_param(s, e.i, k)];
    std::uint64_t b = pt.values[col_param(s, e.j, k)];
    if (s.family == Family::Det || s.family == Family::SymDet) {
      acc = add_mod(acc, mul_mod(a, b, p), p);
    } else {
      std::uint64_t d = sub_mod(a, b, p);
      acc = add_mod(acc, mul_mod(d, d, p), p);
    }
  }
  return {acc, p};
}

inline std::vector<std::uint64_t> jacobian_row(const ModelSpec& s, GroundElem e, const GenericPoint& pt) {
  if (!s.contains(e)) throw std::out_of_range("element out of range for model");
  const std::uint64_t p = pt.prime;
  std::vector<std::uint64_t> row(s.num_params(), 0);
  for (int k = 0; k < s.r; ++k) {
    std::size_t ia = row_param(s, e.i, k), ib = col_param(s, e.j, k);
    std::uint64_t a = pt.values[ia], b = pt.values[ib];
    switch (s.family) {
      case Family::Det:
        row[ia] = b;
        row[ib] = a;
        break;
      case Family::SymDet:
        if (e.i == e.j) {
          row[ia] = add_mod(a, a, p);
        } else {
          row[ia] = b;
          row[ib] = a;
        }
        break;
      case Family::Rig:
      case Family::BipRig: {
        std::uint64_t d2 = mul_mod(2, sub_mod(a, b, p), p);
        row[ia] = d2;
        row[ib] = sub_mod(0, d2, p);
        break;
      }
    }
  }
  return row;
}

inline FieldMatrix jacobian(const ModelSpec& s, const std::vector<GroundElem>& elems, const GenericPoint& pt) {
  FieldMatrix j(elems.size(), s.num_params(), pt.prime);
  for (std::size_t a = 0; a < elems.size(); ++a) j.set_row(a, jacobian_row(s, elems[a], pt));
  return j;
}

struct Bipartition {
  ModelSpec spec;
  int m = 0;
  GroundElem map(GroundElem e) const { return {e.i, e.j + m}; }
};

// Rig(m+n,r) restricts to BipRig(m,n,r); SymDet(m+n,r) restricts to Det(m,n,r).
inline Bipartition bipartition_spec(const ModelSpec& sym, int m, int n) {
  if (sym.bipartite()) throw std::invalid_argument("bipartition needs a symmetric family");
  if (m < 1 || n < 1 || m + n != sym.n) throw std::invalid_argument("m + n must equal the vertex count");
  Family f = sym.family == Family::Rig ? Family::BipRig : Family::Det;
  return {ModelSpec::make(f, m, n, sym.r), m};
}

}  // namespace matsym
