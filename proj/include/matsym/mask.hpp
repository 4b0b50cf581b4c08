#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matroid.hpp"
#include "models.hpp"

namespace matsym {

enum class MaskKind { Bipartite, Symmetric };

class MaskParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// 0/1 matrix with at most 64 columns; symmetric masks store both triangles.
class Mask {
 public:
  Mask() = default;
  Mask(MaskKind kind, int rows, int cols) : kind_(kind), rows_(rows), cols_(cols), bits_(rows, 0) {
    if (rows < 0 || cols < 0 || cols > 64) throw std::invalid_argument("mask dimensions out of range");
    if (kind == MaskKind::Symmetric && rows != cols) throw std::invalid_argument("symmetric mask must be square");
  }
  static Mask bipartite(int rows, int cols) { return Mask(MaskKind::Bipartite, rows, cols); }
  static Mask symmetric(int n) { return Mask(MaskKind::Symmetric, n, n); }
  static Mask complete(int rows, int cols) {
    Mask m = bipartite(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.set(i, j);
    return m;
  }
  static Mask from_rows(MaskKind kind, int cols, std::vector<std::uint64_t> rows) {
    Mask m(kind, static_cast<int>(rows.size()), cols);
    m.bits_ = std::move(rows);
    return m;
  }

  MaskKind kind() const { return kind_; }
  bool symmetric() const { return kind_ == MaskKind::Symmetric; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<std::uint64_t>& row_bits() const { return bits_; }
  std::uint64_t row_bits(int i) const { return bits_[i]; }

  bool get(int i, int j) const { return (bits_[i] >> j) & 1ULL; }
  Mask& set(int i, int j, bool v = true) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("mask entry out of range");
    put(i, j, v);
    if (symmetric()) put(j, i, v);
    return *this;
  }

  int row_degree(int i) const { return std::popcount(bits_[i]); }
  int col_degree(int j) const {
    int d = 0;
    for (int i = 0; i < rows_; ++i) d += get(i, j);
    return d;
  }

  int edge_count() const {
    int c = 0;
    for (int i = 0; i < rows_; ++i) c += row_degree(i);
    if (symmetric()) {
      int diag = 0;
      for (int i = 0; i < rows_; ++i) diag += get(i, i);
      c = (c - diag) / 2 + diag;
    }
    return c;
  }
  bool has_loops() const {
    if (!symmetric()) return false;
    for (int i = 0; i < rows_; ++i)
      if (get(i, i)) return true;
    return false;
  }

  // (nonzero rows, nonzero cols); for symmetric masks both are the vertex count.
  std::pair<int, int> signature() const {
    int k = 0, l = 0;
    for (int i = 0; i < rows_; ++i) k += bits_[i] != 0;
    for (int j = 0; j < cols_; ++j) l += col_degree(j) != 0;
    return {k, l};
  }
  bool has_isolated() const {
    auto [k, l] = signature();
    return k != rows_ || l != cols_;
  }

  Mask transpose() const {
    Mask t(kind_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (get(i, j)) t.put(j, i, true);
    return t;
  }

  // Drops empty rows and columns (empty vertices for symmetric masks).
  Mask compact() const {
    std::vector<int> rs, cs;
    for (int i = 0; i < rows_; ++i)
      if (bits_[i]) rs.push_back(i);
    if (symmetric()) {
      cs = rs;
    } else {
      for (int j = 0; j < cols_; ++j)
        if (col_degree(j)) cs.push_back(j);
    }
    Mask out(kind_, static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    for (std::size_t a = 0; a < rs.size(); ++a)
      for (std::size_t b = 0; b < cs.size(); ++b)
        if (get(rs[a], cs[b])) out.put(static_cast<int>(a), static_cast<int>(b), true);
    return out;
  }

  // Applies row permutation rp and column permutation cp: entry (i,j) moves to (rp[i], cp[j]).
  Mask permuted(const std::vector<int>& rp, const std::vector<int>& cp) const {
    Mask out(kind_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (get(i, j)) out.put(rp[i], cp[j], true);
    return out;
  }

  std::string to_ascii() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) s += get(i, j) ? '#' : '.';
      s += '\n';
    }
    return s;
  }
  std::vector<std::string> ascii_rows() const {
    std::vector<std::string> out;
    for (int i = 0; i < rows_; ++i) {
      std::string s;
      for (int j = 0; j < cols_; ++j) s += get(i, j) ? '#' : '.';
      out.push_back(s);
    }
    return out;
  }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  void put(int i, int j, bool v) {
    if (v)
      bits_[i] |= 1ULL << j;
    else
      bits_[i] &= ~(1ULL << j);
  }

  MaskKind kind_ = MaskKind::Bipartite;
  int rows_ = 0, cols_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline Mask parse_mask(const std::string& text, MaskKind kind = MaskKind::Bipartite) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw MaskParseError("empty mask");
  std::size_t cols = lines[0].size();
  if (cols > 64) throw MaskParseError("mask wider than 64 columns");
  if (kind == MaskKind::Symmetric && lines.size() != cols) throw MaskParseError("symmetric mask must be square");
  Mask m(MaskKind::Bipartite, static_cast<int>(lines.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].size() != cols) throw MaskParseError("ragged mask row " + std::to_string(i + 1));
    for (std::size_t j = 0; j < cols; ++j) {
      char c = lines[i][j];
      if (c == '#' || c == '1')
        m.set(static_cast<int>(i), static_cast<int>(j));
      else if (c != '.' && c != '0')
        throw MaskParseError(std::string("unexpected mask character '") + c + "'");
    }
  }
  if (kind == MaskKind::Symmetric) {
    if (!(m == m.transpose())) throw MaskParseError("mask is not symmetric");
    return Mask::from_rows(MaskKind::Symmetric, m.cols(), m.row_bits());
  }
  return m;
}

inline MaskKind mask_kind(const ModelSpec& s) {
  return s.bipartite() ? MaskKind::Bipartite : MaskKind::Symmetric;
}

// Places the mask at the top-left corner of the model's index range.
inline EdgeSet to_edge_set(const ModelSpec& s, const Mask& m) {
  if (m.kind() != mask_kind(s)) throw DimensionMismatch("mask kind does not match model family");
  if (m.rows() > s.m || m.cols() > s.n)
    throw DimensionMismatch("mask " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            " does not fit model " + s.to_string());
  EdgeSet out(s.ground_size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = m.symmetric() ? i : 0; j < m.cols(); ++j) {
      if (!m.get(i, j)) continue;
      if (!s.contains({i, j})) throw DimensionMismatch("diagonal entries are not in this model's ground set");
      out.set(s.index_of({i, j}));
    }
  return out;
}

inline Mask to_mask(const ModelSpec& s, const EdgeSet& set) {
  Mask m(mask_kind(s), s.m, s.n);
  auto g = ground_set(s);
  for (auto i : set.elements()) m.set(g[i].i, g[i].j);
  return m;
}

}  // namespace matsym
