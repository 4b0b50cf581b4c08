#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mask.hpp"
#include "numeric.hpp"

namespace matsym {

struct CanonicalMask {
  Mask mask;
  BigInt aut_order = 1;
  std::pair<int, int> signature() const { return mask.signature(); }
};

namespace detail {

// Rows are ordered by an invariant (descending) and the search only permutes
// inside invariant cells. Among the admissible orderings it keeps the
// lexicographically largest matrix, reading rows top to bottom with column 0
// as the most significant bit.
class BipartiteCanonizer {
 public:
  explicit BipartiteCanonizer(const Mask& m) : m_(m), k_(m.rows()), l_(m.cols()) {
    std::vector<int> coldeg(l_);
    for (int j = 0; j < l_; ++j) coldeg[j] = m.col_degree(j);
    inv_.resize(k_);
    for (int i = 0; i < k_; ++i) {
      std::vector<int> nb;
      for (int j = 0; j < l_; ++j)
        if (m.get(i, j)) nb.push_back(coldeg[j]);
      std::sort(nb.rbegin(), nb.rend());
      inv_[i] = {m.row_degree(i)};
      inv_[i].insert(inv_[i].end(), nb.begin(), nb.end());
    }
    slot_inv_ = inv_;
    std::sort(slot_inv_.rbegin(), slot_inv_.rend());
    used_.assign(k_, false);
    order_.resize(k_);
    cur_.resize(k_);
  }

  void run() {
    best_.clear();
    count_ = 0;
    std::vector<std::uint64_t> keys(l_, 0);
    dfs(0, keys);
  }

  const std::vector<std::uint64_t>& best() const { return best_; }
  std::uint64_t leaf_count() const { return count_; }

 private:
  void dfs(int t, const std::vector<std::uint64_t>& keys) {
    if (t == k_) {
      if (best_.empty() || cur_ > best_) {
        best_ = cur_;
        count_ = 1;
      } else if (cur_ == best_) {
        ++count_;
      }
      return;
    }
    for (int x = 0; x < k_; ++x) {
      if (used_[x] || inv_[x] != slot_inv_[t]) continue;
      std::vector<std::uint64_t> nk(keys);
      for (int j = 0; j < l_; ++j)
        if (m_.get(x, j)) nk[j] |= 1ULL << (63 - t);
      std::vector<std::uint64_t> sorted(nk);
      std::sort(sorted.rbegin(), sorted.rend());
      std::uint64_t row = 0;
      for (int q = 0; q < l_; ++q)
        if ((sorted[q] >> (63 - t)) & 1ULL) row |= 1ULL << q;
      // Column 0 most significant: compare on bit-reversed rows.
      cur_[t] = reverse_bits(row);
      if (!best_.empty()) {
        bool less = false, greater = false;
        for (int a = 0; a <= t; ++a) {
          if (cur_[a] < best_[a]) {
            less = true;
            break;
          }
          if (cur_[a] > best_[a]) {
            greater = true;
            break;
          }
        }
        if (less && !greater) continue;
      }
      used_[x] = true;
      order_[t] = x;
      dfs(t + 1, nk);
      used_[x] = false;
    }
  }

  static std::uint64_t reverse_bits(std::uint64_t v) {
    std::uint64_t r = 0;
    for (int b = 0; b < 64; ++b)
      if ((v >> b) & 1ULL) r |= 1ULL << (63 - b);
    return r;
  }

  const Mask& m_;
  int k_, l_;
  std::vector<std::vector<int>> inv_, slot_inv_;
  std::vector<bool> used_;
  std::vector<int> order_;
  std::vector<std::uint64_t> cur_, best_;
  std::uint64_t count_ = 0;
};

class SymmetricCanonizer {
 public:
  explicit SymmetricCanonizer(const Mask& m) : m_(m), n_(m.rows()) {
    std::vector<int> deg(n_);
    for (int i = 0; i < n_; ++i) deg[i] = m.row_degree(i);
    inv_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      std::vector<int> nb;
      for (int j = 0; j < n_; ++j)
        if (j != i && m.get(i, j)) nb.push_back(deg[j]);
      std::sort(nb.rbegin(), nb.rend());
      inv_[i] = {static_cast<int>(m.get(i, i)), deg[i]};
      inv_[i].insert(inv_[i].end(), nb.begin(), nb.end());
    }
    slot_inv_ = inv_;
    std::sort(slot_inv_.rbegin(), slot_inv_.rend());
    used_.assign(n_, false);
    order_.resize(n_);
    cur_.resize(n_);
  }

  void run() {
    best_.clear();
    count_ = 0;
    dfs(0);
  }

  // Lower-triangular row t of the best ordering: bit (63-b) holds entry (t,b), b <= t.
  const std::vector<std::uint64_t>& best() const { return best_; }
  const std::vector<int>& best_order() const { return best_order_; }
  std::uint64_t leaf_count() const { return count_; }

 private:
  void dfs(int t) {
    if (t == n_) {
      if (best_.empty() || cur_ > best_) {
        best_ = cur_;
        best_order_ = order_;
        count_ = 1;
      } else if (cur_ == best_) {
        ++count_;
      }
      return;
    }
    for (int x = 0; x < n_; ++x) {
      if (used_[x] || inv_[x] != slot_inv_[t]) continue;
      order_[t] = x;
      std::uint64_t row = 0;
      for (int b = 0; b <= t; ++b)
        if (m_.get(x, order_[b])) row |= 1ULL << (63 - b);
      cur_[t] = row;
      if (!best_.empty()) {
        bool less = false;
        for (int a = 0; a <= t; ++a) {
          if (cur_[a] != best_[a]) {
            less = cur_[a] < best_[a];
            break;
          }
        }
        if (less) continue;
      }
      used_[x] = true;
      dfs(t + 1);
      used_[x] = false;
    }
  }

  const Mask& m_;
  int n_;
  std::vector<std::vector<int>> inv_, slot_inv_;
  std::vector<bool> used_;
  std::vector<int> order_, best_order_;
  std::vector<std::uint64_t> cur_, best_;
  std::uint64_t count_ = 0;
};

inline CanonicalMask canonical_bipartite_rows(const Mask& m) {
  BipartiteCanonizer c(m);
  c.run();
  std::vector<std::uint64_t> rows;
  for (auto r : c.best()) {
    std::uint64_t v = 0;
    for (int q = 0; q < m.cols(); ++q)
      if ((r >> (63 - q)) & 1ULL) v |= 1ULL << q;
    rows.push_back(v);
  }
  Mask out = Mask::from_rows(MaskKind::Bipartite, m.cols(), rows);
  // Identical columns can be permuted freely once the row order is fixed.
  std::map<std::uint64_t, int> mult;
  for (int j = 0; j < out.cols(); ++j) {
    std::uint64_t key = 0;
    for (int i = 0; i < out.rows(); ++i) key |= static_cast<std::uint64_t>(out.get(i, j)) << i;
    ++mult[key];
  }
  BigInt aut = c.leaf_count();
  for (auto& [key, c2] : mult) aut *= factorial(c2);
  return {out, aut};
}

}  // namespace detail

class IsolatedVertexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline CanonicalMask canonical_form(const Mask& m) {
  if (m.has_isolated()) throw IsolatedVertexError("canonical_form requires a mask without isolated vertices");
  if (m.symmetric()) {
    detail::SymmetricCanonizer c(m);
    c.run();
    const auto& ord = c.best_order();
    int n = m.rows();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[ord[t]] = t;
    return {m.permuted(pos, pos), c.leaf_count()};
  }
  // Permute the shorter side; the choice depends only on the shape.
  if (m.rows() > m.cols()) {
    CanonicalMask t = detail::canonical_bipartite_rows(m.transpose());
    return {t.mask.transpose(), t.aut_order};
  }
  return detail::canonical_bipartite_rows(m);
}

inline bool isomorphic(const Mask& a, const Mask& b) {
  if (a.kind() != b.kind() || a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return canonical_form(a).mask == canonical_form(b).mask;
}

// Labeled placements of the class into an (m,n) ground set.
inline BigInt orbit_size(const CanonicalMask& c, int m, int n) {
  auto [k, l] = c.signature();
  if (c.mask.symmetric()) {
    if (k > m) throw std::invalid_argument("signature exceeds ground set");
    return factorial(m) / (c.aut_order * factorial(m - k));
  }
  if (k > m || l > n) throw std::invalid_argument("signature exceeds ground set");
  return factorial(m) * factorial(n) / (c.aut_order * factorial(m - k) * factorial(n - l));
}
inline BigInt orbit_size(const CanonicalMask& c, int n) { return orbit_size(c, n, n); }

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::size_t h = static_cast<std::size_t>(m.rows()) * 131 + static_cast<std::size_t>(m.cols());
    for (auto r : m.row_bits()) h = h * 0x100000001B3ULL ^ std::hash<std::uint64_t>{}(r);
    return h;
  }
};

struct RepresentativeQuery {
  MaskKind kind = MaskKind::Bipartite;
  int rows = 0;  // signature; for symmetric masks the vertex count
  int cols = 0;
  int min_edges = 0;
  int max_edges = 1 << 20;
  int min_row_degree = 1;
  int min_col_degree = 1;
  bool loops = false;  // symmetric kind only
};

namespace detail {

inline void bipartite_multisets(const RepresentativeQuery& q, const std::function<void(const Mask&)>& emit) {
  const int k = q.rows, l = q.cols;
  std::vector<std::uint64_t> types;
  for (std::uint64_t v = (1ULL << k) - 1; v > 0; --v)
    if (std::popcount(v) >= std::max(1, q.min_col_degree)) types.push_back(v);
  const int min_pc = std::max(1, q.min_col_degree);
  std::vector<std::size_t> pick(l);
  std::function<void(int, std::size_t, int)> rec = [&](int pos, std::size_t from, int edges) {
    int rest = l - pos;
    if (edges + rest * min_pc > q.max_edges) return;
    if (edges + rest * k < q.min_edges) return;
    if (pos == l) {
      if (edges < q.min_edges) return;
      std::vector<int> rowdeg(k, 0);
      for (int j = 0; j < l; ++j)
        for (int i = 0; i < k; ++i) rowdeg[i] += (types[pick[j]] >> i) & 1ULL;
      for (int i = 0; i < k; ++i)
        if (rowdeg[i] < std::max(1, q.min_row_degree)) return;
      Mask m = Mask::bipartite(k, l);
      for (int j = 0; j < l; ++j)
        for (int i = 0; i < k; ++i)
          if ((types[pick[j]] >> i) & 1ULL) m.set(i, j);
      emit(m);
      return;
    }
    for (std::size_t t = from; t < types.size(); ++t) {
      pick[pos] = t;
      rec(pos + 1, t, edges + std::popcount(types[t]));
    }
  };
  rec(0, 0, 0);
}

inline void symmetric_subsets(const RepresentativeQuery& q, const std::function<void(const Mask&)>& emit) {
  const int n = q.rows;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = q.loops ? i : i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const int np = static_cast<int>(pairs.size());
  if (np > 63) throw std::invalid_argument("symmetric representative search too large");
  int lo = std::max(0, q.min_edges), hi = std::min(np, q.max_edges);
  for (int e = lo; e <= hi; ++e) {
    if (e == 0) continue;
    // Gosper's hack over subsets of size e.
    std::uint64_t v = (e == 64) ? ~0ULL : ((1ULL << e) - 1);
    const std::uint64_t limit = 1ULL << np;
    while (v < limit) {
      std::vector<int> deg(n, 0);
      for (std::uint64_t w = v; w; w &= w - 1) {
        auto [a, b] = pairs[std::countr_zero(w)];
        ++deg[a];
        if (a != b) ++deg[b];
      }
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = deg[i] >= std::max(1, q.min_row_degree);
      if (ok) {
        Mask m = Mask::symmetric(n);
        for (std::uint64_t w = v; w; w &= w - 1) {
          auto [a, b] = pairs[std::countr_zero(w)];
          m.set(a, b);
        }
        emit(m);
      }
      std::uint64_t c = v & (~v + 1), r = v + c;
      v = (((r ^ v) >> 2) / c) | r;
    }
  }
}

}  // namespace detail

// One representative per isomorphism class, each already in canonical labeling.
inline void representatives(const RepresentativeQuery& q, const std::function<void(const CanonicalMask&)>& emit) {
  if (q.rows < 1 || q.cols < 1) return;
  std::unordered_set<Mask, MaskHash> seen;
  auto take = [&](const Mask& m) {
    CanonicalMask c = canonical_form(m);
    if (seen.insert(c.mask).second) emit(c);
  };
  if (q.kind == MaskKind::Symmetric) {
    detail::symmetric_subsets(q, take);
  } else if (q.rows > q.cols) {
    RepresentativeQuery t = q;
    std::swap(t.rows, t.cols);
    std::swap(t.min_row_degree, t.min_col_degree);
    detail::bipartite_multisets(t, [&](const Mask& m) { take(m.transpose()); });
  } else {
    detail::bipartite_multisets(q, take);
  }
}

inline std::vector<CanonicalMask> representative_list(const RepresentativeQuery& q) {
  std::vector<CanonicalMask> out;
  representatives(q, [&](const CanonicalMask& c) { out.push_back(c); });
  return out;
}

inline bool transpose_distinct(const CanonicalMask& c) {
  if (c.mask.symmetric()) return false;
  return !(canonical_form(c.mask.transpose()).mask == c.mask);
}

}  // namespace matsym
