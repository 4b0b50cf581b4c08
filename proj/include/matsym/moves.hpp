#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "mask.hpp"
#include "matroid.hpp"

namespace matsym {

class InvalidMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A (t,1)-move on a bipartite mask. The new row gets index base.rows(); the
// new columns get indices base.cols() .. base.cols()+t-1.
struct MoveSpec {
  Mask base;
  int i = 0, j = 0;  // removed edge
  int t = 1;
  std::vector<int> row_attach;               // old columns joined to the new row
  std::vector<std::vector<int>> col_attach;  // old rows joined to each new column
  int designated = 0;                        // new column n with i in its neighborhood
};

namespace detail {

inline std::vector<int> row_neighbors(const Mask& m, int i) {
  std::vector<int> out;
  for (int j = 0; j < m.cols(); ++j)
    if (m.get(i, j)) out.push_back(j);
  return out;
}

inline std::vector<int> col_neighbors(const Mask& m, int j) {
  std::vector<int> out;
  for (int i = 0; i < m.rows(); ++i)
    if (m.get(i, j)) out.push_back(i);
  return out;
}

inline bool contains_all(const std::vector<int>& big, const std::vector<int>& small) {
  return std::all_of(small.begin(), small.end(),
                     [&](int v) { return std::find(big.begin(), big.end(), v) != big.end(); });
}

inline bool distinct_in_range(std::vector<int> v, int hi) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  return v.empty() || (v.front() >= 0 && v.back() < hi);
}

}  // namespace detail

// Empty string when the move is valid; otherwise the first violated condition.
inline std::string move_violation(const MoveSpec& s, int r) {
  const Mask& b = s.base;
  if (b.symmetric()) return "moves act on bipartite masks";
  if (s.t < 1 || s.t > r) return "t must lie in [1, r]";
  if (s.i < 0 || s.i >= b.rows() || s.j < 0 || s.j >= b.cols() || !b.get(s.i, s.j))
    return "(i,j) is not an edge of the base";
  if (b.cols() + s.t > 64) return "result wider than 64 columns";
  if (static_cast<int>(s.col_attach.size()) != s.t) return "need one attachment list per new column";
  if (!detail::distinct_in_range(s.row_attach, b.cols())) return "row attachment must list distinct old columns";
  for (const auto& a : s.col_attach)
    if (!detail::distinct_in_range(a, b.rows())) return "column attachment must list distinct old rows";
  if (static_cast<int>(s.row_attach.size()) + s.t != r + 1) return "new row must have degree r+1";
  for (const auto& a : s.col_attach)
    if (static_cast<int>(a.size()) + 1 != r + 1) return "new columns must have degree r+1";
  if (s.designated < 0 || s.designated >= s.t) return "designated column out of range";
  auto ni = detail::row_neighbors(b, s.i);
  auto nj = detail::col_neighbors(b, s.j);
  const auto& rn = s.row_attach;
  const auto& cn = s.col_attach[s.designated];
  if (std::find(rn.begin(), rn.end(), s.j) == rn.end()) return "new row must be adjacent to j";
  if (std::find(cn.begin(), cn.end(), s.i) == cn.end()) return "designated column must be adjacent to i";
  if (!detail::contains_all(ni, rn) || rn.size() >= ni.size()) return "new row neighborhood not properly inside N(i)";
  if (!detail::contains_all(nj, cn) || cn.size() >= nj.size()) return "designated column neighborhood not properly inside N(j)";
  return {};
}

inline Mask partial_t1_move(const MoveSpec& s, int r) {
  if (auto e = move_violation(s, r); !e.empty()) throw InvalidMove(e);
  const Mask& b = s.base;
  const int nr = b.rows(), nc = b.cols();
  Mask out = Mask::bipartite(nr + 1, nc + s.t);
  for (int a = 0; a < nr; ++a)
    for (int c = 0; c < nc; ++c)
      if (b.get(a, c)) out.set(a, c);
  for (int c : s.row_attach) out.set(nr, c);
  for (int q = 0; q < s.t; ++q) {
    out.set(nr, nc + q);
    for (int a : s.col_attach[q]) out.set(a, nc + q);
  }
  return out;
}

inline Mask t1_move(const MoveSpec& s, int r) {
  Mask out = partial_t1_move(s, r);
  out.set(s.i, s.j, false);
  return out;
}

// Fills in attachments greedily from N(i) and N(j).
inline MoveSpec auto_move(const Mask& base, int i, int j, int t, int r) {
  MoveSpec s;
  s.base = base;
  s.i = i;
  s.j = j;
  s.t = t;
  if (i < 0 || i >= base.rows() || j < 0 || j >= base.cols() || !base.get(i, j))
    throw InvalidMove("(i,j) is not an edge of the base");
  auto ni = detail::row_neighbors(base, i);
  auto nj = detail::col_neighbors(base, j);
  s.row_attach.push_back(j);
  for (int c : ni)
    if (c != j && static_cast<int>(s.row_attach.size()) < r + 1 - t) s.row_attach.push_back(c);
  std::vector<int> col{i};
  for (int a : nj)
    if (a != i && static_cast<int>(col.size()) < r) col.push_back(a);
  s.col_attach.assign(t, col);
  if (auto e = move_violation(s, r); !e.empty()) throw InvalidMove("no attachment found: " + e);
  return s;
}

// Rank of C equals the rank of its signature rectangle.
inline bool spanned_by_basis(const RankOracle& o, const EdgeSet& c) {
  auto [k, l] = to_mask(o.spec(), c).signature();
  return o.rank(c) == o.rank(to_edge_set(o.spec(), Mask::complete(k, l)));
}

// True when s contains exactly one circuit; returns it through `circuit`.
inline bool unique_circuit(const RankOracle& o, const EdgeSet& s, EdgeSet* circuit = nullptr) {
  auto d = o.find_contained_circuit(s);
  if (!d) return false;
  for (auto e : d->elements())
    if (o.is_dependent(s.without(e))) return false;
  if (circuit) *circuit = *d;
  return true;
}

struct MoveReport {
  Mask result;
  bool circuit = false;
  bool spanned = false;
  std::optional<CircuitClass> cls;
};

inline MoveReport verify_move(const Mask& result, int r, const OracleConfig& cfg = {}) {
  RankOracle o(ModelSpec::det(result.rows(), result.cols(), r), cfg);
  EdgeSet s = to_edge_set(o.spec(), result);
  MoveReport rep{result, false, false, std::nullopt};
  auto c = classify(o, s);
  rep.circuit = c.verdict == Verdict::Circuit;
  rep.cls = c.cls;
  rep.spanned = spanned_by_basis(o, s);
  return rep;
}

// Applies the (r,1)-move k times to K_{r+1,r+1}, always on the first edge in row-major order.
inline Mask iterated_r1_move(int r, int k) {
  Mask m = Mask::complete(r + 1, r + 1);
  for (int step = 0; step < k; ++step) {
    int i = -1, j = -1;
    for (int a = 0; a < m.rows() && i < 0; ++a)
      for (int c = 0; c < m.cols(); ++c)
        if (m.get(a, c)) {
          i = a;
          j = c;
          break;
        }
    m = t1_move(auto_move(m, i, j, r, r), r);
  }
  return m;
}

struct StMoveReport {
  Mask base;
  Mask result;
  int edges = 0;
  int rank = 0;
  int full_rank = 0;
  bool independent = false;
  bool basis = false;
  int defect_change = 0;  // s + t - st - 1
  bool drop_one_new_edge_independent = false;
};

// The (2,2)-move on K_{3,3} in Det(.,.,2): remove edge (0,0), add K_{2,2} on
// new rows 3,4 and new columns 3,4, and give each new vertex one old neighbor.
// The first attachment (row 3 -> column 0, column 3 -> row 0) in lexicographic
// order that yields an independent set is used.
inline StMoveReport st_move_counterexample(const OracleConfig& cfg = {}) {
  const int r = 2;
  RankOracle o(ModelSpec::det(5, 5, r), cfg);
  Mask base = Mask::complete(3, 3);
  StMoveReport rep;
  rep.base = base;
  rep.full_rank = o.full_rank();
  rep.defect_change = 2 + 2 - 2 * 2 - 1;
  auto build = [&](int a4, int b4) {
    Mask m = Mask::bipartite(5, 5);
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c)
        if (a || c) m.set(a, c);
    for (int a = 3; a < 5; ++a)
      for (int c = 3; c < 5; ++c) m.set(a, c);
    m.set(3, 0);
    m.set(0, 3);
    m.set(4, a4);
    m.set(b4, 4);
    return m;
  };
  for (int a4 = 0; a4 < 3 && !rep.independent; ++a4)
    for (int b4 = 0; b4 < 3; ++b4) {
      Mask m = build(a4, b4);
      EdgeSet s = to_edge_set(o.spec(), m);
      if (o.is_independent(s)) {
        rep.result = m;
        rep.independent = true;
        break;
      }
    }
  if (!rep.independent) {
    rep.result = build(0, 0);
  }
  EdgeSet s = to_edge_set(o.spec(), rep.result);
  rep.edges = static_cast<int>(s.count());
  rep.rank = o.rank(s);
  rep.basis = rep.independent && rep.rank == rep.full_rank;
  rep.drop_one_new_edge_independent = true;
  for (int a = 0; a < 5; ++a)
    for (int c = 0; c < 5; ++c)
      if (rep.result.get(a, c) && (a >= 3 || c >= 3)) {
        Mask d = rep.result;
        d.set(a, c, false);
        if (!o.is_independent(to_edge_set(o.spec(), d))) rep.drop_one_new_edge_independent = false;
      }
  return rep;
}

}  // namespace matsym
