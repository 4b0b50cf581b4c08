#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mask.hpp"
#include "matroid.hpp"

namespace matsym {

class HorizonCapReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LimitOptions {
  int initial_horizon = 6;
  int horizon_cap = 40;
  OracleConfig oracle{};
};

// One-sided: rows fixed at m, columns grow. Symmetric families grow K_nu instead
// and ignore m.
struct GrowthProfile {
  Family family = Family::Det;
  int m = 0;
  int r = 1;
  std::vector<int> ranks;  // ranks[nu] = rank(K_{m,nu}), nu = 0..horizon
  std::vector<int> delta;  // delta[nu] = ranks[nu+1] - ranks[nu]
  int rho = 0, kappa = 0, alpha = 0;
  bool free = false;
  std::vector<int> jumps;  // column counts nu with delta[nu-1] != delta[nu]

  int horizon() const { return static_cast<int>(delta.size()); }
  bool graph_limit() const { return !is_bipartite(family); }
};

namespace detail {

inline Mask complete_symmetric(int n, bool loops) {
  Mask m = Mask::symmetric(n);
  for (int i = 0; i < n; ++i)
    for (int j = loops ? i : i + 1; j < n; ++j) m.set(i, j);
  return m;
}

inline ModelSpec one_sided_spec(Family f, int m, int cols, int r) {
  if (is_bipartite(f)) return ModelSpec::make(f, m, cols, r);
  return ModelSpec::make(f, std::max(cols, 2), std::max(cols, 2), r);
}

inline EdgeSet one_sided_block(const RankOracle& o, Family f, int m, int nu) {
  if (nu == 0) return o.empty_set();
  if (is_bipartite(f)) return to_edge_set(o.spec(), Mask::complete(m, nu));
  return to_edge_set(o.spec(), complete_symmetric(nu, f == Family::SymDet));
}

// Average rank where it is known in closed form.
inline std::optional<int> closed_form_rho(Family f, int m, int r) {
  if (is_bipartite(f)) return std::min(m, r);
  return r;
}

}  // namespace detail

inline GrowthProfile growth_profile_one_sided(Family family, int m, int r, const LimitOptions& opt = {}) {
  if (is_bipartite(family) && m < 1) throw std::invalid_argument("m must be >= 1");
  int horizon = std::max(3, opt.initial_horizon);
  while (true) {
    RankOracle o(detail::one_sided_spec(family, m, horizon + 1, r), opt.oracle);
    GrowthProfile p;
    p.family = family;
    p.m = is_bipartite(family) ? m : 0;
    p.r = r;
    for (int nu = 0; nu <= horizon + 1; ++nu) p.ranks.push_back(o.rank(detail::one_sided_block(o, family, m, nu)));
    for (int nu = 0; nu <= horizon; ++nu) p.delta.push_back(p.ranks[nu + 1] - p.ranks[nu]);
    // Bipartite growth functions never increase; graph-limit ones grow until they settle.
    for (int nu = 1; nu < static_cast<int>(p.delta.size()); ++nu) {
      bool up = p.delta[nu] > p.delta[nu - 1];
      if (up && !p.graph_limit()) throw VerificationFailure("growth function increased; oracle is not generic");
      if (p.delta[nu] != p.delta[nu - 1]) p.jumps.push_back(nu);
    }
    int kappa = p.jumps.empty() ? 0 : p.jumps.back();
    int last = static_cast<int>(p.delta.size()) - 1;
    auto expected = detail::closed_form_rho(family, m, r);
    bool stable = last - kappa >= 2 && (!expected || p.delta[kappa] == *expected);
    if (stable) {
      p.rho = p.delta[kappa];
      p.free = is_bipartite(family) && p.rho == m;
      if (p.free) {
        p.kappa = p.alpha = 0;
      } else {
        p.kappa = kappa;
        p.alpha = p.ranks[kappa];
      }
      return p;
    }
    if (horizon >= opt.horizon_cap)
      throw HorizonCapReached("growth function did not stabilize within horizon " + std::to_string(opt.horizon_cap));
    horizon = std::min(opt.horizon_cap, horizon * 2);
  }
}

inline GrowthProfile growth_profile_graph(Family family, int r, const LimitOptions& opt = {}) {
  if (is_bipartite(family)) throw std::invalid_argument("graph limits need a symmetric family");
  return growth_profile_one_sided(family, 0, r, opt);
}

struct Staircase {
  std::vector<int> heights;  // heights[c] = delta[c]: rows 0..h-1 of column c
  std::vector<int> jumps;
  Mask mask(int columns) const {
    int rows = heights.empty() ? 0 : *std::max_element(heights.begin(), heights.end());
    Mask m = Mask::bipartite(rows, columns);
    for (int c = 0; c < columns; ++c)
      for (int i = 0; i < heights[c]; ++i) m.set(i, c);
    return m;
  }
};

// Checks that every truncation to nu columns is a basis of K_{m,nu}.
inline Staircase staircase(const GrowthProfile& p, const OracleConfig& cfg = {}) {
  if (p.graph_limit()) throw std::invalid_argument("staircase bases are defined for bipartite families");
  Staircase s{p.delta, p.jumps};
  int h = p.horizon();
  RankOracle o(ModelSpec::make(p.family, p.m, h, p.r), cfg);
  for (int nu = 1; nu <= h; ++nu) {
    Mask sm = Mask::bipartite(p.m, nu);
    for (int c = 0; c < nu; ++c)
      for (int i = 0; i < s.heights[c]; ++i) sm.set(i, c);
    EdgeSet set = to_edge_set(o.spec(), sm);
    if (!o.is_independent(set) || o.rank(set) != o.rank(to_edge_set(o.spec(), Mask::complete(p.m, nu))))
      throw VerificationFailure("staircase truncation at " + std::to_string(nu) + " columns is not a basis");
  }
  return s;
}

// K_{rho+1,kappa+1}, with kappa taken from the (rho+1)-row slice; kappa of wider slices can be smaller.
inline Mask elementary_circuit(const GrowthProfile& p, const OracleConfig& cfg = {}) {
  if (p.free) throw std::invalid_argument("free profiles have no elementary circuit");
  if (p.graph_limit()) throw std::invalid_argument("elementary circuits are defined for bipartite families");
  int kappa = p.kappa;
  if (p.m != p.rho + 1) {
    LimitOptions opt;
    opt.oracle = cfg;
    kappa = growth_profile_one_sided(p.family, p.rho + 1, p.r, opt).kappa;
  }
  RankOracle o(ModelSpec::make(p.family, p.rho + 1, kappa + 1, p.r), cfg);
  if (!o.is_circuit(o.full_set()))
    throw VerificationFailure("K_{" + std::to_string(p.rho + 1) + "," + std::to_string(kappa + 1) + "} is not a circuit");
  return Mask::complete(p.rho + 1, kappa + 1);
}

struct RealizingCircuit {
  int mu = 0, nu = 0;  // corner (1-based)
  int first_slice = 0;
  bool from_columns = false;  // found in a column slice (coordinates transposed back)
  Mask x;
  bool shape_match = false;
  bool x_is_circuit = false;
  Mask circuit;  // C = X when x_is_circuit, otherwise a contained circuit
};

struct TwoSidedProfile {
  Family family = Family::Det;
  int r = 1;
  int grid = 0;
  std::vector<std::vector<int>> ranks;  // ranks[mu][nu], 0..grid
  std::vector<std::pair<int, int>> boundary;
  std::pair<int, int> rho{0, 0}, kappa{0, 0};
  int alpha = 0;
  bool slices_consistent = true;

  bool dependent(int mu, int nu) const { return ranks[mu][nu] < mu * nu; }
};

inline TwoSidedProfile two_sided_profile(Family family, int r, int grid, const OracleConfig& cfg = {}) {
  if (!is_bipartite(family)) throw std::invalid_argument("two-sided limits need a bipartite family");
  if (grid < 2) throw std::invalid_argument("grid too small");
  RankOracle o(ModelSpec::make(family, grid, grid, r), cfg);
  TwoSidedProfile p;
  p.family = family;
  p.r = r;
  p.grid = grid;
  p.ranks.assign(grid + 1, std::vector<int>(grid + 1, 0));
  for (int mu = 1; mu <= grid; ++mu)
    for (int nu = 1; nu <= grid; ++nu) p.ranks[mu][nu] = o.rank(to_edge_set(o.spec(), Mask::complete(mu, nu)));
  for (int mu = 1; mu <= grid; ++mu)
    for (int nu = 1; nu <= grid; ++nu)
      if (p.dependent(mu, nu) && !p.dependent(mu - 1, nu) && !p.dependent(mu, nu - 1)) p.boundary.emplace_back(mu, nu);
  if (p.boundary.empty()) throw HorizonCapReached("no dependent rectangle inside the grid");
  int min1 = grid, max1 = 0, min2 = grid, max2 = 0;
  for (auto [a, b] : p.boundary) {
    min1 = std::min(min1, a), max1 = std::max(max1, a);
    min2 = std::min(min2, b), max2 = std::max(max2, b);
  }
  // The last boundary point in each direction must sit strictly inside the grid.
  if (max1 >= grid || max2 >= grid || !p.dependent(grid, min2) || !p.dependent(min1, grid))
    throw HorizonCapReached("minimally realizing indices reach the grid edge; enlarge the grid");
  p.rho = {min2 - 1, min1 - 1};
  p.kappa = {max1 - 1, max2 - 1};
  p.alpha = p.ranks[p.kappa.first][p.kappa.second];
  for (int m = p.rho.second; m <= grid; ++m)
    if (p.ranks[m][grid] - p.ranks[m][grid - 1] != std::min(m, p.rho.second)) p.slices_consistent = false;
  for (int n = p.rho.first; n <= grid; ++n)
    if (p.ranks[grid][n] - p.ranks[grid - 1][n] != std::min(n, p.rho.first)) p.slices_consistent = false;
  return p;
}

namespace detail {

// Corners of row slices of a rank table; table[mu][nu].
inline std::vector<RealizingCircuit> slice_corners(const std::vector<std::vector<int>>& table, int grid) {
  std::vector<RealizingCircuit> out;
  std::set<std::pair<int, int>> seen;
  for (int m = 1; m <= grid; ++m) {
    std::vector<int> h(grid + 1, 0);  // h[c] for 1-based column c
    for (int c = 1; c <= grid; ++c) h[c] = table[m][c] - table[m][c - 1];
    for (int nu = 2; nu <= grid; ++nu) {
      int mu = h[nu] + 1;
      if (mu > m || h[nu - 1] < mu) continue;
      if (!seen.insert({mu, nu}).second) continue;
      RealizingCircuit rc;
      rc.mu = mu;
      rc.nu = nu;
      rc.first_slice = m;
      int rows = 0;
      for (int c = 1; c < nu; ++c) rows = std::max(rows, h[c]);
      rows = std::max(rows, mu);
      rc.x = Mask::bipartite(rows, nu);
      for (int c = 1; c < nu; ++c)
        for (int i = 0; i < h[c]; ++i) rc.x.set(i, c - 1);
      for (int i = 0; i < mu; ++i) rc.x.set(i, nu - 1);
      bool uniform = true;
      for (int c = 2; c < nu; ++c) uniform = uniform && h[c] == h[1];
      rc.shape_match = uniform && h[1] >= mu;
      out.push_back(rc);
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<RealizingCircuit> realizing_circuits(const TwoSidedProfile& p, const OracleConfig& cfg = {}) {
  RankOracle o(ModelSpec::make(p.family, p.grid, p.grid, p.r), cfg);
  auto rows = detail::slice_corners(p.ranks, p.grid);
  std::vector<std::vector<int>> t(p.grid + 1, std::vector<int>(p.grid + 1));
  for (int a = 0; a <= p.grid; ++a)
    for (int b = 0; b <= p.grid; ++b) t[a][b] = p.ranks[b][a];
  auto cols = detail::slice_corners(t, p.grid);
  for (auto& c : cols) {
    c.from_columns = true;
    std::swap(c.mu, c.nu);
    c.x = c.x.transpose();
  }
  std::vector<RealizingCircuit> out;
  auto add = [&](RealizingCircuit rc) {
    for (auto& e : out)
      if (e.x == rc.x) return;
    EdgeSet x = to_edge_set(o.spec(), rc.x);
    rc.x_is_circuit = o.is_circuit(x);
    if (rc.shape_match && !rc.x_is_circuit)
      throw VerificationFailure("realizing set at corner (" + std::to_string(rc.mu) + "," + std::to_string(rc.nu) +
                                ") is not a circuit");
    if (rc.x_is_circuit) {
      rc.circuit = rc.x;
    } else {
      auto c = o.find_contained_circuit(x);
      if (!c) throw VerificationFailure("realizing set is independent");
      rc.circuit = to_mask(o.spec(), *c).compact();
    }
    out.push_back(std::move(rc));
  };
  for (auto& rc : rows) add(rc);
  for (auto& rc : cols) add(rc);
  return out;
}

}  // namespace matsym
