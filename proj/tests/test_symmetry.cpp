#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <array>
#include <bit>
#include <set>

#include "matsym/symmetry.hpp"

using namespace matsym;

namespace {

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

long brute_aut(const Mask& m) {
  long c = 0;
  auto rps = all_perms(m.rows());
  if (m.symmetric()) {
    for (auto& p : rps) c += m.permuted(p, p) == m;
    return c;
  }
  auto cps = all_perms(m.cols());
  for (auto& rp : rps)
    for (auto& cp : cps) c += m.permuted(rp, cp) == m;
  return c;
}

Mask random_mask(std::mt19937_64& g, int k, int l, bool sym, double dens = 0.5) {
  std::bernoulli_distribution b(dens);
  while (true) {
    Mask m = sym ? Mask::symmetric(k) : Mask::bipartite(k, l);
    for (int i = 0; i < k; ++i)
      for (int j = sym ? i + 1 : 0; j < l; ++j)
        if (b(g)) m.set(i, j);
    if (!m.has_isolated()) return m;
  }
}

}  // namespace

TEST(Masks, AsciiRoundTrip) {
  Mask m = parse_mask("##.\n.##\n#.#\n");
  EXPECT_EQ(m.to_ascii(), "##.\n.##\n#.#\n");
  EXPECT_EQ(m.edge_count(), 6);
  EXPECT_EQ(m.signature(), std::make_pair(3, 3));
  EXPECT_THROW(parse_mask("#x\n##\n"), MaskParseError);
  EXPECT_THROW(parse_mask("##\n#\n"), MaskParseError);
  EXPECT_THROW(parse_mask("#.\n##\n", MaskKind::Symmetric), MaskParseError);
  Mask s = parse_mask(".#\n#.\n", MaskKind::Symmetric);
  EXPECT_EQ(s.edge_count(), 1);
}

TEST(Masks, EdgeSetConversion) {
  auto spec = ModelSpec::det(4, 4, 2);
  Mask m = parse_mask("##.\n.##\n");
  EdgeSet s = to_edge_set(spec, m);
  EXPECT_EQ(s.count(), 4u);
  EXPECT_EQ(to_mask(spec, s).compact(), m);
  EXPECT_THROW(to_edge_set(ModelSpec::det(1, 4, 2), m), DimensionMismatch);
  Mask loop = parse_mask("#.\n.#\n", MaskKind::Symmetric);
  EXPECT_THROW(to_edge_set(ModelSpec::rig(3, 2), loop), DimensionMismatch);
  EXPECT_EQ(to_edge_set(ModelSpec::symdet(3, 2), loop).count(), 2u);
}

TEST(Canonical, KnownStabilizers) {
  EXPECT_EQ(canonical_form(Mask::complete(3, 3)).aut_order, 36);
  Mask c8 = parse_mask("##..\n.##.\n..##\n#..#\n");
  // Only side-preserving symmetries of the 8-cycle lie in S(4) x S(4).
  EXPECT_EQ(canonical_form(c8).aut_order, 8);
  Mask k4 = parse_mask(".###\n#.##\n##.#\n###.\n", MaskKind::Symmetric);
  EXPECT_EQ(canonical_form(k4).aut_order, 24);
  EXPECT_THROW(canonical_form(parse_mask("#.\n..\n")), IsolatedVertexError);
}

TEST(Canonical, AutOrderMatchesBruteForce) {
  std::mt19937_64 g(17);
  for (int rep = 0; rep < 150; ++rep) {
    int k = 1 + static_cast<int>(g() % 4), l = 1 + static_cast<int>(g() % 5);
    Mask m = random_mask(g, k, l, false, 0.3 + 0.1 * (rep % 5));
    ASSERT_EQ(canonical_form(m).aut_order, brute_aut(m)) << m.to_ascii();
  }
  for (int rep = 0; rep < 100; ++rep) {
    int n = 2 + static_cast<int>(g() % 5);
    Mask m = random_mask(g, n, n, true, 0.5);
    if (rep % 3 == 0) m.set(0, 0);
    ASSERT_EQ(canonical_form(m).aut_order, brute_aut(m)) << m.to_ascii();
  }
}

TEST(Canonical, InvariantUnderRandomRelabeling) {
  std::mt19937_64 g(23);
  for (int rep = 0; rep < 40; ++rep) {
    bool sym = rep % 2;
    int k = 3 + static_cast<int>(g() % 4), l = sym ? k : 3 + static_cast<int>(g() % 4);
    Mask m = random_mask(g, k, l, sym);
    CanonicalMask c = canonical_form(m);
    EXPECT_EQ(canonical_form(c.mask).mask, c.mask);
    for (int t = 0; t < 100; ++t) {
      std::vector<int> rp(k), cp(l);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), g);
      std::shuffle(cp.begin(), cp.end(), g);
      Mask q = sym ? m.permuted(rp, rp) : m.permuted(rp, cp);
      ASSERT_EQ(canonical_form(q).mask, c.mask);
    }
  }
}

TEST(Canonical, SeparatesNonIsomorphic) {
  // Exhaustive over 3x3 masks: classes from canonical forms equal classes from brute orbits.
  std::set<std::vector<std::uint64_t>> canon;
  std::set<std::vector<std::uint64_t>> orbit_reps;
  auto rps = all_perms(3);
  for (unsigned bits = 0; bits < 512; ++bits) {
    Mask m = Mask::bipartite(3, 3);
    for (int a = 0; a < 9; ++a)
      if ((bits >> a) & 1) m.set(a / 3, a % 3);
    if (m.has_isolated()) continue;
    canon.insert(canonical_form(m).mask.row_bits());
    std::vector<std::uint64_t> least;
    for (auto& rp : rps)
      for (auto& cp : rps) {
        auto r = m.permuted(rp, cp).row_bits();
        if (least.empty() || r < least) least = r;
      }
    orbit_reps.insert(least);
  }
  EXPECT_EQ(canon.size(), orbit_reps.size());
}

TEST(Orbits, Sizes) {
  CanonicalMask k33 = canonical_form(Mask::complete(3, 3));
  EXPECT_EQ(orbit_size(k33, 4, 4), 16);
  EXPECT_THROW(orbit_size(k33, 2, 4), std::invalid_argument);
  // Direct count of labeled placements of K_{3,3} in a 4x4 ground set.
  std::set<std::vector<std::uint64_t>> placements;
  Mask pad = Mask::bipartite(4, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pad.set(i, j);
  for (auto& rp : all_perms(4))
    for (auto& cp : all_perms(4)) placements.insert(pad.permuted(rp, cp).row_bits());
  EXPECT_EQ(placements.size(), 16u);
  Mask asym = parse_mask("###\n##.\n#..\n.#.\n");
  auto c = canonical_form(asym);
  EXPECT_EQ(c.aut_order * orbit_size(c, 4, 3), factorial(4) * factorial(3));
}

TEST(Orbits, OrbitStabilizerIdentity) {
  std::mt19937_64 g(31);
  for (int rep = 0; rep < 30; ++rep) {
    int k = 2 + static_cast<int>(g() % 3), l = 2 + static_cast<int>(g() % 3);
    Mask m = random_mask(g, k, l, false);
    std::set<std::vector<std::uint64_t>> images;
    for (auto& rp : all_perms(k))
      for (auto& cp : all_perms(l)) images.insert(m.permuted(rp, cp).row_bits());
    auto c = canonical_form(m);
    EXPECT_EQ(c.aut_order * images.size(), factorial(k) * factorial(l));
    EXPECT_EQ(orbit_size(c, k, l), images.size());
  }
}

TEST(Representatives, SmallCases) {
  RepresentativeQuery q;
  q.rows = q.cols = 3;
  q.min_edges = q.max_edges = 9;
  q.min_row_degree = q.min_col_degree = 3;
  EXPECT_EQ(representative_list(q).size(), 1u);
  q.rows = q.cols = 2;
  q.min_edges = q.max_edges = 4;
  q.min_row_degree = q.min_col_degree = 1;
  EXPECT_EQ(representative_list(q).size(), 1u);
}

TEST(Representatives, MatchBruteForceBucketing) {
  for (auto [k, l, e, d] : std::vector<std::array<int, 4>>{{4, 4, 12, 3}, {4, 4, 10, 2}, {3, 5, 9, 2}, {5, 3, 9, 2}}) {
    RepresentativeQuery q;
    q.rows = k;
    q.cols = l;
    q.min_edges = q.max_edges = e;
    q.min_row_degree = q.min_col_degree = d;
    auto reps = representative_list(q);
    std::set<std::vector<std::uint64_t>> buckets;
    BigInt labeled = 0;
    for (unsigned bits = 0; bits < (1u << (k * l)); ++bits) {
      if (std::popcount(bits) != e) continue;
      Mask m = Mask::bipartite(k, l);
      for (int a = 0; a < k * l; ++a)
        if ((bits >> a) & 1) m.set(a / l, a % l);
      bool ok = true;
      for (int i = 0; i < k; ++i) ok = ok && m.row_degree(i) >= d;
      for (int j = 0; j < l; ++j) ok = ok && m.col_degree(j) >= d;
      if (!ok) continue;
      ++labeled;
      buckets.insert(canonical_form(m).mask.row_bits());
    }
    EXPECT_EQ(reps.size(), buckets.size()) << k << "x" << l;
    BigInt total = 0;
    for (auto& c : reps) total += orbit_size(c, k, l);
    EXPECT_EQ(total, labeled) << k << "x" << l;
  }
}

TEST(Representatives, SymmetricMatchesLabeledCount) {
  for (bool loops : {false, true}) {
    RepresentativeQuery q;
    q.kind = MaskKind::Symmetric;
    q.rows = q.cols = 5;
    q.loops = loops;
    q.min_edges = 5;
    q.max_edges = 7;
    q.min_row_degree = 2;
    auto reps = representative_list(q);
    BigInt total = 0;
    for (auto& c : reps) total += orbit_size(c, 5);
    int npairs = loops ? 15 : 10;
    long labeled = 0;
    for (unsigned bits = 0; bits < (1u << npairs); ++bits) {
      int pc = std::popcount(bits);
      if (pc < 5 || pc > 7) continue;
      std::vector<int> deg(5, 0);
      int a = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = loops ? i : i + 1; j < 5; ++j, ++a)
          if ((bits >> a) & 1) {
            ++deg[i];
            if (i != j) ++deg[j];
          }
      labeled += std::all_of(deg.begin(), deg.end(), [](int x) { return x >= 2; });
    }
    EXPECT_EQ(total, labeled);
  }
}

TEST(Transpose, Detection) {
  EXPECT_FALSE(transpose_distinct(canonical_form(Mask::complete(3, 3))));
  EXPECT_TRUE(transpose_distinct(canonical_form(Mask::complete(3, 4))));
  EXPECT_TRUE(transpose_distinct(canonical_form(parse_mask("###\n##.\n#.#\n"))) ==
              !(canonical_form(parse_mask("###\n##.\n#.#\n").transpose()).mask ==
                canonical_form(parse_mask("###\n##.\n#.#\n")).mask));
}
