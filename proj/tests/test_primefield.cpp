#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "matsym/primefield.hpp"

using namespace matsym;

namespace {

FieldMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t p, std::mt19937_64& g) {
  FieldMatrix m(r, c, p);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = g() % p;
  return m;
}

std::vector<std::vector<std::uint64_t>> rows_of(const FieldMatrix& m) {
  std::vector<std::vector<std::uint64_t>> out(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
  return out;
}

}  // namespace

TEST(PrimeField, Arithmetic) {
  FieldElem a(5, 101), b(99, 101);
  EXPECT_EQ((a + b).value, 3u);
  EXPECT_EQ((a - b).value, 7u);
  EXPECT_EQ((a * b).value, 495u % 101);
  EXPECT_EQ((a * a.inverse()).value, 1u);
  EXPECT_EQ(FieldElem::from_signed(-1, 101).value, 100u);
  EXPECT_THROW(FieldElem(0, 101).inverse(), std::domain_error);
}

TEST(PrimeField, DefaultPrimesAreValid) {
  for (auto p : kDefaultPrimes) {
    EXPECT_TRUE(is_prime(p));
    EXPECT_NO_THROW(check_modulus(p));
  }
  EXPECT_FALSE(is_prime(2147483649ULL));
  EXPECT_THROW(check_modulus(101), std::invalid_argument);
  EXPECT_THROW(check_modulus(2147483649ULL), std::invalid_argument);
}

TEST(PrimeField, RankTrivialCases) {
  FieldMatrix id(3, 3, kDefaultPrime);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
  EXPECT_EQ(mat_rank(id), 3u);
  EXPECT_EQ(solve_nullspace_dim(id), 0u);
  EXPECT_EQ(mat_rank(FieldMatrix(4, 7, kDefaultPrime)), 0u);
  EXPECT_EQ(solve_nullspace_dim(FieldMatrix(2, 5, kDefaultPrime)), 5u);
  EXPECT_EQ(mat_rank(FieldMatrix(0, 0, kDefaultPrime)), 0u);
}

TEST(PrimeField, RankTwoOuterProducts) {
  const std::uint64_t p = 101;
  std::mt19937_64 g(7);
  for (int rep = 0; rep < 20; ++rep) {
    std::uint64_t u[4], v[4], w[4], z[4];
    for (int i = 0; i < 4; ++i) u[i] = g() % p, v[i] = g() % p, w[i] = g() % p, z[i] = g() % p;
    FieldMatrix m(4, 4, p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = (u[i] * v[j] + w[i] * z[j]) % p;
    auto expect = brute::rank(rows_of(m), p);
    EXPECT_EQ(static_cast<int>(mat_rank(m)), expect);
    EXPECT_EQ(solve_nullspace_dim(m), 4u - mat_rank(m));
    if (rep == 0) {
      EXPECT_EQ(mat_rank(m), 2u);
    }
  }
}

TEST(PrimeField, RankDoesNotModifyInput) {
  std::mt19937_64 g(3);
  FieldMatrix m = random_matrix(5, 6, 1000003, g);
  FieldMatrix copy = m;
  mat_rank(m);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(m.at(i, j), copy.at(i, j));
}

TEST(PrimeField, RankProperties) {
  std::mt19937_64 g(11);
  const std::uint64_t p = 1000003;
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t r = 1 + g() % 7, c = 1 + g() % 7, k = g() % 4;
    // Low-rank product A (r x k) * B (k x c), plus sometimes a full random matrix.
    FieldMatrix a = random_matrix(r, k == 0 ? 1 : k, p, g), b = random_matrix(k == 0 ? 1 : k, c, p, g);
    FieldMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < a.cols(); ++t) s = (s + a.at(i, t) * b.at(t, j)) % p;
        m.at(i, j) = (rep % 3 == 0) ? g() % p : s;
      }
    std::size_t rk = mat_rank(m);
    EXPECT_EQ(static_cast<int>(rk), brute::rank(rows_of(m), p));
    EXPECT_EQ(rk, mat_rank(m.transpose()));
    // Row permutation and nonzero scaling.
    FieldMatrix q = m;
    for (std::size_t i = 0; i + 1 < r; i += 2)
      for (std::size_t j = 0; j < c; ++j) std::swap(q.at(i, j), q.at(i + 1, j));
    for (std::size_t j = 0; j < c; ++j) q.at(0, j) = q.at(0, j) * 17 % p;
    EXPECT_EQ(rk, mat_rank(q));
    FieldMatrix other = random_matrix(1 + g() % 4, c, p, g);
    std::size_t both = mat_rank(m.stacked(other));
    EXPECT_GE(both, std::max(rk, mat_rank(other)));
    EXPECT_LE(both, rk + mat_rank(other));
  }
}
