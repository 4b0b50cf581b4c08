#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace matsym {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;
inline constexpr std::array<std::uint64_t, 3> kDefaultPrimes = {2147483647ULL, 2147483629ULL,
                                                                2147483587ULL};

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes must fit below 2^32 so that products fit in 64 bits.
inline void check_modulus(std::uint64_t p) {
  if (p <= (1ULL << 20) || p >= (1ULL << 32) || !is_prime(p))
    throw std::invalid_argument("modulus must be a prime in (2^20, 2^32): " + std::to_string(p));
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }
inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  return detail::powmod64(a, e, p);
}
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  return pow_mod(a, p - 2, p);
}

struct FieldElem {
  std::uint64_t value = 0;
  std::uint64_t p = kDefaultPrime;

  FieldElem() = default;
  FieldElem(std::uint64_t v, std::uint64_t prime) : value(v % prime), p(prime) {}

  static FieldElem from_signed(std::int64_t v, std::uint64_t prime) {
    std::int64_t r = v % static_cast<std::int64_t>(prime);
    if (r < 0) r += static_cast<std::int64_t>(prime);
    return {static_cast<std::uint64_t>(r), prime};
  }

  friend FieldElem operator+(FieldElem a, FieldElem b) { return {add_mod(a.value, b.value, a.p), a.p}; }
  friend FieldElem operator-(FieldElem a, FieldElem b) { return {sub_mod(a.value, b.value, a.p), a.p}; }
  friend FieldElem operator*(FieldElem a, FieldElem b) { return {mul_mod(a.value, b.value, a.p), a.p}; }
  friend FieldElem operator/(FieldElem a, FieldElem b) { return a * b.inverse(); }
  FieldElem operator-() const { return {sub_mod(0, value, p), p}; }
  FieldElem inverse() const { return {inv_mod(value, p), p}; }
  FieldElem pow(std::uint64_t e) const { return {pow_mod(value, e, p), p}; }
  bool is_zero() const { return value == 0; }
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t prime() const { return p_; }

  std::uint64_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  FieldElem elem(std::size_t i, std::size_t j) const { return {at(i, j), p_}; }
  std::uint64_t* row(std::size_t i) { return data_.data() + i * cols_; }
  const std::uint64_t* row(std::size_t i) const { return data_.data() + i * cols_; }

  void set_row(std::size_t i, const std::vector<std::uint64_t>& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j] % p_;
  }

  FieldMatrix transpose() const {
    FieldMatrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  // Rows of `below` appended under this matrix.
  FieldMatrix stacked(const FieldMatrix& below) const {
    if (below.cols_ != cols_ || below.p_ != p_) throw std::invalid_argument("stack shape mismatch");
    FieldMatrix s(rows_ + below.rows_, cols_, p_);
    std::copy(data_.begin(), data_.end(), s.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), s.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return s;
  }

  // In-place row echelon form; returns the rank.
  std::size_t reduce() {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t piv = rank;
      while (piv < rows_ && at(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      if (piv != rank)
        for (std::size_t j = c; j < cols_; ++j) std::swap(at(piv, j), at(rank, j));
      std::uint64_t inv = inv_mod(at(rank, c), p_);
      std::uint64_t* pr = row(rank);
      for (std::size_t j = c; j < cols_; ++j) pr[j] = pr[j] * inv % p_;
      for (std::size_t i = rank + 1; i < rows_; ++i) {
        std::uint64_t* ri = row(i);
        std::uint64_t f = ri[c];
        if (f == 0) continue;
        for (std::size_t j = c; j < cols_; ++j) ri[j] = sub_mod(ri[j], pr[j] * f % p_, p_);
      }
      ++rank;
    }
    return rank;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint64_t p_ = kDefaultPrime;
  std::vector<std::uint64_t> data_;
};

inline std::size_t mat_rank(const FieldMatrix& m) {
  FieldMatrix copy = m;
  return copy.reduce();
}

inline std::size_t solve_nullspace_dim(const FieldMatrix& m) { return m.cols() - mat_rank(m); }

}  // namespace matsym
