#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "models.hpp"
#include "primefield.hpp"

namespace matsym {

class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static EdgeSet full(std::size_t universe) {
    EdgeSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  std::size_t universe() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }
  EdgeSet& set(std::size_t i) {
    check(i);
    w_[i >> 6] |= 1ULL << (i & 63);
    return *this;
  }
  EdgeSet& reset(std::size_t i) {
    check(i);
    w_[i >> 6] &= ~(1ULL << (i & 63));
    return *this;
  }
  EdgeSet with(std::size_t i) const { return EdgeSet(*this).set(i); }
  EdgeSet without(std::size_t i) const { return EdgeSet(*this).reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const { return count() == 0; }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < w_.size(); ++b) {
      std::uint64_t w = w_[b];
      while (w) {
        out.push_back(b * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  bool subset_of(const EdgeSet& o) const {
    same(o);
    for (std::size_t b = 0; b < w_.size(); ++b)
      if (w_[b] & ~o.w_[b]) return false;
    return true;
  }

  EdgeSet& operator|=(const EdgeSet& o) { return combine(o, [](auto a, auto b) { return a | b; }); }
  EdgeSet& operator&=(const EdgeSet& o) { return combine(o, [](auto a, auto b) { return a & b; }); }
  EdgeSet& operator-=(const EdgeSet& o) { return combine(o, [](auto a, auto b) { return a & ~b; }); }
  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }
  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

  std::size_t hash() const {
    std::size_t h = n_ * 0x9E3779B97F4A7C15ULL;
    for (auto w : w_) h ^= std::hash<std::uint64_t>{}(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void check(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("edge index outside ground set");
  }
  void same(const EdgeSet& o) const {
    if (o.n_ != n_) throw std::invalid_argument("edge sets over different ground sets");
  }
  template <class F>
  EdgeSet& combine(const EdgeSet& o, F f) {
    same(o);
    for (std::size_t b = 0; b < w_.size(); ++b) w_[b] = f(w_[b], o.w_[b]);
    return *this;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct EdgeSetHash {
  std::size_t operator()(const EdgeSet& s) const { return s.hash(); }
};

class GenericityFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleConfig {
  std::vector<std::uint64_t> primes{kDefaultPrimes.begin(), kDefaultPrimes.end()};
  int trials = 3;
  std::uint64_t seed = 1;
};

class RankOracle {
 public:
  explicit RankOracle(ModelSpec spec, OracleConfig cfg = {}) : spec_(spec), cfg_(std::move(cfg)) {
    spec_.validate();
    if (cfg_.primes.empty()) throw std::invalid_argument("at least one prime is required");
    if (cfg_.trials < 1) throw std::invalid_argument("trials must be >= 1");
    ground_ = ground_set(spec_);
    cols_ = spec_.num_params();
    for (std::size_t pi = 0; pi < cfg_.primes.size(); ++pi) {
      for (int t = 0; t < cfg_.trials; ++t) {
        GenericPoint pt = sample_point(spec_, cfg_.primes[pi], cfg_.seed * 1000003ULL + pi * 101 + t);
        Table tab{cfg_.primes[pi], std::vector<std::uint64_t>(ground_.size() * cols_)};
        for (std::size_t e = 0; e < ground_.size(); ++e) {
          auto row = jacobian_row(spec_, ground_[e], pt);
          std::copy(row.begin(), row.end(), tab.rows.begin() + static_cast<std::ptrdiff_t>(e * cols_));
        }
        tables_.push_back(std::move(tab));
      }
    }
  }

  const ModelSpec& spec() const { return spec_; }
  const OracleConfig& config() const { return cfg_; }
  const std::vector<GroundElem>& ground() const { return ground_; }
  std::size_t ground_size() const { return ground_.size(); }

  EdgeSet empty_set() const { return EdgeSet(ground_.size()); }
  EdgeSet full_set() const { return EdgeSet::full(ground_.size()); }
  EdgeSet make_set(const std::vector<GroundElem>& elems) const {
    EdgeSet s = empty_set();
    for (auto e : elems) s.set(spec_.index_of(e));
    return s;
  }
  std::vector<GroundElem> elements(const EdgeSet& s) const {
    std::vector<GroundElem> out;
    for (auto i : s.elements()) out.push_back(ground_[i]);
    return out;
  }

  // Max over each prime's points; all primes must agree.
  int rank(const EdgeSet& s) const {
    if (s.universe() != ground_.size()) throw std::invalid_argument("edge set does not match oracle ground set");
    {
      std::shared_lock lk(mu_);
      auto it = cache_.find(s);
      if (it != cache_.end()) return it->second;
    }
    auto idx = s.elements();
    std::size_t bound = std::min(idx.size(), cols_);
    std::vector<int> per_prime;
    std::size_t t = 0;
    for (std::size_t pi = 0; pi < cfg_.primes.size(); ++pi) {
      std::size_t best = 0;
      for (int k = 0; k < cfg_.trials; ++k, ++t) {
        if (best == bound) continue;
        best = std::max(best, submatrix_rank(tables_[t], idx));
      }
      per_prime.push_back(static_cast<int>(best));
    }
    for (std::size_t pi = 1; pi < per_prime.size(); ++pi) {
      if (per_prime[pi] != per_prime[0]) {
        std::ostringstream os;
        os << "genericity failure on " << spec_.to_string() << ": ranks";
        for (std::size_t q = 0; q < per_prime.size(); ++q) os << ' ' << per_prime[q] << "@" << cfg_.primes[q];
        throw GenericityFailure(os.str());
      }
    }
    int r = per_prime[0];
    std::unique_lock lk(mu_);
    cache_.emplace(s, r);
    return r;
  }

  int full_rank() const { return rank(full_set()); }

  bool is_independent(const EdgeSet& s) const { return rank(s) == static_cast<int>(s.count()); }
  bool is_dependent(const EdgeSet& s) const { return !is_independent(s); }

  bool is_circuit(const EdgeSet& s) const {
    int n = static_cast<int>(s.count());
    if (n == 0 || rank(s) != n - 1) return false;
    for (auto e : s.elements())
      if (rank(s.without(e)) != n - 1) return false;
    return true;
  }

  int relative_rank(const EdgeSet& t, const EdgeSet& s) const { return rank(t | s) - rank(s); }

  EdgeSet closure(const EdgeSet& s) const {
    EdgeSet out = s;
    int base = rank(s);
    for (std::size_t e = 0; e < ground_.size(); ++e)
      if (!s.test(e) && rank(s.with(e)) == base) out.set(e);
    return out;
  }

  std::optional<EdgeSet> find_contained_circuit(const EdgeSet& s) const {
    if (is_independent(s)) return std::nullopt;
    EdgeSet c = s;
    for (auto e : s.elements()) {
      EdgeSet d = c.without(e);
      if (is_dependent(d)) c = d;
    }
    return c;
  }

  // Greedy: keep `must` elements first, then extend within `within`.
  EdgeSet extend_to_basis(const EdgeSet& start, const EdgeSet& within) const {
    if (!is_independent(start)) throw std::invalid_argument("start set is dependent");
    EdgeSet b = start;
    int rk = static_cast<int>(b.count());
    for (auto e : within.elements()) {
      if (b.test(e)) continue;
      if (rank(b.with(e)) == rk + 1) {
        b.set(e);
        ++rk;
      }
    }
    return b;
  }
  EdgeSet basis_of(const EdgeSet& s) const { return extend_to_basis(empty_set(), s); }

  // The unique circuit in B + e when B is independent and B + e is dependent.
  std::optional<EdgeSet> fundamental_circuit(const EdgeSet& b, std::size_t e) const {
    EdgeSet s = b.with(e);
    if (is_independent(s)) return std::nullopt;
    EdgeSet c = s;
    for (auto f : b.elements()) {
      EdgeSet d = c.without(f);
      if (is_dependent(d)) c = d;
    }
    return c;
  }

  std::size_t cache_size() const {
    std::shared_lock lk(mu_);
    return cache_.size();
  }

 private:
  struct Table {
    std::uint64_t p;
    std::vector<std::uint64_t> rows;
  };

  std::size_t submatrix_rank(const Table& tab, const std::vector<std::size_t>& idx) const {
    FieldMatrix m(idx.size(), cols_, tab.p);
    for (std::size_t a = 0; a < idx.size(); ++a)
      std::copy_n(tab.rows.begin() + static_cast<std::ptrdiff_t>(idx[a] * cols_), cols_, m.row(a));
    return m.reduce();
  }

  ModelSpec spec_;
  OracleConfig cfg_;
  std::vector<GroundElem> ground_;
  std::size_t cols_ = 0;
  std::vector<Table> tables_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<EdgeSet, int, EdgeSetHash> cache_;
};

}  // namespace matsym
