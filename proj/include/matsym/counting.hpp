#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "enumeration.hpp"
#include "numeric.hpp"

namespace matsym {

struct SignatureCount {
  int c = 0;
  Rational beta = 0;
};

class IncompleteTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountTable {
  MaskKind kind = MaskKind::Bipartite;
  std::map<std::pair<int, int>, SignatureCount> entries;
  // Ground-set size within which the class list is complete; unset means the
  // caller vouches for completeness.
  std::optional<std::pair<int, int>> box;
  bool partial = false;

  const SignatureCount& at(int k, int l) const {
    static const SignatureCount none{};
    auto it = entries.find({k, l});
    return it == entries.end() ? none : it->second;
  }
};

inline CountTable count_classes(const std::vector<CircuitClass>& classes) {
  CountTable t;
  for (const auto& c : classes) {
    t.kind = c.mask().kind();
    auto& e = t.entries[c.signature];
    ++e.c;
    e.beta += Rational(1) / Rational(c.aut_order());
  }
  return t;
}

inline CountTable count_classes(const EnumerationResult& r, std::pair<int, int> box) {
  CountTable t = count_classes(r.classes);
  t.box = box;
  t.partial = r.partial;
  return t;
}

namespace detail {

inline void require_complete(const CountTable& t, int m, int n) {
  if (t.partial) throw IncompleteTable("count table comes from a partial enumeration");
  if (t.box && (m > t.box->first || n > t.box->second))
    throw IncompleteTable("count table is complete only up to " + std::to_string(t.box->first) + "x" +
                          std::to_string(t.box->second));
}

}  // namespace detail

// Labeled circuits of the (m,n) model: sum of beta * m! n! / ((m-k)! (n-l)!).
inline BigInt total_circuits(const CountTable& t, int m, int n) {
  detail::require_complete(t, m, n);
  Rational total = 0;
  for (auto& [sig, e] : t.entries) {
    auto [k, l] = sig;
    if (k > m || l > n) continue;
    total += e.beta * Rational(factorial(m) * factorial(n) / (factorial(m - k) * factorial(n - l)));
  }
  if (boost::multiprecision::denominator(total) != 1) throw std::logic_error("non-integral circuit total");
  return boost::multiprecision::numerator(total);
}

inline BigInt total_circuits_symmetric(const CountTable& t, int n) {
  detail::require_complete(t, n, n);
  Rational total = 0;
  for (auto& [sig, e] : t.entries) {
    if (sig.first > n) continue;
    total += e.beta * Rational(factorial(n) / factorial(n - sig.first));
  }
  if (boost::multiprecision::denominator(total) != 1) throw std::logic_error("non-integral circuit total");
  return boost::multiprecision::numerator(total);
}

}  // namespace matsym
