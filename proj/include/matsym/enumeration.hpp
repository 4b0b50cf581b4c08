#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "mask.hpp"
#include "matroid.hpp"
#include "symmetry.hpp"

namespace matsym {

struct CircuitClass {
  CanonicalMask canon;
  std::pair<int, int> signature;
  int edge_count = 0;
  bool transpose_distinct = false;

  const Mask& mask() const { return canon.mask; }
  const BigInt& aut_order() const { return canon.aut_order; }
};

struct SignatureBounds {
  MaskKind kind = MaskKind::Bipartite;
  int k_min = 1, k_max = 0;
  std::vector<int> l_min, l_max;  // indexed by k; symmetric kinds use l = k
  int min_row_degree = 1, min_col_degree = 1;
  bool loops = false;

  bool contains(int k, int l) const {
    if (k < k_min || k > k_max) return false;
    return l >= l_min[k] && l <= l_max[k];
  }
  std::vector<std::pair<int, int>> signatures() const {
    std::vector<std::pair<int, int>> out;
    for (int k = k_min; k <= k_max; ++k)
      for (int l = l_min[k]; l <= l_max[k]; ++l) out.emplace_back(k, l);
    return out;
  }
  // Keep only signatures dominated by (km, lm).
  SignatureBounds capped(int km, int lm) const {
    SignatureBounds b = *this;
    b.k_max = std::min(k_max, km);
    for (int k = 0; k < static_cast<int>(b.l_max.size()); ++k) b.l_max[k] = std::min(b.l_max[k], lm);
    return b;
  }
};

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

inline SignatureBounds signature_bounds(const ModelSpec& s) {
  SignatureBounds b;
  const int r = s.r;
  b.min_row_degree = b.min_col_degree = r + 1;
  b.k_max = s.m;
  b.l_min.assign(s.m + 1, 1);
  b.l_max.assign(s.m + 1, 0);
  switch (s.family) {
    case Family::Det:
      b.k_min = r + 1;
      for (int k = b.k_min; k <= s.m; ++k) {
        b.l_min[k] = std::max(r + 1, ceil_div(k - 1, r) + r);
        b.l_max[k] = std::min(s.n, r * (k - r) + 1);
      }
      break;
    case Family::BipRig: {
      const int c = r * (r + 1) / 2;
      b.k_min = r + 1;
      for (int k = b.k_min; k <= s.m; ++k) {
        b.l_min[k] = std::max(r + 1, ceil_div(c + k - 1, r));
        b.l_max[k] = std::min(s.n, r * k - c + 1);
      }
      break;
    }
    case Family::SymDet:
    case Family::Rig:
      b.kind = MaskKind::Symmetric;
      b.loops = s.family == Family::SymDet;
      b.k_min = s.family == Family::SymDet ? r + 1 : r + 2;
      for (int k = b.k_min; k <= s.m; ++k) b.l_min[k] = b.l_max[k] = k;
      break;
  }
  if (b.k_min > b.k_max) b.k_max = b.k_min - 1;
  return b;
}

struct EnumerationOptions {
  int threads = 1;
  std::chrono::milliseconds budget{0};  // 0 = unlimited
  const std::atomic<bool>* cancel = nullptr;
};

struct EnumerationResult {
  std::vector<CircuitClass> classes;
  std::vector<std::pair<int, int>> completed;  // signatures fully scanned
  bool partial = false;
};

inline bool class_less(const CircuitClass& a, const CircuitClass& b) {
  if (a.signature != b.signature) return a.signature < b.signature;
  if (a.edge_count != b.edge_count) return a.edge_count > b.edge_count;
  if (a.aut_order() != b.aut_order()) return a.aut_order() > b.aut_order();
  return a.mask().row_bits() < b.mask().row_bits();
}

inline CircuitClass make_class(const CanonicalMask& c) {
  return {c, c.mask.signature(), c.mask.edge_count(), transpose_distinct(c)};
}

namespace detail {

inline Mask signature_frame(MaskKind kind, int k, int l, bool loops) {
  if (kind == MaskKind::Bipartite) return Mask::complete(k, l);
  Mask m = Mask::symmetric(k);
  for (int i = 0; i < k; ++i)
    for (int j = loops ? i : i + 1; j < k; ++j) m.set(i, j);
  return m;
}

}  // namespace detail

// Scans one signature; returns false when interrupted.
inline bool enumerate_signature(const RankOracle& o, const SignatureBounds& b, int k, int l,
                                std::vector<CircuitClass>& out, const std::function<bool()>& stop) {
  const ModelSpec& s = o.spec();
  Mask frame = detail::signature_frame(b.kind, k, l, b.loops);
  int ceiling = o.rank(to_edge_set(s, frame)) + 1;
  int floor = b.kind == MaskKind::Bipartite ? std::max(k * b.min_row_degree, l * b.min_col_degree)
                                            : (k * b.min_row_degree + 1) / 2;
  bool interrupted = false;
  for (int e = std::min(ceiling, frame.edge_count()); e >= floor && !interrupted; --e) {
    RepresentativeQuery q;
    q.kind = b.kind;
    q.rows = k;
    q.cols = l;
    q.min_edges = q.max_edges = e;
    q.min_row_degree = b.min_row_degree;
    q.min_col_degree = b.min_col_degree;
    q.loops = b.loops;
    representatives(q, [&](const CanonicalMask& c) {
      if (interrupted) return;
      if (stop()) {
        interrupted = true;
        return;
      }
      EdgeSet set = to_edge_set(s, c.mask);
      if (o.is_circuit(set)) out.push_back(make_class(c));
    });
  }
  return !interrupted;
}

inline EnumerationResult enumerate_circuit_classes(const RankOracle& o, const SignatureBounds& b,
                                                   const EnumerationOptions& opt = {}) {
  const auto sigs = b.signatures();
  for (auto [k, l] : sigs)
    if (k > o.spec().m || l > o.spec().n) throw std::invalid_argument("oracle ground set smaller than bounds");
  const auto start = std::chrono::steady_clock::now();
  std::atomic<bool> expired{false};
  auto stop = [&]() {
    if (opt.cancel && opt.cancel->load()) return true;
    if (opt.budget.count() > 0 && std::chrono::steady_clock::now() - start > opt.budget) expired = true;
    return expired.load();
  };

  std::vector<std::vector<CircuitClass>> found(sigs.size());
  std::vector<char> done(sigs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < sigs.size();) {
      if (stop()) continue;
      done[i] = enumerate_signature(o, b, sigs[i].first, sigs[i].second, found[i], stop);
    }
  };
  int nt = std::max(1, opt.threads);
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EnumerationResult res;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    if (done[i])
      res.completed.push_back(sigs[i]);
    else
      res.partial = true;
    for (auto& c : found[i]) res.classes.push_back(std::move(c));
  }
  std::sort(res.classes.begin(), res.classes.end(), class_less);
  return res;
}

enum class Verdict { Independent, DependentNotCircuit, Circuit };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Independent: return "independent";
    case Verdict::DependentNotCircuit: return "dependent-not-circuit";
    case Verdict::Circuit: return "circuit";
  }
  return "?";
}

struct Classification {
  Verdict verdict = Verdict::Independent;
  std::optional<CircuitClass> cls;
};

inline Classification classify(const RankOracle& o, const EdgeSet& s) {
  if (o.is_independent(s)) return {Verdict::Independent, std::nullopt};
  if (!o.is_circuit(s)) return {Verdict::DependentNotCircuit, std::nullopt};
  return {Verdict::Circuit, make_class(canonical_form(to_mask(o.spec(), s).compact()))};
}

// Re-checks every class against freshly seeded oracles; returns the failures.
inline std::vector<CircuitClass> reverify(const std::vector<CircuitClass>& classes, const ModelSpec& spec,
                                          const std::vector<std::uint64_t>& seeds, OracleConfig base = {}) {
  std::vector<CircuitClass> bad;
  std::vector<std::unique_ptr<RankOracle>> oracles;
  for (auto sd : seeds) {
    base.seed = sd;
    oracles.push_back(std::make_unique<RankOracle>(spec, base));
  }
  for (const auto& c : classes) {
    for (const auto& o : oracles) {
      if (!o->is_circuit(to_edge_set(spec, c.mask()))) {
        bad.push_back(c);
        break;
      }
    }
  }
  return bad;
}

}  // namespace matsym
