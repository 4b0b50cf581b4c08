#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "matsym/matsym.hpp"

namespace matsym::cli {

using Json = nlohmann::ordered_json;

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kVerification = 2,
  kHorizonCap = 3,
  kMaskParse = 4,
  kDimension = 5,
  kInterrupted = 130,
};

inline std::atomic<bool>& interrupted() {
  static std::atomic<bool> flag{false};
  return flag;
}

struct RunConfig {
  std::string model;
  std::string primes_text;
  std::vector<std::uint64_t> primes;
  int trials = 3;
  std::uint64_t seed = 1;
  bool json = false;

  OracleConfig oracle() const {
    OracleConfig c;
    c.primes = primes;
    c.trials = trials;
    c.seed = seed;
    return c;
  }
  // Seeds for the independent re-check of reported circuits.
  std::vector<std::uint64_t> recheck_seeds() const { return {seed + 7777}; }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    std::uint64_t p = 0;
    try {
      p = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("bad prime '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("bad prime '" + tok + "'");
    check_modulus(p);
    out.push_back(p);
  }
  if (out.empty()) throw UsageError("at least one prime is required");
  return out;
}

inline void finalize(RunConfig& c) {
  if (c.primes_text.empty())
    if (const char* env = std::getenv("MATSYM_PRIMES")) c.primes_text = env;
  if (c.primes_text.empty())
    c.primes.assign(kDefaultPrimes.begin(), kDefaultPrimes.end());
  else
    c.primes = parse_primes(c.primes_text);
  if (c.trials < 1) throw UsageError("trials must be >= 1");
}

inline std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  static const std::regex re(R"(^\s*(\d+)\s*,\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw UsageError(std::string("expected ") + what + " as a,b");
  return {std::stoi(m[1]), std::stoi(m[2])};
}

inline std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad index list '" + text + "'");
    }
  }
  return out;
}

inline std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw MaskParseError("cannot read mask file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

// "full" is the complete ground set; anything else is a mask file ("-" for stdin).
inline Mask load_mask(const ModelSpec& s, const std::string& arg) {
  if (arg == "full") return to_mask(s, EdgeSet::full(s.ground_size()));
  return parse_mask(read_text(arg), mask_kind(s));
}

inline std::uint64_t to_u64(const BigInt& v) { return v.convert_to<std::uint64_t>(); }

inline Json mask_json(const Mask& m) { return m.ascii_rows(); }

inline Json class_json(const CircuitClass& c) {
  Json j;
  j["signature"] = {c.signature.first, c.signature.second};
  j["mask"] = mask_json(c.mask());
  j["edge_count"] = c.edge_count;
  j["aut_order"] = to_u64(c.aut_order());
  j["transpose_distinct"] = c.transpose_distinct;
  return j;
}

inline std::string sig_text(std::pair<int, int> s) {
  return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
}

inline void print_mask(std::ostream& out, const Mask& m, const std::string& indent = "  ") {
  for (const auto& row : m.ascii_rows()) out << indent << row << '\n';
}

inline Json elem_json(GroundElem e) { return {e.i + 1, e.j + 1}; }

// rank

inline int cmd_rank(const RunConfig& c, const std::string& mask_arg, std::ostream& out) {
  ModelSpec s = parse_model(c.model);
  RankOracle o(s, c.oracle());
  Mask m = load_mask(s, mask_arg);
  EdgeSet set = to_edge_set(s, m);
  int rank = o.rank(set);
  auto cls = classify(o, set);
  int size = static_cast<int>(set.count());
  if (cls.verdict == Verdict::Circuit && !reverify({*cls.cls}, s, c.recheck_seeds(), c.oracle()).empty())
    throw VerificationFailure("circuit verdict did not survive the re-check");
  if (c.json) {
    Json j;
    j["model"] = s.to_string();
    j["size"] = size;
    j["rank"] = rank;
    j["full_rank"] = o.full_rank();
    j["independent"] = cls.verdict == Verdict::Independent;
    j["verdict"] = verdict_name(cls.verdict);
    j["defect"] = size - rank;
    if (cls.cls) j["class"] = class_json(*cls.cls);
    out << j.dump(2) << '\n';
  } else {
    out << "model " << s.to_string() << '\n'
        << "size " << size << '\n'
        << "rank " << rank << '\n'
        << "independent " << (cls.verdict == Verdict::Independent ? "yes" : "no") << '\n'
        << "verdict " << verdict_name(cls.verdict) << '\n'
        << "defect " << size - rank << '\n';
    if (cls.cls) out << "class " << sig_text(cls.cls->signature) << " aut " << cls.cls->aut_order() << '\n';
  }
  return kOk;
}

// completable

inline int cmd_completable(const RunConfig& c, const std::string& mask_arg, std::ostream& out) {
  ModelSpec s = parse_model(c.model);
  if (s.family != Family::Det && s.family != Family::SymDet)
    throw UsageError("completable needs a det or symdet model");
  RankOracle o(s, c.oracle());
  EdgeSet obs = to_edge_set(s, load_mask(s, mask_arg));
  EdgeSet cl = o.closure(obs);
  EdgeSet basis = o.basis_of(obs);
  Json entries = Json::array();
  std::ostringstream text;
  for (auto e : (cl - obs).elements()) {
    auto circ = o.fundamental_circuit(basis, e);
    if (!circ) throw VerificationFailure("closure element without a fundamental circuit");
    Mask w = to_mask(s, *circ);
    GroundElem g = o.ground()[e];
    entries.push_back({{"entry", elem_json(g)}, {"witness", mask_json(w)}});
    text << "entry (" << g.i + 1 << "," << g.j + 1 << ")\n";
    print_mask(text, w);
  }
  if (c.json) {
    Json j;
    j["model"] = s.to_string();
    j["observed"] = obs.count();
    j["rank"] = o.rank(obs);
    j["completable"] = entries;
    out << j.dump(2) << '\n';
  } else {
    out << "model " << s.to_string() << '\n'
        << "observed " << obs.count() << '\n'
        << "rank " << o.rank(obs) << '\n'
        << "completable " << entries.size() << '\n'
        << text.str();
  }
  return kOk;
}

// circuits / count

struct EnumerationRun {
  ModelSpec spec;
  EnumerationResult result;
  bool interrupted = false;
};

inline EnumerationRun run_enumeration(const RunConfig& c, const std::string& max_sig, int threads, int budget_ms) {
  ModelSpec s = parse_model(c.model);
  RankOracle o(s, c.oracle());
  SignatureBounds b = signature_bounds(s);
  if (!max_sig.empty()) {
    auto [k, l] = parse_pair(max_sig, "--max-sig");
    b = b.capped(k, l);
  }
  EnumerationOptions opt;
  opt.threads = threads;
  opt.budget = std::chrono::milliseconds(budget_ms);
  opt.cancel = &interrupted();
  EnumerationRun run{s, enumerate_circuit_classes(o, b, opt), false};
  run.interrupted = interrupted().load();
  auto bad = reverify(run.result.classes, s, c.recheck_seeds(), c.oracle());
  if (!bad.empty())
    throw VerificationFailure(std::to_string(bad.size()) + " classes failed the re-check, first at " +
                              sig_text(bad.front().signature));
  return run;
}

inline int cmd_circuits(const RunConfig& c, const std::string& max_sig, int threads, int budget_ms, std::ostream& out) {
  auto run = run_enumeration(c, max_sig, threads, budget_ms);
  const auto& r = run.result;
  if (c.json) {
    Json j;
    j["model"] = run.spec.to_string();
    j["partial"] = r.partial;
    Json done = Json::array();
    for (auto sg : r.completed) done.push_back({sg.first, sg.second});
    j["completed_signatures"] = done;
    Json arr = Json::array();
    for (const auto& cl : r.classes) arr.push_back(class_json(cl));
    j["classes"] = arr;
    out << j.dump(2) << '\n';
  } else {
    out << "model " << run.spec.to_string() << '\n';
    if (r.partial) out << "PARTIAL: enumeration stopped early; only completed signatures are exhaustive\n";
    out << "classes " << r.classes.size() << '\n';
    for (const auto& cl : r.classes) {
      out << sig_text(cl.signature) << " edges " << cl.edge_count << " aut " << cl.aut_order()
          << (cl.transpose_distinct ? " *and transpose" : "") << '\n';
      print_mask(out, cl.mask());
    }
  }
  return run.interrupted ? kInterrupted : kOk;
}

inline int cmd_count(const RunConfig& c, int threads, int budget_ms, std::ostream& out) {
  auto run = run_enumeration(c, "", threads, budget_ms);
  const ModelSpec& s = run.spec;
  CountTable t = count_classes(run.result, {s.m, s.n});
  std::optional<BigInt> total;
  if (!t.partial) total = s.bipartite() ? total_circuits(t, s.m, s.n) : total_circuits_symmetric(t, s.n);
  if (c.json) {
    Json j;
    j["model"] = s.to_string();
    j["partial"] = t.partial;
    Json rows = Json::array();
    for (const auto& [sg, e] : t.entries)
      rows.push_back({{"signature", {sg.first, sg.second}},
                      {"c", e.c},
                      {"beta_num", to_u64(boost::multiprecision::numerator(e.beta))},
                      {"beta_den", to_u64(boost::multiprecision::denominator(e.beta))}});
    j["table"] = rows;
    if (total) j["total"] = to_u64(*total);
    out << j.dump(2) << '\n';
  } else {
    out << "model " << s.to_string() << '\n';
    if (t.partial) out << "PARTIAL: table incomplete, no total reported\n";
    out << "signature  c  beta\n";
    for (const auto& [sg, e] : t.entries) out << sig_text(sg) << "  " << e.c << "  " << to_string(e.beta) << '\n';
    if (total) out << "total " << *total << '\n';
  }
  return run.interrupted ? kInterrupted : kOk;
}

// limits

struct LimitTarget {
  Family family = Family::Det;
  std::optional<int> m;
  int r = 1;
};

inline LimitTarget parse_limit_target(const std::string& text) {
  static const std::regex one(R"(^(det|biprig|symdet|rig):m(\d+):r(\d+)$)");
  static const std::regex two(R"(^(det|biprig|symdet|rig):r(\d+)$)");
  std::smatch mt;
  LimitTarget t;
  if (std::regex_match(text, mt, one)) {
    t.family = parse_family(mt[1]);
    t.m = std::stoi(mt[2]);
    t.r = std::stoi(mt[3]);
    if (!is_bipartite(t.family)) throw UsageError("symmetric families take family:rR");
  } else if (std::regex_match(text, mt, two)) {
    t.family = parse_family(mt[1]);
    t.r = std::stoi(mt[2]);
  } else {
    throw UsageError("limit target must be family:mM:rR or family:rR");
  }
  if (t.r < 1) throw UsageError("r must be >= 1");
  return t;
}

inline Json profile_json(const GrowthProfile& p) {
  Json j;
  j["family"] = family_name(p.family);
  if (!p.graph_limit()) j["m"] = p.m;
  j["r"] = p.r;
  j["delta"] = p.delta;
  j["rho"] = p.rho;
  j["kappa"] = p.kappa;
  j["alpha"] = p.alpha;
  j["free"] = p.free;
  j["jumps"] = p.jumps;
  return j;
}

inline int cmd_limits(const RunConfig& c, const std::string& target, int horizon, int cap, int grid, std::ostream& out) {
  LimitTarget t = parse_limit_target(target);
  LimitOptions opt;
  opt.initial_horizon = horizon;
  opt.horizon_cap = std::max(cap, horizon);
  opt.oracle = c.oracle();
  Json j;
  std::ostringstream text;
  if (t.m || !is_bipartite(t.family)) {
    GrowthProfile p = t.m ? growth_profile_one_sided(t.family, *t.m, t.r, opt) : growth_profile_graph(t.family, t.r, opt);
    j = profile_json(p);
    text << "family " << family_name(p.family);
    if (!p.graph_limit()) text << " m " << p.m;
    text << " r " << p.r << '\n' << "nu  delta\n";
    for (int nu = 0; nu < p.horizon(); ++nu) text << nu << "  " << p.delta[nu] << '\n';
    text << "rho " << p.rho << " kappa " << p.kappa << " alpha " << p.alpha << (p.free ? " (free)" : "") << '\n';
    text << "jumps";
    for (int v : p.jumps) text << ' ' << v;
    text << '\n';
    if (!p.graph_limit()) {
      Staircase st = staircase(p, c.oracle());
      Mask diagram = st.mask(p.horizon());
      j["staircase"] = mask_json(diagram);
      text << "staircase\n";
      print_mask(text, diagram);
      if (!p.free) {
        Mask ec = elementary_circuit(p, c.oracle());
        j["elementary_circuit"] = {ec.rows(), ec.cols()};
        text << "elementary circuit K_{" << ec.rows() << "," << ec.cols() << "}\n";
      }
    }
  } else {
    TwoSidedProfile p = two_sided_profile(t.family, t.r, grid, c.oracle());
    auto rc = realizing_circuits(p, c.oracle());
    j["family"] = family_name(p.family);
    j["r"] = p.r;
    j["grid"] = p.grid;
    Json bd = Json::array();
    for (auto [a, b] : p.boundary) bd.push_back({a, b});
    j["boundary"] = bd;
    j["rho"] = {p.rho.first, p.rho.second};
    j["kappa"] = {p.kappa.first, p.kappa.second};
    j["alpha"] = p.alpha;
    j["slices_consistent"] = p.slices_consistent;
    Json circ = Json::array();
    for (const auto& x : rc)
      circ.push_back({{"corner", {x.mu, x.nu}}, {"x_is_circuit", x.x_is_circuit}, {"circuit", mask_json(x.circuit)}});
    j["realizing_circuits"] = circ;
    text << "family " << family_name(p.family) << " r " << p.r << " grid " << p.grid << '\n' << "boundary";
    for (auto [a, b] : p.boundary) text << " (" << a << "," << b << ")";
    text << "\nrho (" << p.rho.first << "," << p.rho.second << ") kappa (" << p.kappa.first << ","
         << p.kappa.second << ") alpha " << p.alpha << '\n';
    for (const auto& x : rc) {
      text << "corner (" << x.mu << "," << x.nu << ")" << (x.x_is_circuit ? "" : " contains") << '\n';
      print_mask(text, x.circuit);
    }
  }
  if (c.json)
    out << j.dump(2) << '\n';
  else
    out << text.str();
  return kOk;
}

// move

inline int cmd_move(const RunConfig& c, const std::string& mask_arg, const std::string& edge, int t, int r, bool partial,
                    bool counterexample, std::ostream& out) {
  if (counterexample) {
    auto rep = st_move_counterexample(c.oracle());
    if (c.json) {
      Json j;
      j["base"] = mask_json(rep.base);
      j["result"] = mask_json(rep.result);
      j["edges"] = rep.edges;
      j["rank"] = rep.rank;
      j["full_rank"] = rep.full_rank;
      j["independent"] = rep.independent;
      j["basis"] = rep.basis;
      j["defect_change"] = rep.defect_change;
      out << j.dump(2) << '\n';
    } else {
      out << "(2,2)-move on K_{3,3}\n";
      print_mask(out, rep.result);
      out << "edges " << rep.edges << " rank " << rep.rank << " of " << rep.full_rank << '\n'
          << "verdict " << (rep.basis ? "basis" : rep.independent ? "independent" : "dependent") << '\n'
          << "defect change " << rep.defect_change << '\n';
    }
    return rep.basis ? kOk : kVerification;
  }
  if (mask_arg.empty() || edge.empty()) throw UsageError("move needs a mask and --edge");
  Mask base = parse_mask(read_text(mask_arg), MaskKind::Bipartite);
  auto [i, jj] = parse_pair(edge, "--edge");
  MoveSpec spec = auto_move(base, i - 1, jj - 1, t, r);
  Mask res = partial ? partial_t1_move(spec, r) : t1_move(spec, r);
  RankOracle o(ModelSpec::det(res.rows(), res.cols(), r), c.oracle());
  EdgeSet set = to_edge_set(o.spec(), res);
  bool ok;
  Json j;
  j["result"] = mask_json(res);
  j["signature"] = {res.signature().first, res.signature().second};
  std::string verdict;
  if (partial) {
    ok = unique_circuit(o, set);
    verdict = ok ? "unique-circuit" : "no-unique-circuit";
  } else {
    auto cls = classify(o, set);
    ok = cls.verdict == Verdict::Circuit && reverify({*cls.cls}, o.spec(), c.recheck_seeds(), c.oracle()).empty();
    verdict = verdict_name(cls.verdict);
    if (cls.cls) j["aut_order"] = to_u64(cls.cls->aut_order());
    j["spanned_by_basis"] = spanned_by_basis(o, set);
  }
  j["verdict"] = verdict;
  if (c.json) {
    out << j.dump(2) << '\n';
  } else {
    out << (partial ? "partial " : "") << "(" << t << ",1)-move on edge (" << i << "," << jj << ")\n";
    print_mask(out, res);
    out << "signature " << sig_text(res.signature()) << '\n' << "verdict " << verdict << '\n';
  }
  return ok ? kOk : kVerification;
}

// poly

inline int cmd_poly(const RunConfig& c, const std::string& expr, const std::string& minor, const std::string& cycle,
                    const std::string& cm, int evals, bool homogenize, std::ostream& out) {
  ModelSpec s = parse_model(c.model);
  int given = !expr.empty() + !minor.empty() + !cycle.empty() + !cm.empty();
  if (given != 1) throw UsageError("give exactly one of --expr, --minor, --cycle, --cm");
  SparsePoly f;
  if (!expr.empty()) {
    f = parse_poly(expr);
  } else if (!minor.empty()) {
    auto colon = minor.find(':');
    if (colon == std::string::npos) throw UsageError("--minor takes rows:cols");
    auto rows = parse_list(minor.substr(0, colon)), cols = parse_list(minor.substr(colon + 1));
    if (s.family == Family::BipRig) throw UsageError("minors need a det, symdet or rig model");
    if (s.family == Family::Rig) {
      f = cayley_menger_minor(rows, cols);
    } else {
      for (auto& v : rows) --v;
      for (auto& v : cols) --v;
      f = minor_polynomial(rows, cols, s.family);
    }
  } else if (!cycle.empty()) {
    f = cycle_binomial(parse_mask(read_text(cycle), mask_kind(s)));
  } else {
    auto pts = parse_list(cm);
    for (auto& v : pts) --v;
    f = cayley_menger_principal(pts);
  }
  auto rep = vanishing_report(f, s, evals, c.primes, c.seed);
  RankOracle o(s, c.oracle());
  auto sv = support_minimality_check(f, o);
  Json td = Json::object();
  std::ostringstream tds;
  for (auto [v, d] : topdeg(f)) {
    std::string name = "x_" + std::to_string(v.i + 1) + "_" + std::to_string(v.j + 1);
    td[name] = d;
    tds << ' ' << name << ':' << d;
  }
  if (c.json) {
    Json j;
    j["model"] = s.to_string();
    j["polynomial"] = to_string(f);
    j["terms"] = f.size();
    j["topdeg"] = td;
    j["evaluations"] = rep.evaluations;
    j["failures"] = rep.failures;
    j["vanishes"] = rep.ok();
    j["support"] = verdict_name(sv.verdict);
    j["support_minimal"] = sv.minimal;
    if (homogenize) j["multihomogenized"] = to_string(multihomogenize(f));
    out << j.dump(2) << '\n';
  } else {
    out << "polynomial " << to_string(f) << '\n'
        << "terms " << f.size() << '\n'
        << "topdeg" << tds.str() << '\n'
        << "vanishing " << rep.evaluations - rep.failures << "/" << rep.evaluations << '\n'
        << "support " << verdict_name(sv.verdict) << (sv.minimal ? " (minimal)" : "") << '\n';
    if (homogenize) out << "multihomogenized " << to_string(multihomogenize(f)) << '\n';
  }
  return rep.ok() ? kOk : kVerification;
}

// entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"matsym: algebraic matroids with graph symmetry"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--seed", cfg.seed, "oracle seed");
  app.add_option("--primes", cfg.primes_text, "comma-separated primes (overrides MATSYM_PRIMES)");
  app.add_option("--trials", cfg.trials, "sample points per prime");

  std::string mask_arg, max_sig, edge, target, expr, minor, cycle, cm;
  int threads = 1, budget = 0, horizon = 12, cap = 40, grid = 8, t = 1, r = 2, evals = 200;
  bool partial = false, counterexample = false, homogenize = false;

  auto* rank = app.add_subcommand("rank", "rank, independence and circuit verdict of a mask");
  rank->add_option("model", cfg.model, "family:MxNxR or family:NxR")->required();
  rank->add_option("mask", mask_arg, "mask file, '-' for stdin, or 'full'")->required();

  auto* comp = app.add_subcommand("completable", "entries determined by an observed mask");
  comp->add_option("model", cfg.model)->required();
  comp->add_option("mask", mask_arg)->required();

  auto* circ = app.add_subcommand("circuits", "enumerate circuit classes");
  circ->add_option("model", cfg.model)->required();
  circ->add_option("--max-sig", max_sig, "largest signature k,l");
  circ->add_option("--threads", threads);
  circ->add_option("--budget-ms", budget, "time budget; 0 = none");

  auto* count = app.add_subcommand("count", "class counts, beta table and total circuits");
  count->add_option("model", cfg.model)->required();
  count->add_option("--threads", threads);
  count->add_option("--budget-ms", budget);

  auto* lim = app.add_subcommand("limits", "growth functions and limit invariants");
  lim->add_option("target", target, "family:mM:rR (one-sided) or family:rR (two-sided / graph)")->required();
  lim->add_option("--horizon", horizon, "initial column horizon");
  lim->add_option("--horizon-cap", cap, "largest horizon tried");
  lim->add_option("--grid", grid, "two-sided grid size");

  auto* mv = app.add_subcommand("move", "(t,1)-moves on determinantal circuits");
  mv->add_option("mask", mask_arg, "base mask file");
  mv->add_option("--edge", edge, "edge i,j (1-based)");
  mv->add_option("--t", t);
  mv->add_option("--rank", r);
  mv->add_flag("--partial", partial, "keep the edge");
  mv->add_flag("--counterexample", counterexample, "the (2,2)-move on K_{3,3}");

  auto* poly = app.add_subcommand("poly", "polynomial checks");
  poly->add_option("model", cfg.model)->required();
  poly->add_option("--expr", expr, "polynomial text");
  poly->add_option("--minor", minor, "rows:cols, 1-based (Cayley-Menger indices for rig, 0 = border)");
  poly->add_option("--cycle", cycle, "cycle mask file");
  poly->add_option("--cm", cm, "points for a bordered Cayley-Menger minor");
  poly->add_option("--evals", evals, "evaluations per prime");
  poly->add_flag("--homogenize", homogenize);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    finalize(cfg);
    if (*rank) return cmd_rank(cfg, mask_arg, out);
    if (*comp) return cmd_completable(cfg, mask_arg, out);
    if (*circ) return cmd_circuits(cfg, max_sig, threads, budget, out);
    if (*count) return cmd_count(cfg, threads, budget, out);
    if (*lim) {
      if (!cfg.model.empty()) throw UsageError("limits takes a target, not a model");
      return cmd_limits(cfg, target, horizon, cap, grid, out);
    }
    if (*mv) return cmd_move(cfg, mask_arg, edge, t, r, partial, counterexample, out);
    if (*poly) return cmd_poly(cfg, expr, minor, cycle, cm, evals, homogenize, out);
  } catch (const MaskParseError& e) {
    err << "error: " << e.what() << '\n';
    return kMaskParse;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kDimension;
  } catch (const HorizonCapReached& e) {
    err << "error: " << e.what() << '\n';
    return kHorizonCap;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const GenericityFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerification;
  }
  return kUsage;
}

}  // namespace matsym::cli
