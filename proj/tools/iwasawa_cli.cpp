#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwasawa.hpp"
#include "iwasawa/json_io.hpp"
#include "iwasawa/selftest.hpp"

using namespace iwa;
using io::json;

namespace {

enum ExitCode { kOk = 0, kSchema = 2, kContract = 3, kPrecision = 4 };

/// A report plus the exit code it should produce.
struct Outcome {
  json report;
  int code = kOk;
};

void require_working_precision(int N, int n, int M) {
  if (N < n + M + 2)
    throw PrecisionExhausted("working precision N = " + std::to_string(N) + " is below n + M + 2 = " +
                             std::to_string(n + M + 2));
}

json checks_json(const std::vector<std::pair<std::string, bool>>& checks) {
  json c = json::object();
  for (const auto& [k, v] : checks) c[k] = v;
  return c;
}

bool all_ok(const json& checks) {
  for (const auto& [k, v] : checks.items())
    if (v.is_boolean() && !v.get<bool>()) return false;
  return true;
}

std::vector<i64> parse_curve(const std::string& s) {
  std::vector<i64> a;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) a.push_back(io::as_int(json(tok), "curve"));
  if (a.size() != 5) throw SchemaError("curve", "expected five comma-separated coefficients a1,a2,a3,a4,a6");
  return a;
}

json quad_json(const ScaledQuadElem& x) {
  return {{"level", io::dec(x.level())},
          {"denom_exp", io::dec(x.denom_exp())},
          {"effective_precision", io::dec(x.effective_precision())},
          {"u", io::coeffs(x.body().u())},
          {"v", io::coeffs(x.body().v())}};
}

json defect_json(const std::vector<std::size_t>& pos) {
  json a = json::array();
  for (auto i : pos) a.push_back(io::dec(static_cast<u64>(i)));
  return a;
}

// --- subcommands -----------------------------------------------------------

struct RingArgs {
  u64 p = 3;
  int n = 3, m = 1, j = 0;
  std::string kind, op, elem;
};

Outcome run_ring(const RingArgs& a) {
  Modulus mod(a.p, a.n);
  json out = {{"p", io::dec(a.p)}, {"n", io::dec(a.n)}, {"m", io::dec(a.m)}};
  if (!a.op.empty()) {
    if (a.elem.empty()) throw SchemaError("elem", "--op needs --elem FILE");
    IwasawaElem x = io::read_elem(io::read_file(a.elem));
    out = io::write_elem(x);
    out["op"] = a.op;
    if (a.op == "norm") {
      out["result"] = io::write_elem(norm(x));
    } else if (a.op == "involute") {
      out["result"] = io::write_elem(involute(x));
    } else if (a.op == "eval-char") {
      ZpPoly v = eval_char(x, a.j);
      out["j"] = io::dec(a.j);
      out["result"] = {{"coeffs", io::coeffs(v)}, {"poly", v.to_string()}};
    } else if (a.op == "project") {
      out["result"] = io::write_elem(project(x));
    }
    return {out};
  }
  StructPoly s;
  if (a.kind == "omega")
    s = omega(mod, a.m);
  else if (a.kind == "phi")
    s = phi(mod, a.m);
  else if (a.kind == "omega_plus" || a.kind == "omega_minus")
    s = omega_pm(mod, a.m, a.kind == "omega_plus" ? 1 : -1, true);
  else
    s = {a.kind == "tilde_plus" ? StructKind::TildePlus : StructKind::TildeMinus, a.m,
         omega_tilde_poly(mod, a.m, a.kind == "tilde_plus" ? 1 : -1)};
  out["kind"] = to_string(s.kind);
  out["coeffs"] = io::coeffs(s.poly);
  out["poly"] = s.poly.to_string();
  return {out};
}

Outcome run_decompose(const std::string& input) {
  NormSeq seq = io::read_norm_seq(io::read_file(input));
  const int M = seq.horizon();
  if (auto bad = verify_norm_relation(seq))
    throw ContractViolation("norm relation fails at index " + std::to_string(*bad));
  auto d = decompose(seq);
  const Modulus& mod = seq.modulus();
  ElemPair img = apply_H(seq.ap(), M, d.as_pair());
  auto oracle = oracle_decompose(seq);
  const u64 a = seq.ap().value(), c0 = seq[0].constant_term(), c1 = seq[1].constant_term();
  json checks = checks_json({{"norm_relation", true},
                             {"round_trip", img.x == seq[M] && img.y == seq.second_row(M)},
                             {"oracle", oracle && d.kernel->contains(*oracle - d.as_pair())},
                             {"mod_x", d.sharp.constant_term() == c0 && d.flat.constant_term() == mod.sub(c1, mod.mul(a, c0))}});
  json out = {{"p", io::dec(seq.p())},
              {"n", io::dec(seq.precision())},
              {"ap", io::dec(a)},
              {"horizon", io::dec(M)},
              {"sharp", io::coeffs(d.sharp)},
              {"flat", io::coeffs(d.flat)},
              {"kernel_rank", io::dec(static_cast<u64>(d.kernel->rank()))},
              {"kernel_log_size", io::dec(static_cast<i64>(d.kernel->log_size()))},
              {"checks", checks}};
  return {out, all_ok(checks) ? kOk : kContract};
}

struct LogArgs {
  u64 p = 3;
  i64 ap = 0;
  int m = 1, N = 0, n = 1;
  std::optional<std::size_t> D;
};

Outcome run_logmatrix(const LogArgs& a) {
  require_working_precision(a.N, a.n, a.m);
  PAdicScalar ap(Modulus(a.p, a.N), a.ap);
  if (ap.value() % a.p) throw SchemaError("ap", "a_p must be divisible by p");
  ScaledMat2 M = mat_M(ap, a.m, a.N, a.D);
  auto t = x_truncated(M);
  ElemMat defect = convergence_defect(ap, a.m, a.N);
  std::vector<std::size_t> pos;
  std::size_t off = 0;
  for (const IwasawaElem* x : {&defect.a, &defect.b, &defect.c, &defect.d}) {
    auto c = x->coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) pos.push_back(off + i);
    off += c.size();
  }
  json out = {{"p", io::dec(a.p)},
              {"ap", io::dec(ap.value())},
              {"m", io::dec(a.m)},
              {"N", io::dec(a.N)},
              {"denominator_exp", io::dec(M.e)},
              {"precision", io::dec(M.precision())},
              {"effective_precision", io::dec(M.effective_precision())},
              {"entries", {{"a", io::coeffs(t.a)}, {"b", io::coeffs(t.b)}, {"c", io::coeffs(t.c)}, {"d", io::coeffs(t.d)}}},
              {"convergence", {{"zero", pos.empty()}, {"positions", defect_json(pos)}}}};
  if (a.D) out["x_precision"] = io::dec(static_cast<u64>(*a.D));
  return {out, pos.empty() ? kOk : kContract};
}

Outcome run_pstab(const std::string& input, int n, const std::string& which) {
  NormSeq seq = io::read_norm_seq(io::read_file(input));
  require_working_precision(seq.precision(), n, seq.horizon());
  auto roots = quad_roots(seq.ap());
  json out = {{"p", io::dec(seq.p())}, {"N", io::dec(seq.precision())}, {"n", io::dec(n)}, {"ap", io::dec(seq.ap().value())}};
  std::optional<StabSeq> sa, sb;
  if (which != "beta") sa = pstabilize(seq, roots.alpha, n);
  if (which != "alpha") sb = pstabilize(seq, roots.beta, n);
  for (auto [name, s] : {std::pair{"alpha", &sa}, std::pair{"beta", &sb}}) {
    if (!*s) continue;
    json terms = json::array();
    for (const auto& t : (*s)->terms) terms.push_back(quad_json(t));
    out[name] = terms;
  }
  int code = kOk;
  if (sa && sb) {
    json checks = json::array();
    for (int m = 0; m <= seq.horizon(); ++m) {
      auto id = verify_stab_identity(seq, *sa, *sb, m);
      ElemPair sf = m == 0 ? ElemPair{seq[0], seq.second_row(0)} : decompose(seq.truncate(m), false).as_pair();
      auto lc = linear_combo_check(sf, *sa, *sb, m);
      checks.push_back({{"level", io::dec(m)}, {"stab_identity", id.ok}, {"linear_combo", lc.ok}});
      if (!id.ok || !lc.ok) code = kContract;
    }
    out["checks"] = checks;
  }
  return {out, code};
}

Outcome run_theta(const std::vector<std::string>& inputs, std::optional<i64> ap) {
  json elems = json::array();
  std::vector<IwasawaElem> seq;
  for (const auto& f : inputs) {
    ThetaTable t = io::read_theta_table(io::read_file(f));
    IwasawaElem th = assemble(t);
    json e = io::write_elem(th);
    e["lp_product"] = io::coeffs(lp_product(th));
    elems.push_back(e);
    seq.push_back(th);
  }
  json out = {{"theta", elems}};
  int code = kOk;
  if (ap && seq.size() > 1) {
    PAdicScalar a(seq[0].modulus(), *ap);
    for (std::size_t m = 0; m < seq.size(); ++m)
      if (seq[m].level() != static_cast<int>(m) || seq[m].modulus() != seq[0].modulus())
        throw SchemaError("input", "tables for the norm check must be given for levels 0, 1, ... in order");
    auto bad = check_theta_norm(seq, a);
    out["norm_relation"] = {{"ok", !bad}};
    if (bad) {
      out["norm_relation"]["index"] = io::dec(*bad);
      code = kContract;
    }
  }
  return {out, code};
}

Outcome run_mock(const std::string& input) {
  QSystemModel q = io::read_qsystem(io::read_file(input));
  auto rep = qsystem_check(q);
  json out = io::write_qsystem(q);
  out["qsystem"] = {{"ok", rep.ok},
                    {"condition1", rep.condition1},
                    {"condition2", rep.condition2},
                    {"condition3", rep.condition3},
                    {"condition4", rep.condition4},
                    {"witnesses_consistent", rep.witnesses_consistent},
                    {"violated", rep.violated}};
  if (!rep.ok) return {out, kContract};
  auto cp = coleman_sharp_flat(q);
  const Modulus& mod = q.modulus();
  json rank_one = json::array();
  bool kr = true;
  for (int m = 0; m <= q.horizon(); ++m) {
    bool s = kernel_rank_one_check(cp.sharp, m), f = kernel_rank_one_check(cp.flat, m);
    rank_one.push_back({{"level", io::dec(m)}, {"sharp", s}, {"flat", f}});
    kr = kr && s && f;
  }
  bool modx = true;
  if (q.horizon() >= 1)
    for (int i = 0; i < 2; ++i) {
      u64 c0 = (i == 0 ? q.rows[0].x : q.rows[0].y).constant_term();
      u64 c1 = (i == 0 ? q.rows[1].x : q.rows[1].y).constant_term();
      modx = modx && (i == 0 ? cp.sharp.x : cp.sharp.y).constant_term() == c0 &&
             (i == 0 ? cp.flat.x : cp.flat.y).constant_term() == mod.sub(c1, mod.mul(q.ap.value(), c0));
    }
  out["sharp"] = json::array({io::coeffs(cp.sharp.x), io::coeffs(cp.sharp.y)});
  out["flat"] = json::array({io::coeffs(cp.flat.x), io::coeffs(cp.flat.y)});
  json checks = checks_json({{"sharp_surjective", surjectivity_check(cp.sharp)},
                             {"flat_surjective", surjectivity_check(cp.flat)},
                             {"kernel_rank_one", kr},
                             {"mod_x", modx}});
  out["checks"] = checks;
  out["kernel_rank_one"] = rank_one;
  return {out, all_ok(checks) ? kOk : kContract};
}

struct AdmArgs {
  u64 p = 5, N0 = 0, bound = 200;
  int n = 1;
  i64 dk = -8;
  std::string table, curve;
  std::optional<u64> ell;
};

EigenTable load_table(const AdmArgs& a) {
  if (!a.table.empty()) return io::read_eigen_table(io::read_file(a.table));
  if (a.curve.empty()) throw SchemaError("table", "give --table FILE or --curve a1,a2,a3,a4,a6");
  if (a.N0 == 0) throw SchemaError("N0", "--curve needs the conductor --N0");
  auto c = parse_curve(a.curve);
  WeierstrassCurve E{{c[0], c[1], c[2], c[3], c[4]}};
  return eigen_table_from_curve(E, a.N0, std::max<u64>(a.bound, a.ell.value_or(0)), "naive point counting");
}

json report_json(const AdmissibleReport& r, u64 p) {
  json eps = json::array(), frob = json::array();
  for (int e : r.epsilons) {
    eps.push_back(io::dec(e));
    if (r.admissible()) {
      auto f = frobenius_eigs(r.ell, e, p, r.n);
      frob.push_back({{"epsilon", io::dec(e)},
                      {"eigenvalues", json::array({io::dec(f.unit_root), io::dec(f.ell_root)})},
                      {"ell_squared", io::dec(f.ell_squared)}});
    }
  }
  json out = {{"ell", io::dec(r.ell)},
              {"a_ell", io::dec(r.a_ell)},
              {"admissible", r.admissible()},
              {"checks", {{"i", r.checks[0]}, {"ii", r.checks[1]}, {"iii", r.checks[2]}, {"iv", r.checks[3]}}},
              {"epsilons", eps}};
  if (r.admissible()) out["frobenius"] = frob;
  return out;
}

Outcome run_admissible(const AdmArgs& a) {
  EigenTable t = load_table(a);
  json out = {{"p", io::dec(a.p)}, {"n", io::dec(a.n)}, {"dk", io::dec(a.dk)}, {"N0", io::dec(t.N0)}};
  if (a.ell) {
    auto it = t.entries.find(*a.ell);
    if (it == t.entries.end()) throw SchemaError("entries", "table has no a_l for l = " + std::to_string(*a.ell));
    out["report"] = report_json(is_admissible(*a.ell, it->second, a.p, a.n, t.N0, a.dk), a.p);
    return {out};
  }
  json list = json::array();
  for (const auto& r : scan(t, a.p, a.n, a.dk, a.bound)) list.push_back(report_json(r, a.p));
  out["bound"] = io::dec(a.bound);
  out["admissible"] = list;
  return {out};
}

Outcome run_eigentable(const AdmArgs& a) {
  AdmArgs b = a;
  b.table.clear();
  return {io::write_eigen_table(load_table(b))};
}

json decomposition_json(const VectorDecomposition& d) {
  json s = json::array(), f = json::array();
  for (const auto& x : d.sharp) s.push_back(io::coeffs(x));
  for (const auto& x : d.flat) f.push_back(io::coeffs(x));
  return {{"level", io::dec(d.level)}, {"sharp", s}, {"flat", f}};
}

json reciprocity_json(const ReciprocityReport& r) {
  json out = {{"ok", r.ok}, {"side", r.side}, {"positions", defect_json(r.positions)}, {"detail", r.detail}};
  if (r.unit) out["unit"] = io::coeffs(*r.unit);
  return out;
}

Outcome run_euler(const std::string& mode, const std::string& input) {
  json j = io::read_file(input);
  if (mode == "decompose") {
    auto d = vector_decompose(io::read_coord_seq(j));
    return {decomposition_json(d)};
  }
  if (mode == "check-rec1") {
    auto d = vector_decompose(io::read_coord_seq(io::field(j, "coords", ""), "coords"));
    Functional f = io::read_functional(io::field(j, "functional", ""), "functional");
    const Modulus& mod = d.ap.modulus();
    ElemPair L = io::read_pair(io::field(j, "L", ""), mod, d.level, "L");
    std::optional<IwasawaElem> unit;
    if (auto it = j.find("unit"); it != j.end()) unit = io::read_coeffs(*it, mod, d.level, "unit");
    auto r = first_reciprocity_check(d, f, L, unit);
    return {{{"check", "first"}, {"report", reciprocity_json(r)}}, r.ok ? kOk : kContract};
  }
  auto d1 = vector_decompose(io::read_coord_seq(io::field(j, "coords1", ""), "coords1"));
  auto d2 = vector_decompose(io::read_coord_seq(io::field(j, "coords2", ""), "coords2"));
  Functional v2 = io::read_functional(io::field(j, "v_l2", ""), "v_l2");
  Functional v1 = io::read_functional(io::field(j, "v_l1", ""), "v_l1");
  ElemPair Lh = io::read_pair(io::field(j, "L_h", ""), d1.ap.modulus(), d1.level, "L_h");
  GammaUnit u1 = io::read_gamma_unit(io::field(j, "u1", ""), "u1");
  GammaUnit u2 = io::read_gamma_unit(io::field(j, "u2", ""), "u2");
  auto r = second_reciprocity_check(d1, v2, d2, v1, Lh, u1, u2);
  return {{{"check", "second"}, {"report", reciprocity_json(r)}}, r.ok ? kOk : kContract};
}

Outcome run_selftest(std::optional<u64> p, std::optional<int> n, std::optional<int> M, u64 seed) {
  selftest::Config c;
  c.seed = seed;
  if (p) c.primes = {*p};
  if (n) c.max_n = *n;
  if (M) c.max_M = *M;
  if (c.max_n < 1 || c.max_M < 1) throw SchemaError("n", "n and M must be >= 1");
  json results = json::array();
  bool all = true;
  for (const auto& r : selftest::run_all(c)) {
    results.push_back({{"id", io::dec(r.id)},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"trials", io::dec(static_cast<i64>(r.trials))},
                       {"detail", r.detail}});
    all = all && r.pass;
  }
  json primes = json::array();
  for (u64 q : c.primes) primes.push_back(io::dec(q));
  json out = {{"seed", io::dec(seed)},
              {"primes", primes},
              {"max_n", io::dec(c.max_n)},
              {"max_M", io::dec(c.max_M)},
              {"results", results},
              {"all_pass", all}};
  return {out, all ? kOk : kContract};
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw SchemaError(path, "cannot write output file");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Iwasawa-algebra toolkit for non-ordinary primes"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON report to this file");
  std::function<Outcome()> action;

  RingArgs ring;
  auto* r = app.add_subcommand("ring", "Structural polynomials and ring maps of Lambda_{m,n}");
  r->add_option("--p", ring.p, "Odd prime")->required();
  r->add_option("--n", ring.n, "Coefficients mod p^n")->capture_default_str();
  r->add_option("--m", ring.m, "Level");
  auto* kinds = r->add_option_group("kind");
  for (const char* k : {"omega", "phi", "omega-plus", "omega-minus", "tilde-plus", "tilde-minus"}) {
    std::string key = k;
    std::replace(key.begin(), key.end(), '-', '_');
    kinds->add_flag_callback(std::string("--") + k, [&ring, key] { ring.kind = key; });
  }
  r->add_option("--op", ring.op, "Ring map applied to --elem")->check(CLI::IsMember({"norm", "involute", "eval-char", "project"}));
  r->add_option("--elem", ring.elem, "IwasawaElem JSON file");
  r->add_option("--j", ring.j, "Character level for eval-char");
  r->callback([&] {
    if (ring.kind.empty() && ring.op.empty()) throw CLI::ValidationError("ring", "choose --omega, --phi, ... or --op");
    action = [&] { return run_ring(ring); };
  });

  std::string input;
  auto* d = app.add_subcommand("decompose", "Sharp/flat decomposition of a norm-compatible sequence");
  d->add_option("--input", input, "NormSeq JSON file")->required();
  d->callback([&] { action = [&] { return run_decompose(input); }; });

  LogArgs la;
  std::size_t D = 0;
  auto* lm = app.add_subcommand("logmatrix", "Finite-level logarithm matrix and its convergence defect");
  lm->add_option("--p", la.p)->required();
  lm->add_option("--ap", la.ap)->required();
  lm->add_option("--m", la.m)->required();
  lm->add_option("--N", la.N, "Working precision")->required();
  lm->add_option("--n", la.n, "Target precision")->capture_default_str();
  auto* dopt = lm->add_option("--D", D, "Report entries mod X^D");
  lm->callback([&] {
    if (*dopt) la.D = D;
    action = [&] { return run_logmatrix(la); };
  });

  int target_n = 1;
  std::string which = "both";
  auto* ps = app.add_subcommand("pstab", "p-stabilized sequences and their identities");
  ps->add_option("--input", input, "NormSeq JSON file at working precision N")->required();
  ps->add_option("--n", target_n, "Target precision")->capture_default_str();
  ps->add_option("--lambda", which)->check(CLI::IsMember({"alpha", "beta", "both"}))->capture_default_str();
  ps->callback([&] { action = [&] { return run_pstab(input, target_n, which); }; });

  std::vector<std::string> tables;
  i64 theta_ap = 0;
  auto* th = app.add_subcommand("theta", "Assemble theta elements from value tables");
  th->add_option("--input", tables, "ThetaTable JSON files, one per level")->required();
  auto* thap = th->add_option("--ap", theta_ap, "Check the norm relation across the given levels");
  th->callback([&] {
    std::optional<i64> a;
    if (*thap) a = theta_ap;
    action = [&, a] { return run_theta(tables, a); };
  });

  auto* mk = app.add_subcommand("mock", "Check a Q-system model and its Coleman functionals");
  mk->add_option("--input", input, "QSystemModel JSON file")->required();
  mk->callback([&] { action = [&] { return run_mock(input); }; });

  AdmArgs adm;
  u64 ell = 0;
  auto* ad = app.add_subcommand("admissible", "Classify or scan n-admissible primes");
  ad->add_option("--p", adm.p)->required();
  ad->add_option("--n", adm.n)->capture_default_str();
  ad->add_option("--dk", adm.dk, "Discriminant of K")->capture_default_str();
  ad->add_option("--bound", adm.bound)->capture_default_str();
  ad->add_option("--table", adm.table, "EigenTable JSON file");
  ad->add_option("--curve", adm.curve, "Weierstrass coefficients a1,a2,a3,a4,a6");
  ad->add_option("--N0", adm.N0, "Conductor for --curve");
  auto* ellopt = ad->add_option("--ell", ell, "Classify a single prime");
  ad->callback([&] {
    if (*ellopt) adm.ell = ell;
    action = [&] { return run_admissible(adm); };
  });

  auto* et = app.add_subcommand("eigentable", "Write an EigenTable by naive point counting");
  et->add_option("--curve", adm.curve, "Weierstrass coefficients a1,a2,a3,a4,a6")->required();
  et->add_option("--N0", adm.N0, "Conductor")->required();
  et->add_option("--bound", adm.bound)->capture_default_str();
  et->callback([&] { action = [&] { return run_eigentable(adm); }; });

  auto* eu = app.add_subcommand("euler", "Coordinate decompositions and reciprocity checks");
  eu->require_subcommand(1);
  for (const char* mode : {"decompose", "check-rec1", "check-rec2"}) {
    auto* s = eu->add_subcommand(mode);
    s->add_option("--input", input, "Input JSON file")->required();
    std::string m = mode;
    s->callback([&, m] { action = [&, m] { return run_euler(m, input); }; });
  }

  u64 st_p = 0, seed = 7;
  int st_n = 0, st_M = 0;
  auto* st = app.add_subcommand("selftest", "Run the ten property suites");
  auto* o_p = st->add_option("--p", st_p);
  auto* o_n = st->add_option("--n", st_n);
  auto* o_M = st->add_option("--M", st_M);
  st->add_option("--seed", seed)->capture_default_str();
  st->callback([&] {
    std::optional<u64> p;
    std::optional<int> n, M;
    if (*o_p) p = st_p;
    if (*o_n) n = st_n;
    if (*o_M) M = st_M;
    action = [&, p, n, M] { return run_selftest(p, n, M, seed); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kSchema;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& msg, const std::string& path = "") {
    std::cerr << "error: " << msg << "\n";
    try {
      emit(io::write_error(kind, msg, path), output);
    } catch (const std::exception&) {
      emit(io::write_error(kind, msg, path), "");
    }
    return code;
  };
  try {
    Outcome o = action();
    emit(o.report, output);
    return o.code;
  } catch (const SchemaError& e) {
    return fail(kSchema, "schema", e.what(), e.path());
  } catch (const PrecisionExhausted& e) {
    return fail(kPrecision, "precision", e.what());
  } catch (const ContractViolation& e) {
    return fail(kContract, "contract", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kSchema, "schema", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}
