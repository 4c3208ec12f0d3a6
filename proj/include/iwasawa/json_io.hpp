#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwasawa/admissible.hpp"
#include "iwasawa/coleman.hpp"
#include "iwasawa/euler.hpp"
#include "iwasawa/theta.hpp"

namespace iwa::io {

using json = nlohmann::ordered_json;

// --- reading ---------------------------------------------------------------

inline json parse(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(source, std::string("malformed JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

/// A signed integer given as a JSON integer or a decimal string.
inline i64 as_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<i64>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    i64 v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (b != e && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || b == e) throw SchemaError(path, "not a decimal integer: \"" + s + "\"");
    return v;
  }
  throw SchemaError(path, "expected an integer or a decimal string");
}

inline u64 as_uint(const json& j, const std::string& path) {
  i64 v = as_int(j, path);
  if (v < 0) throw SchemaError(path, "must be non-negative");
  return static_cast<u64>(v);
}

inline int as_small(const json& j, const std::string& path, int lo, int hi) {
  i64 v = as_int(j, path);
  if (v < lo || v > hi)
    throw SchemaError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                std::to_string(v));
  return static_cast<int>(v);
}

inline const json& array_field(const json& j, const std::string& key, const std::string& path) {
  const json& a = field(j, key, path);
  if (!a.is_array()) throw SchemaError(join(path, key), "expected an array");
  return a;
}

/// The (p, n) header shared by all ring-valued documents.
inline Modulus read_modulus(const json& j, const std::string& path = "") {
  u64 p = as_uint(field(j, "p", path), join(path, "p"));
  int n = as_small(field(j, "n", path), join(path, "n"), 1, 62);
  if (p < 3 || !is_prime(p)) throw SchemaError(join(path, "p"), "must be an odd prime");
  try {
    return Modulus(p, n);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(join(path, "n"), e.what());
  }
}

inline std::size_t checked_degree(u64 p, int level, const std::string& path) {
  if (level < 0) throw SchemaError(path, "negative level");
  try {
    return level_degree(p, level);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

inline IwasawaElem read_coeffs(const json& a, const Modulus& mod, int level, const std::string& path) {
  if (!a.is_array()) throw SchemaError(path, "expected a coefficient array");
  const std::size_t d = checked_degree(mod.p(), level, path);
  if (a.size() > d)
    throw SchemaError(path, "has " + std::to_string(a.size()) + " coefficients, level " + std::to_string(level) +
                                " allows " + std::to_string(d));
  std::vector<u64> c(d, 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod.reduce(as_int(a[i], index(path, i)));
  return IwasawaElem(mod, level, c);
}

inline PAdicScalar read_ap(const json& j, const Modulus& mod, const std::string& path = "") {
  PAdicScalar ap(mod, as_int(field(j, "ap", path), join(path, "ap")));
  if (ap.value() % mod.p() != 0) throw SchemaError(join(path, "ap"), "a_p must be divisible by p");
  return ap;
}

inline int read_level(const json& j, const std::string& key, const std::string& path, const Modulus& mod) {
  int m = as_small(field(j, key, path), join(path, key), 0, 12);
  checked_degree(mod.p(), m, join(path, key));
  return m;
}

/// {p, n, m, coeffs}
inline IwasawaElem read_elem(const json& j, const std::string& path = "") {
  Modulus mod = read_modulus(j, path);
  int m = read_level(j, "m", path, mod);
  return read_coeffs(field(j, "coeffs", path), mod, m, join(path, "coeffs"));
}

/// {p, n, ap, terms}
inline NormSeq read_norm_seq(const json& j, const std::string& path = "") {
  Modulus mod = read_modulus(j, path);
  PAdicScalar ap = read_ap(j, mod, path);
  const json& t = array_field(j, "terms", path);
  if (t.empty()) throw SchemaError(join(path, "terms"), "needs at least one term");
  checked_degree(mod.p(), static_cast<int>(t.size()) - 1, join(path, "terms"));
  std::vector<IwasawaElem> terms;
  for (std::size_t m = 0; m < t.size(); ++m)
    terms.push_back(read_coeffs(t[m], mod, static_cast<int>(m), index(join(path, "terms"), m)));
  return NormSeq(ap, std::move(terms), SeqMode::Lenient);
}

/// {p, n, m, delta_order, entries: [{label: [delta, k], value}]}
inline ThetaTable read_theta_table(const json& j, const std::string& path = "") {
  ThetaTable t;
  t.mod = read_modulus(j, path);
  t.level = read_level(j, "m", path, t.mod);
  t.delta_order = as_small(field(j, "delta_order", path), join(path, "delta_order"), 1, 1 << 16);
  const json& e = array_field(j, "entries", path);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string ep = index(join(path, "entries"), i);
    const json& label = field(e[i], "label", ep);
    if (!label.is_array() || label.size() != 2) throw SchemaError(join(ep, "label"), "expected [delta_idx, gamma_exp]");
    int d = as_small(label[0], join(ep, "label") + "[0]", 0, t.delta_order - 1);
    u64 k = as_uint(label[1], join(ep, "label") + "[1]");
    if (k >= level_degree(t.mod.p(), t.level)) throw SchemaError(join(ep, "label") + "[1]", "gamma exponent out of range");
    u64 v = t.mod.reduce(as_int(field(e[i], "value", ep), join(ep, "value")));
    if (!t.values.emplace(std::make_pair(d, k), v).second) throw SchemaError(join(ep, "label"), "duplicate label");
  }
  t.validate();
  return t;
}

/// {p, n, ap, horizon, rows: [[c1, c2], ...], witnesses: {d0: [w1, w2], cor_d1: [w1, w2]}}
inline QSystemModel read_qsystem(const json& j, const std::string& path = "") {
  Modulus mod = read_modulus(j, path);
  PAdicScalar ap = read_ap(j, mod, path);
  int M = read_level(j, "horizon", path, mod);
  const json& rows = array_field(j, "rows", path);
  if (rows.size() != static_cast<std::size_t>(M + 1))
    throw SchemaError(join(path, "rows"), "expected " + std::to_string(M + 1) + " rows");
  QSystemModel model{ap, {}, {}};
  for (std::size_t m = 0; m < rows.size(); ++m) {
    const std::string rp = index(join(path, "rows"), m);
    if (!rows[m].is_array() || rows[m].size() != 2) throw SchemaError(rp, "expected a pair of coefficient arrays");
    model.rows.push_back({read_coeffs(rows[m][0], mod, static_cast<int>(m), rp + "[0]"),
                          read_coeffs(rows[m][1], mod, static_cast<int>(m), rp + "[1]")});
  }
  const std::string wp = join(path, "witnesses");
  const json& w = field(j, "witnesses", path);
  for (const char* key : {"d0", "cor_d1"}) {
    const json& a = field(w, key, wp);
    if (!a.is_array() || a.size() != 2) throw SchemaError(join(wp, key), "expected two values");
    for (int i = 0; i < 2; ++i) {
      u64 v = mod.reduce(as_int(a[i], index(join(wp, key), i)));
      (std::string(key) == "d0" ? model.witnesses[i].d0 : model.witnesses[i].cor_d1) = v;
    }
  }
  return model;
}

/// {N0, entries: {"2": -2, ...}, note}
inline EigenTable read_eigen_table(const json& j, const std::string& path = "") {
  EigenTable t;
  t.N0 = as_uint(field(j, "N0", path), join(path, "N0"));
  const json& e = field(j, "entries", path);
  if (!e.is_object()) throw SchemaError(join(path, "entries"), "expected an object keyed by primes");
  for (const auto& [key, val] : e.items()) {
    const std::string kp = join(join(path, "entries"), key);
    u64 l = as_uint(json(key), kp);
    t.entries[l] = as_int(val, kp);
  }
  if (auto it = j.find("note"); it != j.end() && it->is_string()) t.note = it->get<std::string>();
  t.validate();
  return t;
}

/// {p, n, ap, rank, levels: [[coeffs of coordinate 0, ...], ...]}
inline CoordSeq read_coord_seq(const json& j, const std::string& path = "") {
  Modulus mod = read_modulus(j, path);
  PAdicScalar ap = read_ap(j, mod, path);
  std::size_t r = as_small(field(j, "rank", path), join(path, "rank"), 1, 1 << 12);
  const json& lv = array_field(j, "levels", path);
  if (lv.empty()) throw SchemaError(join(path, "levels"), "needs at least one level");
  checked_degree(mod.p(), static_cast<int>(lv.size()) - 1, join(path, "levels"));
  CoordSeq s{ap, {}, true};
  for (std::size_t m = 0; m < lv.size(); ++m) {
    const std::string lp = index(join(path, "levels"), m);
    if (!lv[m].is_array() || lv[m].size() != r)
      throw SchemaError(lp, "expected " + std::to_string(r) + " coordinates");
    std::vector<IwasawaElem> row;
    for (std::size_t i = 0; i < r; ++i) row.push_back(read_coeffs(lv[m][i], mod, static_cast<int>(m), index(lp, i)));
    s.coords.push_back(std::move(row));
  }
  if (auto it = j.find("basis_compatible"); it != j.end() && it->is_boolean()) s.basis_compatible = it->get<bool>();
  return s;
}

/// {kind: "partial" | "v", p, n, m, row: [coeffs, ...], note}
inline Functional read_functional(const json& j, const std::string& path = "") {
  Modulus mod = read_modulus(j, path);
  int m = read_level(j, "m", path, mod);
  Functional f;
  const json& k = field(j, "kind", path);
  if (k == "partial")
    f.kind = FunctionalKind::Partial;
  else if (k == "v")
    f.kind = FunctionalKind::V;
  else
    throw SchemaError(join(path, "kind"), "expected \"partial\" or \"v\"");
  const json& row = array_field(j, "row", path);
  if (row.empty()) throw SchemaError(join(path, "row"), "needs at least one entry");
  for (std::size_t i = 0; i < row.size(); ++i) f.row.push_back(read_coeffs(row[i], mod, m, index(join(path, "row"), i)));
  if (auto it = j.find("note"); it != j.end() && it->is_string()) f.note = it->get<std::string>();
  return f;
}

/// {sharp: coeffs, flat: coeffs} at a given ring and level
inline ElemPair read_pair(const json& j, const Modulus& mod, int level, const std::string& path) {
  return {read_coeffs(field(j, "sharp", path), mod, level, join(path, "sharp")),
          read_coeffs(field(j, "flat", path), mod, level, join(path, "flat"))};
}

inline GammaUnit read_gamma_unit(const json& j, const std::string& path) {
  return {as_uint(field(j, "c", path), join(path, "c")), as_int(field(j, "k", path), join(path, "k"))};
}

// --- writing -----------------------------------------------------------------

inline std::string dec(u64 v) { return std::to_string(v); }
inline std::string dec(i64 v) { return std::to_string(v); }
inline std::string dec(int v) { return std::to_string(v); }

inline json coeffs(const IwasawaElem& x) {
  json a = json::array();
  for (u64 c : x.coeffs()) a.push_back(dec(c));
  return a;
}

inline json coeffs(const ZpPoly& f) {
  json a = json::array();
  for (u64 c : f.coeffs()) a.push_back(dec(c));
  return a;
}

inline json write_elem(const IwasawaElem& x) {
  return {{"p", dec(x.p())}, {"n", dec(x.precision())}, {"m", dec(x.level())}, {"coeffs", coeffs(x)}};
}

inline json write_norm_seq(const NormSeq& s) {
  json t = json::array();
  for (const auto& x : s.terms()) t.push_back(coeffs(x));
  return {{"p", dec(s.p())}, {"n", dec(s.precision())}, {"ap", dec(s.ap().value())}, {"terms", t}};
}

inline json write_pair(const ElemPair& v) { return {{"sharp", coeffs(v.x)}, {"flat", coeffs(v.y)}}; }

inline json write_qsystem(const QSystemModel& q) {
  json rows = json::array();
  for (const auto& r : q.rows) rows.push_back(json::array({coeffs(r.x), coeffs(r.y)}));
  return {{"p", dec(q.ap.p())},
          {"n", dec(q.ap.precision())},
          {"ap", dec(q.ap.value())},
          {"horizon", dec(q.horizon())},
          {"rows", rows},
          {"witnesses",
           {{"d0", json::array({dec(q.witnesses[0].d0), dec(q.witnesses[1].d0)})},
            {"cor_d1", json::array({dec(q.witnesses[0].cor_d1), dec(q.witnesses[1].cor_d1)})}}}};
}

inline json write_eigen_table(const EigenTable& t) {
  json e = json::object();
  for (const auto& [l, a] : t.entries) e[dec(l)] = dec(a);
  return {{"N0", dec(t.N0)}, {"entries", e}, {"note", t.note}};
}

inline json write_coord_seq(const CoordSeq& s) {
  json lv = json::array();
  for (const auto& level : s.coords) {
    json row = json::array();
    for (const auto& x : level) row.push_back(coeffs(x));
    lv.push_back(row);
  }
  return {{"p", dec(s.ap.p())},           {"n", dec(s.ap.precision())}, {"ap", dec(s.ap.value())},
          {"rank", dec(static_cast<u64>(s.rank()))}, {"levels", lv}, {"basis_compatible", s.basis_compatible}};
}

inline json write_functional(const Functional& f) {
  json row = json::array();
  for (const auto& x : f.row) row.push_back(coeffs(x));
  const IwasawaElem& x0 = f.row.at(0);
  return {{"kind", to_string(f.kind)}, {"p", dec(x0.p())}, {"n", dec(x0.precision())},
          {"m", dec(x0.level())},      {"row", row},         {"note", f.note}};
}

inline json write_error(const std::string& kind, const std::string& message, const std::string& path = "") {
  json e = {{"error", {{"kind", kind}, {"message", message}}}};
  if (!path.empty()) e["error"]["path"] = path;
  return e;
}

}  // namespace iwa::io
