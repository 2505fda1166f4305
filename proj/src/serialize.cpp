// Scalars are JSON strings, matrices arrays of row arrays, structured
// objects keyed documents; the key set alone decides the kind.  Parsing is
// strict about shape (uniform row lengths, subspace bases matching their
// ambient, transition blocks matching the dims) and leaves semantic
// validation to the validators.

#include "modhodge/serialize.hpp"

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace modhodge {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

int int_key(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) fail("bad integer key '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail("bad integer key '" + s + "'");
  }
}

Rat rat_of(const std::string& s) {
  if (s.empty()) fail("empty rational");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '/')
      fail("bad rational '" + s + "'");
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    fail("bad rational '" + s + "'");
  }
}

Scalar scalar_of(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected an entry string");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(where + ": " + e.what());
  }
}

json matrix_json(const KMatrix& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

KMatrix matrix_of(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected a matrix (array of rows)");
  size_t rows = j.size(), cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) fail(where + ": row 0 is not an array");
    cols = j[0].size();
  }
  KMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(where + ": row " + std::to_string(i) + " has " + std::to_string(j[i].size()) +
           " entries, expected " + std::to_string(cols));
    for (size_t c = 0; c < cols; ++c)
      m.at(i, c) = scalar_of(j[i][c], where + " (" + std::to_string(i) + "," +
                                          std::to_string(c) + ")");
  }
  return m;
}

Subspace subspace_of(const json& j, size_t ambient, const std::string& where) {
  KMatrix m = matrix_of(j, where);
  if (m.rows() != ambient && m.cols() > 0)
    fail(where + ": basis has " + std::to_string(m.rows()) + " rows, ambient is " +
         std::to_string(ambient));
  if (m.cols() == 0) return Subspace::zero(ambient);
  return Subspace::from_cols(ambient, m);
}

long int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<long>();
}

json mhs_json(const MHS& h) {
  json o = json::object();
  o["rank"] = h.lattice.free_rank;
  json tor = json::array();
  for (auto& f : h.lattice.factors) tor.push_back(f.get_str());
  o["torsion"] = std::move(tor);
  o["tate_scale"] = h.tate_scale;
  json w = json::object();
  for (auto& [k, s] : h.weight) w[std::to_string(k)] = matrix_json(s.basis());
  o["weight"] = std::move(w);
  json f = json::object();
  for (auto& [k, s] : h.hodge) f[std::to_string(k)] = matrix_json(s.basis());
  o["hodge"] = std::move(f);
  o["polarizable"] = h.polarizable;
  return o;
}

MHS mhs_of(const json& j) {
  MHS h;
  h.lattice.free_rank = static_cast<size_t>(int_of(j.at("rank"), "rank"));
  if (j.contains("torsion"))
    for (auto& t : j.at("torsion")) {
      if (!t.is_string()) fail("torsion: expected factor strings");
      try {
        h.lattice.factors.emplace_back(t.get<std::string>());
      } catch (const std::exception&) {
        fail("torsion: bad integer '" + t.get<std::string>() + "'");
      }
    }
  h.tate_scale = static_cast<int>(j.value("tate_scale", 0));
  for (auto& [key, val] : j.value("weight", json::object()).items())
    h.weight.emplace(int_key(key), subspace_of(val, h.ambient(), "weight " + key));
  for (auto& [key, val] : j.value("hodge", json::object()).items())
    h.hodge.emplace(int_key(key), subspace_of(val, h.ambient(), "hodge " + key));
  h.polarizable = j.value("polarizable", false);
  h.normalize();
  return h;
}

json vecseq_json(const VecSeq& v) {
  json o = json::object();
  json d = json::object();
  for (auto& [k, n] : v.dims) d[std::to_string(k)] = n;
  o["dims"] = std::move(d);
  json tr = json::object();
  for (auto& [k, m] : v.tr)
    if (!m.is_zero()) tr[std::to_string(k)] = matrix_json(m);
  o["transitions"] = std::move(tr);
  return o;
}

VecSeq vecseq_of(const json& j, const std::string& where) {
  VecSeq v;
  for (auto& [key, val] : j.value("dims", json::object()).items()) {
    long n = int_of(val, where + " dims " + key);
    if (n <= 0) fail(where + " dims " + key + ": must be positive");
    v.dims[int_key(key)] = static_cast<int>(n);
  }
  for (auto& [key, val] : j.value("transitions", json::object()).items()) {
    int k = int_key(key);
    KMatrix m = matrix_of(val, where + " transition " + key);
    if (m.rows() != static_cast<size_t>(v.dim(k - 1)) ||
        m.cols() != static_cast<size_t>(v.dim(k)))
      fail(where + " transition " + key + ": shape does not match dims");
    if (!m.is_zero()) v.tr[k] = std::move(m);
  }
  return v;
}

json mhsm_json(const MHSMObject& x) {
  json o = json::object();
  o["mhs"] = mhs_json(x.mhs);
  o["add"] = vecseq_json(x.add);
  o["inf"] = vecseq_json(x.inf);
  json f = json::object();
  for (auto& [k, s] : x.filt) f[std::to_string(k)] = matrix_json(s.basis());
  o["filtration"] = std::move(f);
  o["tails"] = json{{"fmin", x.fmin}, {"fmax", x.fmax}};
  return o;
}

MHSMObject mhsm_of(const json& j) {
  MHSMObject x;
  x.mhs = mhs_of(j.at("mhs"));
  x.add = vecseq_of(j.value("add", json::object()), "add");
  x.inf = vecseq_of(j.value("inf", json::object()), "inf");
  if (j.contains("tails")) {
    x.fmin = static_cast<int>(int_of(j.at("tails").at("fmin"), "tails fmin"));
    x.fmax = static_cast<int>(int_of(j.at("tails").at("fmax"), "tails fmax"));
  }
  for (auto& [key, val] : j.value("filtration", json::object()).items()) {
    int k = int_key(key);
    x.filt.emplace(k, subspace_of(val, x.ambient(k), "filtration " + key));
  }
  return x;
}

json laumon_json(const LaumonMotive& l) {
  json o = json::object();
  o["r"] = l.r;
  o["s"] = l.s;
  o["lieG_dim"] = l.lieg_dim;
  o["lieG_add"] = matrix_json(l.lieg_add.basis());
  o["lambda"] = matrix_json(l.lambda);
  o["lambda_w2"] = matrix_json(l.lambda_w2);
  o["lifts"] = matrix_json(l.lifts);
  o["lie_u_inf"] = matrix_json(l.lie_u_inf);
  return o;
}

LaumonMotive laumon_of(const json& j) {
  LaumonMotive l;
  l.r = static_cast<size_t>(int_of(j.at("r"), "r"));
  l.s = static_cast<size_t>(int_of(j.at("s"), "s"));
  l.lieg_dim = static_cast<size_t>(int_of(j.at("lieG_dim"), "lieG_dim"));
  l.lieg_add = subspace_of(j.at("lieG_add"), l.lieg_dim, "lieG_add");
  l.lambda = matrix_of(j.at("lambda"), "lambda");
  l.lambda_w2 = matrix_of(j.at("lambda_w2"), "lambda_w2");
  l.lifts = matrix_of(j.at("lifts"), "lifts");
  l.lie_u_inf = matrix_of(j.at("lie_u_inf"), "lie_u_inf");
  for (auto& [name, m] : {std::pair<const char*, const KMatrix*>{"lambda", &l.lambda},
                          {"lambda_w2", &l.lambda_w2},
                          {"lifts", &l.lifts},
                          {"lie_u_inf", &l.lie_u_inf}})
    if (m->rows() != l.lieg_dim && m->cols() > 0)
      fail(std::string(name) + ": rows do not match lieG_dim");
  if (l.lifts.cols() != l.r && l.lifts.rows() > 0) fail("lifts: columns do not match r");
  if (l.lie_u_inf.cols() != l.s && l.lie_u_inf.rows() > 0)
    fail("lie_u_inf: columns do not match s");
  return l;
}

json divisor_json(const P1Divisor& d) {
  json a = json::array();
  for (auto& [p, m] : d.pts) a.push_back(json::array({p.get_str(), m}));
  return a;
}

P1Divisor divisor_of(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of [coord, mult] pairs");
  std::vector<std::pair<Rat, int>> pts;
  for (auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string())
      fail(where + ": expected [\"p/q\", mult] pairs");
    pts.emplace_back(rat_of(e[0].get<std::string>()),
                     static_cast<int>(int_of(e[1], where + " multiplicity")));
  }
  try {
    return P1Divisor::of(std::move(pts));
  } catch (const std::exception& e) {
    fail(where + ": " + e.what());
  }
}

json triple_json(const CurveTriple& t) {
  return json{{"Y", divisor_json(t.y)}, {"Z", divisor_json(t.z)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string kind_of(const AnyObject& o) {
  switch (o.index()) {
    case 0: return "scalar";
    case 1: return "matrix";
    case 2: return "mhs";
    case 3: return "mhsm";
    case 4: return "laumon";
    default: return "triple";
  }
}

std::string serialize(const AnyObject& o) {
  switch (o.index()) {
    case 0: return dump(json(std::get<Scalar>(o).str()));
    case 1: return dump(matrix_json(std::get<KMatrix>(o)));
    case 2: return dump(mhs_json(std::get<MHS>(o)));
    case 3: return dump(mhsm_json(std::get<MHSMObject>(o)));
    case 4: return dump(laumon_json(std::get<LaumonMotive>(o)));
    default: return dump(triple_json(std::get<CurveTriple>(o)));
  }
}

AnyObject parse_object(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (j.is_string()) return scalar_of(j, "scalar");
  if (j.is_array()) return matrix_of(j, "matrix");
  if (!j.is_object()) fail("unrecognized document");
  if (j.contains("Y") || j.contains("Z"))
    return CurveTriple{divisor_of(j.value("Y", json::array()), "Y"),
                       divisor_of(j.value("Z", json::array()), "Z")};
  if (j.contains("mhs")) return mhsm_of(j);
  if (j.contains("lieG_dim")) return laumon_of(j);
  if (j.contains("rank")) return mhs_of(j);
  fail("unrecognized document: expected scalar, matrix, mhs, mhsm, laumon or triple");
}

std::string report_json(const Report& r, const std::string& status_override) {
  json o = json::object();
  o["status"] = status_override.empty() ? (r.ok() ? "pass" : "fail") : status_override;
  json checks = json::array();
  for (auto& c : r.clauses) {
    json e = json::object();
    e["name"] = c.id;
    e["level"] = c.level == Report::kNoLevel ? json() : json(c.level);
    e["ok"] = c.ok;
    e["expected"] = "pass";
    e["actual"] = c.ok ? "pass" : "fail";
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  o["checks"] = std::move(checks);
  json notes = json::array();
  for (auto& n : r.notes) notes.push_back(n);
  o["notes"] = std::move(notes);
  o["timing_ms"] = json();
  return dump(o);
}

RawDivisor parse_divisor(const std::string& text) {
  RawDivisor d;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return d;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t mult_end = pos;
    while (mult_end < s.size() && std::isdigit(static_cast<unsigned char>(s[mult_end])))
      ++mult_end;
    int mult = 1;
    if (mult_end > pos) mult = std::stoi(s.substr(pos, mult_end - pos));
    if (mult_end >= s.size() || s[mult_end] != '[')
      fail("divisor: expected '[' at position " + std::to_string(mult_end));
    size_t close = s.find(']', mult_end);
    if (close == std::string::npos) fail("divisor: unterminated '[' term");
    std::string coord = s.substr(mult_end + 1, close - mult_end - 1);
    if (coord == "inf")
      d.at_infinity += mult;
    else
      d.finite.emplace_back(rat_of(coord), mult);
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != '+') fail("divisor: expected '+' at position " + std::to_string(pos));
      ++pos;
      if (pos == s.size()) fail("divisor: trailing '+'");
    }
  }
  return d;
}

std::string divisor_str(const P1Divisor& d) {
  std::string out;
  for (auto& [p, m] : d.pts) {
    if (!out.empty()) out += "+";
    if (m != 1) out += std::to_string(m);
    out += "[" + p.get_str() + "]";
  }
  return out;
}

}  // namespace modhodge
