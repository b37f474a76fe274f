#include "posetbar/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "posetbar/error.hpp"

namespace posetbar::io {

namespace {

std::string name_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw ParseError("expected an element name, got " + j.dump());
}

ElementId element(const FinitePoset& p, const Json& j) {
  const auto name = name_of(j);
  auto id = p.find(name);
  if (!id) throw ParseError("unknown element '" + name + "'");
  return *id;
}

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) throw ParseError(std::string("unexpected field \"") + k + "\" in " + what);
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, PrimeField field, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": matrix must be an array of rows");
  if (rows == 0 || cols == 0) {
    // empty matrices may be written as [] or as rows of []
    for (const auto& row : j)
      if (!row.is_array() || !row.empty()) throw ParseError(what + ": expected an empty matrix");
    if (!j.empty() && j.size() != rows) throw ParseError(what + ": wrong number of rows");
    return Matrix(rows, cols, field);
  }
  if (j.size() != rows) throw ParseError(what + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::vector<std::int64_t> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw ParseError(what + ": expected rows of length " + std::to_string(cols));
    for (const auto& v : row) entries.push_back(integer(v, "matrix entry"));
  }
  return Matrix::from_rows(field, rows, cols, entries);
}

Support support_from_names(const FinitePoset& p, const Json& j) {
  if (!j.is_array()) throw ParseError("interval must be a list of element names");
  Support s;
  for (const auto& e : j) s.push_back(element(p, e));
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ParseError("repeated element in interval");
  return s;
}

Json support_to_names(const FinitePoset& p, const Support& s) {
  Json out = Json::array();
  for (auto x : s) out.push_back(p.name(x));
  return out;
}

// Top-row-first 0/1 matrix on a grid.
Support support_from_matrix(const FinitePoset& p, const Json& j) {
  const auto shape = p.grid_shape();
  if (!shape) throw ParseError("dimension-vector matrices need a grid poset");
  if (!j.is_array() || j.size() != shape->rows) throw ParseError("interval matrix must have one row per grid row");
  Support s;
  for (std::size_t r = 0; r < shape->rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != shape->cols) throw ParseError("interval matrix row has the wrong length");
    const auto grid_row = shape->rows - r;  // 1-based, top row first
    for (std::size_t c = 0; c < shape->cols; ++c) {
      const auto v = integer(row[c], "interval matrix entry");
      if (v != 0 && v != 1) throw ParseError("interval matrix entries must be 0 or 1");
      if (v == 1) s.push_back(static_cast<ElementId>((grid_row - 1) * shape->cols + c));
    }
  }
  std::sort(s.begin(), s.end());
  return s;
}

RepPtr sum_or_zero(const std::vector<RepPtr>& parts, const PosetPtr& poset, PrimeField field) {
  if (parts.empty()) return share(Representation::zero(poset, field));
  if (parts.size() == 1) return parts.front();
  return share(direct_sum(parts));
}

RepPtr interval_rep(const PosetPtr& poset, const Support& s, PrimeField field) {
  if (!poset->is_interval(s)) throw DomainError("support " + render_support(*poset, s) + " is not an interval");
  return share(interval_module(poset, s, field));
}

Json values_block(const FinitePoset& p, const PairRecord& r) {
  Json v;
  v["f_first"] = value_to_json(p, r.f_first);
  v["f_second"] = value_to_json(p, r.f_second);
  v["g_first"] = value_to_json(p, r.g_first);
  v["g_second"] = value_to_json(p, r.g_second);
  return v;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
}

PosetPtr poset_from_json(const Json& j) {
  if (j.is_object() && j.contains("grid")) {
    only_keys(j, {"grid"}, "poset");
    const auto& g = j.at("grid");
    if (!g.is_array() || g.size() != 2) throw ParseError("\"grid\" must be [m, n]");
    const auto m = integer(g[0], "grid rows"), n = integer(g[1], "grid columns");
    if (m <= 0 || n <= 0) throw DomainError("grid dimensions must be positive");
    return make_poset(FinitePoset::grid(static_cast<std::size_t>(m), static_cast<std::size_t>(n)));
  }
  if (j.is_object() && j.contains("chain")) {
    only_keys(j, {"chain"}, "poset");
    const auto n = integer(j.at("chain"), "chain length");
    if (n <= 0) throw DomainError("chain length must be positive");
    return make_poset(FinitePoset::chain(static_cast<std::size_t>(n)));
  }
  only_keys(j, {"elements", "covers"}, "poset");
  const auto& el = field_of(j, "elements");
  if (!el.is_array()) throw ParseError("\"elements\" must be an array");
  std::vector<std::string> names;
  for (const auto& e : el) names.push_back(name_of(e));
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    if (!j.at("covers").is_array()) throw ParseError("\"covers\" must be an array");
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw ParseError("each cover must be [lower, upper]");
      covers.emplace_back(name_of(c[0]), name_of(c[1]));
    }
  }
  return make_poset(FinitePoset::from_hasse(std::move(names), covers));
}

Json poset_to_json(const FinitePoset& p) {
  Json out;
  if (auto g = p.grid_shape()) {
    if (p == FinitePoset::grid(g->rows, g->cols)) {
      out["grid"] = {g->rows, g->cols};
      return out;
    }
    if (g->rows == 1 && p == FinitePoset::chain(g->cols)) {
      out["chain"] = g->cols;
      return out;
    }
  }
  out["elements"] = p.names();
  Json covers = Json::array();
  for (const auto& c : p.covers()) covers.push_back({p.name(c.lower), p.name(c.upper)});
  out["covers"] = std::move(covers);
  return out;
}

RepPtr rep_from_json(const Json& j, PosetPtr poset, std::optional<PrimeField> field) {
  only_keys(j, {"poset", "p", "dims", "maps", "interval_sum", "interval", "summands"}, "representation");
  if (j.contains("poset")) {
    auto own = poset_from_json(j.at("poset"));
    if (poset && !(*own == *poset)) throw DomainError("representation poset differs from the expected poset");
    if (!poset) poset = own;
  }
  if (!poset) throw ParseError("representation has no \"poset\"");
  if (j.contains("p")) {
    const auto p = integer(j.at("p"), "\"p\"");
    if (p < 2 || p >= (std::int64_t{1} << 31)) throw DomainError("modulus " + std::to_string(p) + " is out of range");
    PrimeField own(static_cast<std::uint32_t>(p));
    if (field && !(own == *field))
      throw DomainError("representation is over GF(" + std::to_string(p) + "), expected GF(" +
                        std::to_string(field->modulus()) + ")");
    field = own;
  }
  if (!field) field = PrimeField(2);
  const auto& P = *poset;

  std::optional<RepPtr> assembled;
  auto set_assembled = [&](RepPtr r) {
    if (assembled) throw ParseError("use only one of \"summands\", \"interval_sum\" and \"interval\"");
    assembled = std::move(r);
  };
  if (j.contains("summands")) {
    if (!j.at("summands").is_array()) throw ParseError("\"summands\" must be an array");
    std::vector<RepPtr> parts;
    for (const auto& s : j.at("summands")) parts.push_back(rep_from_json(s, poset, field));
    set_assembled(parts.empty() ? share(Representation::zero(poset, *field)) : share(direct_sum(parts)));
  }
  if (j.contains("interval_sum")) {
    if (!j.at("interval_sum").is_array()) throw ParseError("\"interval_sum\" must be an array of matrices");
    std::vector<RepPtr> parts;
    for (const auto& mtx : j.at("interval_sum")) parts.push_back(interval_rep(poset, support_from_matrix(P, mtx), *field));
    set_assembled(sum_or_zero(parts, poset, *field));
  }
  if (j.contains("interval")) set_assembled(interval_rep(poset, support_from_names(P, j.at("interval")), *field));

  if (!j.contains("dims")) {
    if (j.contains("maps")) throw ParseError("\"maps\" given without \"dims\"");
    if (!assembled) throw ParseError("representation needs \"dims\", \"summands\", \"interval_sum\" or \"interval\"");
    return *assembled;
  }

  std::vector<std::size_t> dims(P.size(), 0);
  const auto& d = j.at("dims");
  if (d.is_object()) {
    for (const auto& [name, v] : d.items()) {
      auto id = P.find(name);
      if (!id) throw ParseError("unknown element '" + name + "' in \"dims\"");
      const auto n = integer(v, "dimension");
      if (n < 0) throw ParseError("negative dimension at " + name);
      dims[*id] = static_cast<std::size_t>(n);
    }
  } else if (d.is_array()) {
    if (d.size() != P.size()) throw ParseError("\"dims\" array must list every element");
    for (std::size_t x = 0; x < d.size(); ++x) {
      const auto n = integer(d[x], "dimension");
      if (n < 0) throw ParseError("negative dimension");
      dims[x] = static_cast<std::size_t>(n);
    }
  } else {
    throw ParseError("\"dims\" must be an object or an array");
  }

  std::vector<Matrix> maps;
  for (const auto& c : P.covers()) maps.emplace_back(dims[c.upper], dims[c.lower], *field);
  if (j.contains("maps")) {
    const auto& mj = j.at("maps");
    if (!mj.is_object()) throw ParseError("\"maps\" must be an object keyed by \"x<y\"");
    for (const auto& [key, rows] : mj.items()) {
      const auto lt = key.find('<');
      if (lt == std::string::npos) throw ParseError("map key '" + key + "' is not of the form x<y");
      auto lo = P.find(key.substr(0, lt)), hi = P.find(key.substr(lt + 1));
      if (!lo || !hi) throw ParseError("map key '" + key + "' names an unknown element");
      auto e = P.cover_index(*lo, *hi);
      if (!e) throw DomainError("map key '" + key + "' is not a cover relation");
      maps[*e] = matrix_from_json(rows, dims[*hi], dims[*lo], *field, "map " + key);
    }
  }
  Representation m(poset, *field, std::move(dims), std::move(maps));
  if (assembled) {
    if (!(*assembled)->same_data(m)) throw ParseError("\"summands\" do not match the explicit \"dims\"/\"maps\"");
    return *assembled;
  }
  return share(std::move(m));
}

Json rep_to_json(const Representation& m, bool with_header) {
  const auto& p = *m.poset();
  Json out;
  if (with_header) {
    out["poset"] = poset_to_json(p);
    out["p"] = m.field().modulus();
  }
  Json dims = Json::object();
  for (ElementId x = 0; x < p.size(); ++x) dims[p.name(x)] = m.dim(x);
  out["dims"] = std::move(dims);
  Json maps = Json::object();
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto& a = m.map(e);
    if (a.empty() || a.is_zero()) continue;
    const auto& c = p.covers()[e];
    maps[p.name(c.lower) + "<" + p.name(c.upper)] = matrix_to_json(a);
  }
  out["maps"] = std::move(maps);
  if (!m.blocks().empty()) {
    Json parts = Json::array();
    for (const auto& b : m.blocks()) parts.push_back(rep_to_json(*b, false));
    out["summands"] = std::move(parts);
  }
  return out;
}

RepPtr read_rep_file(const std::filesystem::path& path, PosetPtr poset, std::optional<PrimeField> field) {
  auto j = read_json_file(path);
  if (j.is_object() && j.contains("poset") && j.at("poset").is_string()) {
    auto where = path.parent_path() / j.at("poset").get<std::string>();
    j["poset"] = read_json_file(where);
  }
  try {
    return rep_from_json(j, std::move(poset), field);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json key_to_json(const FinitePoset& p, Keyspace k, const Key& key) {
  switch (k) {
    case Keyspace::elements: return p.name(key.at(0));
    case Keyspace::segments: return Json::array({p.name(key.at(0)), p.name(key.at(1))});
    case Keyspace::intervals: return support_to_names(p, key);
  }
  return nullptr;
}

Key key_from_json(const FinitePoset& p, Keyspace k, const Json& j) {
  switch (k) {
    case Keyspace::elements: return {element(p, j)};
    case Keyspace::segments: {
      if (!j.is_array() || j.size() != 2) throw ParseError("segment key must be [x, y]");
      Key key{element(p, j[0]), element(p, j[1])};
      if (!p.leq(key[0], key[1])) throw DomainError("segment key needs x <= y");
      return key;
    }
    case Keyspace::intervals: return support_from_names(p, j);
  }
  return {};
}

Json value_to_json(const FinitePoset& p, const InvariantValue& v) {
  Json out;
  out["keyspace"] = to_string(v.keyspace());
  Json entries = Json::array();
  for (const auto& [key, coeff] : v.entries()) {
    Json e;
    e["key"] = key_to_json(p, v.keyspace(), key);
    e["coeff"] = coeff;
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

InvariantValue value_from_json(const FinitePoset& p, const Json& j) {
  only_keys(j, {"keyspace", "entries"}, "invariant value");
  const auto& ks = field_of(j, "keyspace");
  if (!ks.is_string()) throw ParseError("\"keyspace\" must be a string");
  InvariantValue v(keyspace_from_string(ks.get<std::string>()));
  const auto& entries = field_of(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
  for (const auto& e : entries) {
    only_keys(e, {"key", "coeff"}, "entry");
    v.add(key_from_json(p, v.keyspace(), field_of(e, "key")), integer(field_of(e, "coeff"), "coeff"));
  }
  return v;
}

Json resolution_to_json(const Workspace& ws, const Resolution& r) {
  const auto& p = *ws.poset();
  Json out;
  out["target"] = rep_to_json(*r.target);
  out["length"] = r.length();
  Json terms = Json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const auto& t = r.terms[i];
    Json term;
    term["degree"] = i;
    Json summands = Json::array();
    for (std::size_t s = 0; s < t.summands.size();) {
      std::size_t e = s;
      while (e < t.summands.size() && t.summands[e] == t.summands[s]) ++e;
      Json entry;
      entry["interval"] = support_to_names(p, ws.catalog()[t.summands[s]].support);
      entry["mult"] = e - s;
      summands.push_back(std::move(entry));
      s = e;
    }
    term["summands"] = std::move(summands);
    Json diff = Json::object();
    for (ElementId x = 0; x < p.size(); ++x) {
      const auto& c = t.differential.components[x];
      if (c.empty()) continue;
      diff[p.name(x)] = matrix_to_json(c);
    }
    term["differential"] = std::move(diff);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

Resolution resolution_from_json(const Workspace& ws, const Json& j) {
  only_keys(j, {"target", "length", "terms"}, "resolution");
  const auto& p = *ws.poset();
  Resolution r{rep_from_json(field_of(j, "target"), ws.poset(), ws.field()), {}};
  const auto& terms = field_of(j, "terms");
  if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
  RepPtr previous = r.target;
  for (const auto& tj : terms) {
    only_keys(tj, {"degree", "summands", "differential"}, "resolution term");
    ResolutionTerm t;
    t.multiplicities = InvariantValue(Keyspace::intervals);
    std::vector<RepPtr> parts;
    for (const auto& s : field_of(tj, "summands")) {
      only_keys(s, {"interval", "mult"}, "summand");
      const auto support = support_from_names(p, field_of(s, "interval"));
      const auto index = ws.catalog().index_of(support);
      const auto mult = integer(field_of(s, "mult"), "mult");
      if (mult <= 0) throw ParseError("summand multiplicity must be positive");
      t.multiplicities.add(support, mult);
      for (std::int64_t k = 0; k < mult; ++k) {
        t.summands.push_back(index);
        parts.push_back(ws.interval_rep(index));
      }
    }
    t.module = parts.empty() ? share(Representation::zero(ws.poset(), ws.field())) : share(direct_sum(parts));
    t.differential = Morphism{t.module, previous, {}};
    const auto& diff = field_of(tj, "differential");
    for (ElementId x = 0; x < p.size(); ++x) {
      const auto rows = previous->dim(x), cols = t.module->dim(x);
      if (diff.contains(p.name(x)))
        t.differential.components.push_back(matrix_from_json(diff.at(p.name(x)), rows, cols, ws.field(), "differential"));
      else
        t.differential.components.emplace_back(rows, cols, ws.field());
    }
    if (r.terms.empty()) t.syzygy = r.target;
    previous = t.module;
    r.terms.push_back(std::move(t));
  }
  return r;
}

Json certificate_to_json(const Certificate& c) {
  Json out;
  out["kind"] = c.kind;
  Json pairs = Json::array();
  for (const auto& r : c.pairs) {
    const auto& p = *r.first->poset();
    Json pj;
    pj["f"] = r.f.name();
    pj["g"] = r.g.name();
    pj["first"] = rep_to_json(*r.first);
    pj["second"] = rep_to_json(*r.second);
    pj["values"] = values_block(p, r);
    pj["f_separates"] = r.f_separates;
    pj["g_separates"] = r.g_separates;
    pj["verdict"] = r.verdict;
    pairs.push_back(std::move(pj));
  }
  out["pairs"] = std::move(pairs);
  return out;
}

Certificate certificate_from_json(const Workspace& ws, const Json& j) {
  only_keys(j, {"kind", "pairs"}, "certificate");
  const auto& p = *ws.poset();
  Certificate c;
  c.kind = field_of(j, "kind").get<std::string>();
  for (const auto& pj : field_of(j, "pairs")) {
    only_keys(pj, {"f", "g", "first", "second", "values", "f_separates", "g_separates", "verdict"}, "pair");
    const auto f = InvariantHandle::parse(field_of(pj, "f").get<std::string>());
    const auto g = InvariantHandle::parse(field_of(pj, "g").get<std::string>());
    const auto& v = field_of(pj, "values");
    c.pairs.push_back(PairRecord{f, g, rep_from_json(field_of(pj, "first"), ws.poset(), ws.field()),
                                 rep_from_json(field_of(pj, "second"), ws.poset(), ws.field()),
                                 value_from_json(p, field_of(v, "f_first")), value_from_json(p, field_of(v, "f_second")),
                                 value_from_json(p, field_of(v, "g_first")), value_from_json(p, field_of(v, "g_second")),
                                 field_of(pj, "f_separates").get<bool>(), field_of(pj, "g_separates").get<bool>(),
                                 field_of(pj, "verdict").get<std::string>()});
  }
  return c;
}

Json ksp_to_json(const FinitePoset& p, PrimeField field, const KspElement& x) {
  Json out;
  out["poset"] = poset_to_json(p);
  out["p"] = field.modulus();
  Json terms = Json::array();
  for (const auto& t : x.terms()) {
    Json tj;
    tj["coeff"] = t.coeff;
    tj["rep"] = rep_to_json(*t.rep, false);
    terms.push_back(std::move(tj));
  }
  out["terms"] = std::move(terms);
  return out;
}

KspElement ksp_from_json(const Json& j, const PosetPtr& poset, PrimeField field) {
  only_keys(j, {"poset", "p", "terms"}, "split Grothendieck element");
  if (j.contains("poset") && !(*poset_from_json(j.at("poset")) == *poset))
    throw DomainError("element lives over a different poset");
  if (j.contains("p") && integer(j.at("p"), "\"p\"") != field.modulus())
    throw DomainError("element lives over a different field");
  std::vector<KspTerm> terms;
  for (const auto& tj : field_of(j, "terms")) {
    only_keys(tj, {"coeff", "rep"}, "term");
    terms.push_back({integer(field_of(tj, "coeff"), "coeff"), rep_from_json(field_of(tj, "rep"), poset, field)});
  }
  return KspElement(std::move(terms));
}

CompressionSystem compression_from_json(const Workspace& ws, const Json& j) {
  only_keys(j, {"entries"}, "compression system");
  const auto& p = *ws.poset();
  auto xi = total_compression(ws);
  std::set<std::size_t> seen;
  for (const auto& ej : field_of(j, "entries")) {
    only_keys(ej, {"interval", "probe", "map"}, "compression entry");
    const auto index = ws.catalog().index_of(support_from_names(p, field_of(ej, "interval")));
    if (!seen.insert(index).second) throw ParseError("interval listed twice in the compression system");
    auto probe = poset_from_json(field_of(ej, "probe"));
    const auto& mj = field_of(ej, "map");
    if (!mj.is_object()) throw ParseError("\"map\" must be an object from probe elements to poset elements");
    std::vector<std::optional<ElementId>> image(probe->size());
    for (const auto& [from, to] : mj.items()) {
      auto q = probe->find(from);
      if (!q) throw ParseError("unknown probe element '" + from + "'");
      image[*q] = element(p, to);
    }
    std::vector<ElementId> map;
    for (ElementId q = 0; q < probe->size(); ++q) {
      if (!image[q]) throw ParseError("compression map is undefined at probe element " + probe->name(q));
      map.push_back(*image[q]);
    }
    xi.entries[index] = {probe, std::move(map)};
  }
  return xi;
}

Json compression_to_json(const Workspace& ws, const CompressionSystem& xi) {
  const auto& p = *ws.poset();
  Json entries = Json::array();
  for (std::size_t i = 0; i < xi.entries.size(); ++i) {
    const auto& e = xi.entries[i];
    Json ej;
    ej["interval"] = support_to_names(p, ws.catalog()[i].support);
    ej["probe"] = poset_to_json(*e.probe_poset);
    Json map = Json::object();
    for (ElementId q = 0; q < e.map.size(); ++q) map[e.probe_poset->name(q)] = p.name(e.map[q]);
    ej["map"] = std::move(map);
    entries.push_back(std::move(ej));
  }
  Json out;
  out["entries"] = std::move(entries);
  return out;
}

std::string render_support(const FinitePoset& p, const Support& s) {
  std::string out;
  if (auto g = p.grid_shape()) {
    std::vector<bool> in(p.size(), false);
    for (auto x : s) in[x] = true;
    out = "[";
    for (std::size_t r = g->rows; r >= 1; --r) {
      for (std::size_t c = 0; c < g->cols; ++c) {
        if (c) out += ' ';
        out += in[(r - 1) * g->cols + c] ? '1' : '0';
      }
      if (r > 1) out += ';';
    }
    return out + "]";
  }
  out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + p.name(s[i]);
  return out + "}";
}

std::string render_key(const FinitePoset& p, Keyspace k, const Key& key) {
  switch (k) {
    case Keyspace::elements: return p.name(key.at(0));
    case Keyspace::segments: return p.name(key.at(0)) + " <= " + p.name(key.at(1));
    case Keyspace::intervals: return render_support(p, key);
  }
  return "";
}

std::string render_value(const FinitePoset& p, const InvariantValue& v) {
  if (v.keyspace() == Keyspace::elements) {
    if (auto g = p.grid_shape()) {
      std::string out = "[";
      for (std::size_t r = g->rows; r >= 1; --r) {
        for (std::size_t c = 0; c < g->cols; ++c) {
          if (c) out += ' ';
          out += std::to_string(v.at({static_cast<ElementId>((r - 1) * g->cols + c)}));
        }
        if (r > 1) out += ';';
      }
      return out + "]\n";
    }
  }
  if (v.is_zero()) return "0\n";
  std::string out;
  for (const auto& [key, coeff] : v.entries()) {
    auto c = std::to_string(coeff);
    if (coeff > 0) c = "+" + c;
    out += c + std::string(c.size() < 4 ? 4 - c.size() : 1, ' ') + render_key(p, v.keyspace(), key) + "\n";
  }
  return out;
}

std::string render_rep(const Representation& m) {
  const auto& p = *m.poset();
  std::string out = "dims " + render_value(p, dim_vector(m));
  for (std::size_t e = 0; e < p.covers().size(); ++e) {
    const auto& a = m.map(e);
    if (a.empty()) continue;
    const auto& c = p.covers()[e];
    out += p.name(c.lower) + " < " + p.name(c.upper) + ": " + a.to_string() + "\n";
  }
  return out;
}

std::string render_ksp(const FinitePoset& p, const KspElement& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& t : x.terms()) {
    if (!out.empty()) out += ' ';
    out += (t.coeff > 0 ? "+" : "") + std::to_string(t.coeff) + ' ';
    if (auto s = as_interval_module(*t.rep)) {
      out += render_support(p, *s);
    } else {
      auto d = render_value(p, dim_vector(*t.rep));
      if (!d.empty() && d.back() == '\n') d.pop_back();
      out += "M<" + d + ">";
    }
  }
  return out;
}

std::string render_resolution(const Workspace& ws, const Resolution& r) {
  const auto& p = *ws.poset();
  auto term_text = [&](const ResolutionTerm& t) {
    std::string s;
    for (const auto& [key, coeff] : t.multiplicities.entries()) {
      if (!s.empty()) s += " ⊕ ";
      s += render_support(p, key);
      if (coeff > 1) s += "^" + std::to_string(coeff);
    }
    return s.empty() ? std::string("0") : s;
  };
  std::string target = "M";
  if (r.target->is_zero())
    target = "0";
  else if (auto s = as_interval_module(*r.target))
    target = render_support(p, *s);
  std::string line = "0";
  for (std::size_t i = r.terms.size(); i-- > 0;) line += " → " + term_text(r.terms[i]);
  line += " → " + target + " → 0\n";
  std::string out = line + "length " + std::to_string(r.length()) + "\n";
  for (std::size_t i = 0; i < r.terms.size(); ++i)
    out += "β_" + std::to_string(i) + ":\n" + render_value(p, betti(r, i));
  out += "χ:\n" + render_value(p, euler_char(r));
  return out;
}

std::string render_certificate(const FinitePoset& p, const Certificate& c) {
  std::string out = c.kind + " certificate\n";
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    const auto& r = c.pairs[i];
    out += "pair " + std::to_string(i) + ": " + r.verdict + "\n";
    out += "  first:\n" + render_rep(*r.first) + "  second:\n" + render_rep(*r.second);
    out += "  " + r.f.name() + " difference:\n" + render_value(p, r.f_first - r.f_second);
    out += "  " + r.g.name() + " difference:\n" + render_value(p, r.g_first - r.g_second);
  }
  return out;
}

}  // namespace posetbar::io
