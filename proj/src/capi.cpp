#include "posetbar/posetbar.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "posetbar/error.hpp"
#include "posetbar/groth.hpp"
#include "posetbar/json_io.hpp"
#include "posetbar/suite.hpp"

using namespace posetbar;

struct pb_poset {
  PosetPtr poset;
};

struct pb_rep {
  RepPtr rep;
};

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string& last_error() {
  thread_local std::string message;
  return message;
}

template <class F>
pb_status guard(F&& body) {
  last_error().clear();
  try {
    body();
    return PB_OK;
  } catch (const UsageError& e) {
    last_error() = e.what();
    return PB_USAGE_ERROR;
  } catch (const ParseError& e) {
    last_error() = e.what();
    return PB_PARSE_ERROR;
  } catch (const CapExceeded& e) {
    last_error() = e.what();
    return PB_CAP_EXCEEDED;
  } catch (const DomainError& e) {
    last_error() = e.what();
    return PB_DOMAIN_ERROR;
  } catch (const Undecided& e) {
    last_error() = e.what();
    return PB_UNDECIDED;
  } catch (const nlohmann::json::exception& e) {
    last_error() = std::string("malformed JSON value: ") + e.what();
    return PB_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error() = "out of memory";
    return PB_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error() = std::string("internal error: ") + e.what();
    return PB_INTERNAL_ERROR;
  }
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class T>
const T& need(const T* p, const char* what) {
  if (!p) throw UsageError(std::string(what) + " must not be NULL");
  return *p;
}

void need_out(const void* out) {
  if (!out) throw UsageError("output pointer must not be NULL");
}

std::string need_str(const char* s, const char* what) {
  if (!s) throw UsageError(std::string(what) + " must not be NULL");
  return s;
}

std::string emit(const io::Json& j) { return j.dump(2) + "\n"; }

void check_format(pb_format f) {
  if (f != PB_FORMAT_JSON && f != PB_FORMAT_TABLE) throw UsageError("unknown output format");
}

std::optional<PrimeField> field_arg(std::uint32_t modulus) {
  if (modulus == 0) return std::nullopt;
  return PrimeField(modulus);
}

RepPtr valid(const pb_rep* r, const char* what) {
  const auto& m = need(r, what).rep;
  require_valid(*m);
  return m;
}

Workspace workspace_for(const RepPtr& m) { return Workspace(m->poset(), m->field()); }

InvariantHandle handle(const char* name) {
  try {
    return InvariantHandle::parse(need_str(name, "invariant name"));
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

extern "C" {

const char* pb_last_error(void) { return last_error().c_str(); }

void pb_string_free(char* s) { std::free(s); }

const char* pb_version(void) { return "0.1.0"; }

pb_status pb_poset_from_json(const char* json, pb_poset** out) {
  return guard([&] {
    need_out(out);
    *out = new pb_poset{io::poset_from_json(io::parse_json_text(need_str(json, "json")))};
  });
}

pb_status pb_poset_grid(size_t rows, size_t cols, pb_poset** out) {
  return guard([&] {
    need_out(out);
    *out = new pb_poset{make_poset(FinitePoset::grid(rows, cols))};
  });
}

void pb_poset_free(pb_poset* poset) { delete poset; }

pb_status pb_poset_describe(const pb_poset* poset, pb_format format, char** out) {
  return guard([&] {
    need_out(out);
    check_format(format);
    const auto& p = need(poset, "poset").poset;
    const auto catalog = enumerate_intervals(p);
    if (format == PB_FORMAT_JSON) {
      io::Json j;
      j["poset"] = io::poset_to_json(*p);
      j["elements"] = p->names();
      io::Json covers = io::Json::array();
      for (const auto& c : p->covers()) covers.push_back({p->name(c.lower), p->name(c.upper)});
      j["covers"] = std::move(covers);
      io::Json intervals = io::Json::array();
      for (const auto& info : catalog->intervals()) {
        io::Json ij;
        ij["interval"] = io::key_to_json(*p, Keyspace::intervals, info.support);
        ij["segment"] = info.is_segment;
        ij["hook"] = info.is_hook;
        ij["principal_up_set"] = info.is_principal_up_set;
        intervals.push_back(std::move(ij));
      }
      j["intervals"] = std::move(intervals);
      *out = dup(emit(j));
      return;
    }
    std::string s = std::to_string(p->size()) + " elements, " + std::to_string(p->covers().size()) + " covers, " +
                    std::to_string(catalog->size()) + " intervals\ncovers:\n";
    for (const auto& c : p->covers()) s += "  " + p->name(c.lower) + " < " + p->name(c.upper) + "\n";
    s += "intervals:\n";
    for (std::size_t i = 0; i < catalog->size(); ++i) {
      const auto& info = (*catalog)[i];
      s += "  #" + std::to_string(i) + " " + io::render_support(*p, info.support);
      if (info.is_segment) s += " segment";
      if (info.is_hook) s += " hook";
      if (info.is_principal_up_set) s += " up-set";
      s += "\n";
    }
    *out = dup(s);
  });
}

pb_status pb_rep_from_json(const char* json, const pb_poset* poset, uint32_t modulus, pb_rep** out) {
  return guard([&] {
    need_out(out);
    auto j = io::parse_json_text(need_str(json, "json"));
    *out = new pb_rep{io::rep_from_json(j, poset ? poset->poset : nullptr, field_arg(modulus))};
  });
}

pb_status pb_rep_from_file(const char* path, const pb_poset* poset, uint32_t modulus, pb_rep** out) {
  return guard([&] {
    need_out(out);
    *out = new pb_rep{io::read_rep_file(need_str(path, "path"), poset ? poset->poset : nullptr, field_arg(modulus))};
  });
}

void pb_rep_free(pb_rep* rep) { delete rep; }

pb_status pb_rep_to_json(const pb_rep* rep, char** out) {
  return guard([&] {
    need_out(out);
    *out = dup(emit(io::rep_to_json(*need(rep, "rep").rep)));
  });
}

pb_status pb_rep_poset(const pb_rep* rep, pb_poset** out) {
  return guard([&] {
    need_out(out);
    *out = new pb_poset{need(rep, "rep").rep->poset()};
  });
}

uint32_t pb_rep_modulus(const pb_rep* rep) { return rep ? rep->rep->field().modulus() : 0; }

pb_status pb_rep_validate(const pb_rep* rep, pb_format format, char** report) {
  std::vector<std::string> violations;
  auto st = guard([&] {
    need_out(report);
    check_format(format);
    violations = validate(*need(rep, "rep").rep);
    if (format == PB_FORMAT_JSON) {
      io::Json j;
      j["valid"] = violations.empty();
      j["violations"] = violations;
      *report = dup(emit(j));
    } else {
      std::string s = violations.empty() ? "valid\n" : "invalid\n";
      for (const auto& v : violations) s += "  " + v + "\n";
      *report = dup(s);
    }
  });
  if (st == PB_OK && !violations.empty()) {
    last_error() = "representation is invalid: " + violations.front();
    return PB_DOMAIN_ERROR;
  }
  return st;
}

pb_status pb_invariant(const pb_rep* rep, const char* kind, const char* compression_json, pb_format format,
                       char** out) {
  return guard([&] {
    need_out(out);
    check_format(format);
    auto m = valid(rep, "rep");
    auto f = handle(kind);
    const auto ws = workspace_for(m);
    if (f.kind() == InvariantKind::cxi) {
      if (!compression_json) throw UsageError("cxi needs a compression system");
      f = f.with_system(io::compression_from_json(ws, io::parse_json_text(compression_json)));
    }
    const auto v = f(ws, m);
    *out = dup(format == PB_FORMAT_JSON ? emit(io::value_to_json(*ws.poset(), v)) : io::render_value(*ws.poset(), v));
  });
}

pb_status pb_resolve(const pb_rep* rep, const char* basis, size_t max_depth, pb_format format, char** out) {
  return guard([&] {
    need_out(out);
    check_format(format);
    auto m = valid(rep, "rep");
    const auto ws = workspace_for(m);
    const auto which = need_str(basis, "basis");
    std::optional<BasisSet> q;
    if (which == "intervals") {
      q = BasisSet::all_intervals(ws);
    } else if (which == "projectives") {
      q = BasisSet::projectives(ws);
    } else {
      const auto j = io::parse_json_text(which);
      if (!j.is_array()) throw ParseError("basis must be \"intervals\", \"projectives\" or a JSON array of intervals");
      std::vector<std::size_t> members;
      for (const auto& s : j) members.push_back(ws.catalog().index_of(io::key_from_json(*ws.poset(), Keyspace::intervals, s)));
      q = BasisSet(ws, std::move(members));
    }
    const auto r = minimal_resolution(ws, m, *q, max_depth ? max_depth : kDefaultMaxDepth);
    if (auto v = audit_resolution(r); !v.empty()) throw InternalError("resolution audit failed: " + v.front());
    *out = dup(format == PB_FORMAT_JSON ? emit(io::resolution_to_json(ws, r)) : io::render_resolution(ws, r));
  });
}

static void flip_output(const Workspace& ws, const InvariantHandle& f, const InvariantHandle& g, const KspElement& x,
                        pb_format format, char** out) {
  const auto y = flip(ws, f, g, x);
  if (!same_class(unflip(ws, f, g, y), x)) throw InternalError("flip round trip failed");
  const auto [plus, minus] = pos_neg_parts(ws, y);
  const auto& p = *ws.poset();
  if (format == PB_FORMAT_JSON) {
    io::Json j;
    j["f"] = f.name();
    j["g"] = g.name();
    j["x"] = io::ksp_to_json(p, ws.field(), normalize(x));
    j["y"] = io::ksp_to_json(p, ws.field(), y);
    j["positive"] = io::rep_to_json(*plus);
    j["negative"] = io::rep_to_json(*minus);
    j["f_of_y"] = io::value_to_json(p, eval(ws, f, y));
    *out = dup(emit(j));
    return;
  }
  std::string s = "x = " + io::render_ksp(p, normalize(x)) + "\ny = T(x) = " + io::render_ksp(p, y) + "\n";
  s += "positive part:\n" + io::render_rep(*plus) + "negative part:\n" + io::render_rep(*minus);
  s += f.name() + "(y):\n" + io::render_value(p, eval(ws, f, y));
  s += "S(T(x)) = x: verified\n";
  *out = dup(s);
}

pb_status pb_flip(const char* f, const char* g, const pb_rep* first, const pb_rep* second, pb_format format,
                  char** out) {
  return guard([&] {
    need_out(out);
    check_format(format);
    auto a = valid(first, "first"), b = valid(second, "second");
    const auto ws = workspace_for(a);
    ws.check(*b);
    flip_output(ws, handle(f), handle(g), KspElement::of(a) - KspElement::of(b), format, out);
  });
}

pb_status pb_flip_element(const char* f, const char* g, const char* element_json, const pb_poset* poset,
                          uint32_t modulus, pb_format format, char** out) {
  return guard([&] {
    need_out(out);
    check_format(format);
    const auto j = io::parse_json_text(need_str(element_json, "element_json"));
    PosetPtr p = poset ? poset->poset : nullptr;
    if (!p) {
      if (!j.contains("poset")) throw UsageError("element has no poset and none was given");
      p = io::poset_from_json(j.at("poset"));
    }
    auto field = field_arg(modulus);
    if (!field) field = PrimeField(j.contains("p") ? j.at("p").get<std::uint32_t>() : 2);
    const auto x = io::ksp_from_json(j, p, *field);
    for (const auto& t : x.terms()) require_valid(*t.rep);
    const Workspace ws(p, *field);
    flip_output(ws, handle(f), handle(g), x, format, out);
  });
}

pb_status pb_certify(const char* f, const char* g, const pb_rep* first, const pb_rep* second, int check_only,
                     pb_format format, char** out) {
  return guard([&] {
    need_out(out);
    check_format(format);
    auto a = valid(first, "first"), b = valid(second, "second");
    const auto ws = workspace_for(a);
    ws.check(*b);
    const auto fh = handle(f), gh = handle(g);
    const auto c = check_only ? separating_pair_check(ws, fh, gh, a, b) : incomparability_certificate(ws, fh, gh, a, b);
    if (auto v = reverify(ws, c); !v.empty()) throw InternalError("certificate does not re-verify: " + v.front());
    *out = dup(format == PB_FORMAT_JSON ? emit(io::certificate_to_json(c)) : io::render_certificate(*ws.poset(), c));
  });
}

pb_status pb_verify_certificate(const char* certificate_json, const pb_poset* poset, uint32_t modulus, char** report) {
  std::vector<std::string> problems;
  auto st = guard([&] {
    need_out(report);
    const auto j = io::parse_json_text(need_str(certificate_json, "certificate_json"));
    PosetPtr p = poset ? poset->poset : nullptr;
    auto field = field_arg(modulus);
    if (!j.contains("pairs") || !j.at("pairs").is_array() || j.at("pairs").empty())
      throw ParseError("certificate has no pairs");
    const auto& first = j.at("pairs").at(0).at("first");
    if (!p) p = io::poset_from_json(first.at("poset"));
    if (!field) field = PrimeField(first.at("p").get<std::uint32_t>());
    const Workspace ws(p, *field);
    problems = reverify(ws, io::certificate_from_json(ws, j));
    std::string s = problems.empty() ? "certificate verified\n" : "certificate does not verify\n";
    for (const auto& v : problems) s += "  " + v + "\n";
    *report = dup(s);
  });
  if (st == PB_OK && !problems.empty()) {
    last_error() = problems.front();
    return PB_PROPERTY_FAILURE;
  }
  return st;
}

pb_status pb_fuzz(const pb_poset* poset, uint32_t modulus, uint64_t seed, size_t trials, int adversarial,
                  pb_format format, char** out) {
  bool ok = true;
  auto st = guard([&] {
    need_out(out);
    check_format(format);
    const auto& p = need(poset, "poset").poset;
    const Workspace ws(p, PrimeField(modulus ? modulus : 2));
    SuiteOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.adversarial = adversarial != 0;
    const auto report = run_identity_suite(ws, opt);
    ok = report.ok();
    if (format == PB_FORMAT_JSON) {
      io::Json j;
      j["poset"] = io::poset_to_json(*p);
      j["p"] = ws.field().modulus();
      j["seed"] = seed;
      j["trials"] = report.trials;
      j["ok"] = report.ok();
      io::Json checks = io::Json::object();
      for (const auto& [name, t] : report.checks) {
        io::Json c;
        c["passed"] = t.passed;
        c["failed"] = t.failed;
        c["skipped"] = t.skipped;
        checks[name] = std::move(c);
      }
      j["checks"] = std::move(checks);
      auto list = [](const std::vector<SuiteFailure>& v) {
        io::Json a = io::Json::array();
        for (const auto& f : v) {
          io::Json e;
          e["trial"] = f.trial;
          e["seed"] = f.seed;
          e["check"] = f.check;
          e["detail"] = f.detail;
          a.push_back(std::move(e));
        }
        return a;
      };
      j["failures"] = list(report.failures);
      j["rejected"] = list(report.rejected);
      *out = dup(emit(j));
      return;
    }
    std::string s = std::to_string(report.trials) + " trials over GF(" + std::to_string(ws.field().modulus()) +
                    "), seed " + std::to_string(seed) + "\n";
    for (const auto& [name, t] : report.checks)
      s += "  " + name + ": " + std::to_string(t.passed) + " passed, " + std::to_string(t.failed) + " failed, " +
           std::to_string(t.skipped) + " skipped\n";
    for (const auto& f : report.rejected)
      s += "  trial " + std::to_string(f.trial) + " rejected by validation: " + f.detail + "\n";
    for (const auto& f : report.failures)
      s += "  trial " + std::to_string(f.trial) + " FAILED " + f.check + ": " + f.detail + "\n";
    s += report.ok() ? "all identities hold\n" : "identity failures\n";
    *out = dup(s);
  });
  if (st == PB_OK && !ok) {
    last_error() = "identity suite reported failures";
    return PB_PROPERTY_FAILURE;
  }
  return st;
}

pb_status pb_sample(const pb_poset* poset, uint32_t modulus, uint64_t seed, size_t generators, size_t relations,
                    pb_rep** out) {
  return guard([&] {
    need_out(out);
    const auto& p = need(poset, "poset").poset;
    RandomShape shape{generators, relations};
    *out = new pb_rep{share(random_rep(p, PrimeField(modulus ? modulus : 2), shape, seed))};
  });
}

}  // extern "C"
