// posetbar command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posetbar/posetbar.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitProperty = 3;

int exit_code(pb_status s) {
  switch (s) {
    case PB_OK: return kExitOk;
    case PB_USAGE_ERROR: return kExitUsage;
    case PB_PROPERTY_FAILURE: return kExitProperty;
    default: return kExitDomain;
  }
}

struct Failure {
  int code;
  std::string message;
};

void check(pb_status s) {
  if (s != PB_OK) throw Failure{exit_code(s), pb_last_error()};
}

struct PosetDeleter {
  void operator()(pb_poset* p) const { pb_poset_free(p); }
};
struct RepDeleter {
  void operator()(pb_rep* r) const { pb_rep_free(r); }
};
using PosetHandle = std::unique_ptr<pb_poset, PosetDeleter>;
using RepHandle = std::unique_ptr<pb_rep, RepDeleter>;

// Takes ownership of a library-allocated string.
std::string take(char* s) {
  std::string out = s ? s : "";
  pb_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitDomain, "cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Globals {
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";

  pb_format fmt() const { return format == "table" ? PB_FORMAT_TABLE : PB_FORMAT_JSON; }
};

struct PosetSource {
  std::string file;
  std::vector<std::size_t> grid;
  std::size_t chain = 0;

  void add_to(CLI::App* cmd) {
    auto* f = cmd->add_option("--poset", file, "poset JSON file");
    auto* g = cmd->add_option("--grid", grid, "grid poset m n")->expected(2);
    auto* c = cmd->add_option("--chain", chain, "chain poset of length n");
    f->excludes(g)->excludes(c);
    g->excludes(c);
  }
  bool given() const { return !file.empty() || !grid.empty() || chain > 0; }

  PosetHandle load() const {
    pb_poset* p = nullptr;
    if (!grid.empty())
      check(pb_poset_grid(grid[0], grid[1], &p));
    else if (chain > 0)
      check(pb_poset_from_json(("{\"chain\": " + std::to_string(chain) + "}").c_str(), &p));
    else if (!file.empty())
      check(pb_poset_from_json(read_file(file).c_str(), &p));
    else
      throw Failure{kExitUsage, "give a poset with --poset, --grid or --chain"};
    return PosetHandle(p);
  }
};

RepHandle load_rep(const std::string& path, const pb_poset* poset, const Globals& g) {
  pb_rep* r = nullptr;
  check(pb_rep_from_file(path.c_str(), poset, g.p, &r));
  return RepHandle(r);
}

PosetHandle poset_of(const pb_rep* r) {
  pb_poset* p = nullptr;
  check(pb_rep_poset(r, &p));
  return PosetHandle(p);
}

void write(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(g.out);
  if (!o) throw Failure{kExitDomain, "cannot write " + g.out};
  o << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barcoding invariants of finite poset representations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--p", g.p, "prime modulus (default: from the input, else 2)");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "write output to this file");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}));

  auto* poset_cmd = app.add_subcommand("poset", "describe a poset and its intervals");
  PosetSource poset_src;
  poset_src.add_to(poset_cmd);

  auto* validate_cmd = app.add_subcommand("validate", "check a representation");
  std::string validate_rep;
  PosetSource validate_poset;
  validate_cmd->add_option("--rep", validate_rep, "representation JSON")->required();
  validate_poset.add_to(validate_cmd);

  auto* invariant_cmd = app.add_subcommand("invariant", "evaluate invariants");
  std::vector<std::string> kinds, inv_reps;
  std::string xi_file;
  invariant_cmd->add_option("--kind", kinds, "dimvec rk grk gpd intmult dimhom betti0 chi ctot cxi")->required();
  invariant_cmd->add_option("--rep", inv_reps, "representation JSON")->required();
  invariant_cmd->add_option("--xi", xi_file, "compression system JSON (for cxi)");

  auto* resolve_cmd = app.add_subcommand("resolve", "minimal resolution relative to a set of intervals");
  std::string resolve_rep, basis = "intervals";
  std::size_t max_depth = 0;
  resolve_cmd->add_option("--rep", resolve_rep, "representation JSON")->required();
  resolve_cmd->add_option("--basis", basis, "intervals, projectives, or a JSON file listing intervals");
  resolve_cmd->add_option("--max-depth", max_depth, "maximal resolution length");

  auto* flip_cmd = app.add_subcommand("flip", "kernel flip x -> x - g(x)");
  std::string flip_f, flip_g, flip_element;
  std::vector<std::string> flip_pair;
  flip_cmd->add_option("--f", flip_f, "barcoding invariant with x in its kernel")->required();
  flip_cmd->add_option("--g", flip_g, "barcoding invariant")->required();
  auto* fp = flip_cmd->add_option("--pair", flip_pair, "x = [first] - [second]")->expected(2);
  auto* fe = flip_cmd->add_option("--element", flip_element, "split Grothendieck element JSON");
  fp->excludes(fe);

  auto* certify_cmd = app.add_subcommand("certify", "separating-pair and incomparability certificates");
  std::string cert_f, cert_g;
  std::vector<std::string> cert_pair;
  bool check_only = false;
  certify_cmd->add_option("--f", cert_f, "invariant that fails to separate the seed pair")->required();
  certify_cmd->add_option("--g", cert_g, "invariant that separates the seed pair")->required();
  certify_cmd->add_option("--pair", cert_pair, "seed pair")->expected(2)->required();
  certify_cmd->add_flag("--check-only", check_only, "only record which invariant separates the pair");

  auto* verify_cmd = app.add_subcommand("verify", "re-evaluate a stored certificate");
  std::string cert_file;
  verify_cmd->add_option("--certificate", cert_file, "certificate JSON")->required();

  auto* fuzz_cmd = app.add_subcommand("fuzz", "identity suite on random modules");
  PosetSource fuzz_poset;
  std::size_t count = 100;
  bool adversarial = false;
  fuzz_poset.add_to(fuzz_cmd);
  fuzz_cmd->add_option("--count", count, "number of trials");
  fuzz_cmd->add_flag("--adversarial", adversarial, "corrupt the first module");

  auto* sample_cmd = app.add_subcommand("sample", "random representation");
  PosetSource sample_poset;
  std::size_t generators = 3, relations = 3;
  sample_poset.add_to(sample_cmd);
  sample_cmd->add_option("--generators", generators, "number of projective generators");
  sample_cmd->add_option("--relations", relations, "number of projective relations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (poset_cmd->parsed()) {
      auto p = poset_src.load();
      char* s = nullptr;
      check(pb_poset_describe(p.get(), g.fmt(), &s));
      write(g, take(s));
    } else if (validate_cmd->parsed()) {
      PosetHandle p;
      if (validate_poset.given()) p = validate_poset.load();
      auto r = load_rep(validate_rep, p.get(), g);
      char* s = nullptr;
      const auto st = pb_rep_validate(r.get(), g.fmt(), &s);
      if (s) write(g, take(s));
      check(st);
    } else if (invariant_cmd->parsed()) {
      std::string xi;
      if (!xi_file.empty()) xi = read_file(xi_file);
      std::vector<RepHandle> reps;
      for (const auto& path : inv_reps) {
        auto base = reps.empty() ? PosetHandle() : poset_of(reps.front().get());
        reps.push_back(load_rep(path, base.get(), g));
      }
      const bool single = kinds.size() == 1 && reps.size() == 1;
      std::string text = single || g.fmt() == PB_FORMAT_TABLE ? "" : "[\n";
      bool first = true;
      for (std::size_t r = 0; r < reps.size(); ++r)
        for (const auto& k : kinds) {
          char* s = nullptr;
          check(pb_invariant(reps[r].get(), k.c_str(), xi.empty() ? nullptr : xi.c_str(), g.fmt(), &s));
          auto value = take(s);
          if (single) {
            text = value;
          } else if (g.fmt() == PB_FORMAT_TABLE) {
            text += "== " + k + " of " + inv_reps[r] + "\n" + value;
          } else {
            if (!value.empty() && value.back() == '\n') value.pop_back();
            text += std::string(first ? "" : ",\n") + "{\"rep\": \"" + inv_reps[r] + "\", \"kind\": \"" + k +
                    "\", \"value\": " + value + "}";
            first = false;
          }
        }
      if (!single && g.fmt() == PB_FORMAT_JSON) text += "\n]\n";
      write(g, text);
    } else if (resolve_cmd->parsed()) {
      auto r = load_rep(resolve_rep, nullptr, g);
      std::string q = basis;
      if (q != "intervals" && q != "projectives") q = read_file(q);
      char* s = nullptr;
      check(pb_resolve(r.get(), q.c_str(), max_depth, g.fmt(), &s));
      write(g, take(s));
    } else if (flip_cmd->parsed()) {
      char* s = nullptr;
      if (!flip_pair.empty()) {
        auto a = load_rep(flip_pair[0], nullptr, g);
        auto pa = poset_of(a.get());
        auto b = load_rep(flip_pair[1], pa.get(), g);
        check(pb_flip(flip_f.c_str(), flip_g.c_str(), a.get(), b.get(), g.fmt(), &s));
      } else if (!flip_element.empty()) {
        check(pb_flip_element(flip_f.c_str(), flip_g.c_str(), read_file(flip_element).c_str(), nullptr, g.p, g.fmt(),
                              &s));
      } else {
        throw Failure{kExitUsage, "flip needs --pair or --element"};
      }
      write(g, take(s));
    } else if (certify_cmd->parsed()) {
      auto a = load_rep(cert_pair[0], nullptr, g);
      auto pa = poset_of(a.get());
      auto b = load_rep(cert_pair[1], pa.get(), g);
      char* s = nullptr;
      check(pb_certify(cert_f.c_str(), cert_g.c_str(), a.get(), b.get(), check_only ? 1 : 0, g.fmt(), &s));
      write(g, take(s));
    } else if (verify_cmd->parsed()) {
      char* s = nullptr;
      const auto st = pb_verify_certificate(read_file(cert_file).c_str(), nullptr, g.p, &s);
      if (s) write(g, take(s));
      check(st);
    } else if (fuzz_cmd->parsed()) {
      auto p = fuzz_poset.load();
      char* s = nullptr;
      const auto st = pb_fuzz(p.get(), g.p, g.seed, count, adversarial ? 1 : 0, g.fmt(), &s);
      if (s) write(g, take(s));
      check(st);
    } else if (sample_cmd->parsed()) {
      auto p = sample_poset.load();
      pb_rep* r = nullptr;
      check(pb_sample(p.get(), g.p, g.seed, generators, relations, &r));
      RepHandle rep(r);
      char* s = nullptr;
      check(pb_rep_to_json(rep.get(), &s));
      write(g, take(s));
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kExitOk;
}
