#pragma once

// JSON encodings and text renderings. Every writer has a reader that
// reproduces an equal value.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "posetbar/groth.hpp"
#include "posetbar/invariants.hpp"
#include "posetbar/relhom.hpp"
#include "posetbar/rep.hpp"

namespace posetbar::io {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text);  // ParseError on malformed input

// {"elements": [...], "covers": [[lo, hi], ...]}, {"grid": [m, n]} or {"chain": n}.
PosetPtr poset_from_json(const Json& j);
Json poset_to_json(const FinitePoset& p);

// {"poset": ..., "p": 2, "dims": {name: n}, "maps": {"x<y": rows}}. Also
// accepts "interval_sum": [matrix, ...] on grids, "interval": [names], and
// "summands": [rep, ...] whose entries inherit poset and p.
// When `poset` is given the "poset" field is optional and, if present, must agree.
RepPtr rep_from_json(const Json& j, PosetPtr poset = nullptr, std::optional<PrimeField> field = std::nullopt);
Json rep_to_json(const Representation& m, bool with_header = true);
RepPtr read_rep_file(const std::filesystem::path& path, PosetPtr poset = nullptr,
                     std::optional<PrimeField> field = std::nullopt);

Json key_to_json(const FinitePoset& p, Keyspace k, const Key& key);
Key key_from_json(const FinitePoset& p, Keyspace k, const Json& j);
Json value_to_json(const FinitePoset& p, const InvariantValue& v);
InvariantValue value_from_json(const FinitePoset& p, const Json& j);

Json resolution_to_json(const Workspace& ws, const Resolution& r);
// Terms are rebuilt from their summand lists; syzygies are not stored.
Resolution resolution_from_json(const Workspace& ws, const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Workspace& ws, const Json& j);

Json ksp_to_json(const FinitePoset& p, PrimeField field, const KspElement& x);
KspElement ksp_from_json(const Json& j, const PosetPtr& poset, PrimeField field);

// {"entries": [{"interval": [names], "probe": poset, "map": {probe name: P name}}]}.
// Intervals without an entry use the identity probe.
CompressionSystem compression_from_json(const Workspace& ws, const Json& j);
Json compression_to_json(const Workspace& ws, const CompressionSystem& xi);

// "[1 1 0;0 1 1]" on grids (top row first), "{a,b}" elsewhere.
std::string render_support(const FinitePoset& p, const Support& s);
std::string render_key(const FinitePoset& p, Keyspace k, const Key& key);
std::string render_value(const FinitePoset& p, const InvariantValue& v);
std::string render_rep(const Representation& m);
// "+1 M<dims [..]> -1 [1 1 0;0 1 1]"; interval terms by support.
std::string render_ksp(const FinitePoset& p, const KspElement& x);
// 0 -> I_l -> ... -> I_0 -> M -> 0, then the Betti numbers and Euler characteristic.
std::string render_resolution(const Workspace& ws, const Resolution& r);
std::string render_certificate(const FinitePoset& p, const Certificate& c);

}  // namespace posetbar::io
