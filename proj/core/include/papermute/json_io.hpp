#pragma once

// JSON encodings shared by the CLI, the oracles and the tests.
//
//   p.a.p. file   {"n", "m", "a", "b", "c"}  or  {"n", "m", "reduced": {"a0", "a", "b0", "b"}}
//   cycle type    [{"length", "count"}, ...] ascending by length
//   polynomial    {"p", "k", "modulus", "terms": [{"exp", "coeff"}, ...]} descending by exp
//
// Exact integers that do not fit in 64 bits are written as decimal strings.

#include <papermute/cycle_type.hpp>
#include <papermute/cycles.hpp>
#include <papermute/error.hpp>
#include <papermute/gf.hpp>
#include <papermute/pap.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace papermute::json_io {

using Json = nlohmann::ordered_json;

/// Contents of a p.a.p. file. `reduced` is kept so that writing the file
/// back reproduces the same form.
struct PapFile {
    AdmissibleTriple triple;
    std::optional<ReducedParams> reduced;

    friend bool operator==(const PapFile&, const PapFile&) = default;
};

/// Throws InvalidArgument on missing or unknown keys and non-integer
/// entries, ValidationError when the reduced form fails its conditions.
/// The explicit form is not validated here.
PapFile parse_pap_file(const Json& j);
PapFile read_pap_file(const std::string& path);
Json to_json(const PapFile& file);

Json to_json(const AdmissibleTriple& t);
Json to_json(const ReducedParams& r);
Json to_json(const CycleType& ct);
Json to_json(const PrincipalData& pd);
Json to_json(const TwoReducibleInverse& inv);
Json to_json(const std::vector<Violation>& violations);
Json to_json(const gf::Field& field, const gf::FieldElement& x);
Json to_json(const gf::FieldPoly& poly);

CycleType cycle_type_from_json(const Json& j);

/// Number when it fits in 64 bits, otherwise a decimal string.
Json exact(const BigInt& v);

/// {"command", "input", "result", "warnings"} in that order.
Json envelope(const std::string& command, Json input, Json result, const std::vector<std::string>& warnings);

}  // namespace papermute::json_io
