#include <papermute/json_io.hpp>

#include <fstream>
#include <limits>
#include <set>

namespace papermute::json_io {

namespace {

using i64 = std::int64_t;

void require_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidArgument(where + " must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) throw InvalidArgument(where + ": unknown key \"" + key + "\"");
}

i64 integer(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw InvalidArgument("missing key \"" + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidArgument("\"" + key + "\" must be an integer");
    return v.get<i64>();
}

std::vector<i64> integers(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw InvalidArgument("missing key \"" + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_array()) throw InvalidArgument("\"" + key + "\" must be an array of integers");
    std::vector<i64> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw InvalidArgument("\"" + key + "\" must be an array of integers");
        out.push_back(e.get<i64>());
    }
    return out;
}

}  // namespace

PapFile parse_pap_file(const Json& j) {
    if (!j.is_object()) throw InvalidArgument("p.a.p. file must hold a JSON object");
    const i64 n = integer(j, "n");
    const i64 m = integer(j, "m");
    if (j.contains("reduced")) {
        require_keys(j, {"n", "m", "reduced"}, "p.a.p. file");
        const Json& r = j.at("reduced");
        require_keys(r, {"a0", "a", "b0", "b"}, "\"reduced\"");
        const ReducedParams params{integer(r, "a0"), integer(r, "a"), integer(r, "b0"), integer(r, "b")};
        return {two_reducible_triple(n, m, params), params};
    }
    require_keys(j, {"n", "m", "a", "b", "c"}, "p.a.p. file");
    return {{n, m, integers(j, "a"), integers(j, "b"), integers(j, "c")}, std::nullopt};
}

PapFile read_pap_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
    return parse_pap_file(j);
}

Json to_json(const PapFile& file) {
    if (!file.reduced) return to_json(file.triple);
    return Json{{"n", file.triple.n}, {"m", file.triple.m}, {"reduced", to_json(*file.reduced)}};
}

Json to_json(const AdmissibleTriple& t) {
    return Json{{"n", t.n}, {"m", t.m}, {"a", t.a}, {"b", t.b}, {"c", t.c}};
}

Json to_json(const ReducedParams& r) { return Json{{"a0", r.a0}, {"a", r.a}, {"b0", r.b0}, {"b", r.b}}; }

Json to_json(const CycleType& ct) {
    Json out = Json::array();
    for (const auto& [length, count] : ct.entries()) out.push_back(Json{{"length", length}, {"count", count}});
    return out;
}

CycleType cycle_type_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidArgument("cycle type must be a JSON array");
    CycleType out;
    for (const auto& e : j) {
        require_keys(e, {"length", "count"}, "cycle type entry");
        out.add(integer(e, "length"), integer(e, "count"));
    }
    return out;
}

Json exact(const BigInt& v) {
    if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return v.convert_to<i64>();
    return v.str();
}

Json to_json(const PrincipalData& pd) {
    Json out{{"P", exact(pd.product)}, {"S", pd.sum}};
    if (pd.product > 1) {
        out["g"] = exact(pd.g);
        out["N1"] = exact(pd.n1);
        out["N2"] = exact(pd.n2);
    }
    return out;
}

Json to_json(const TwoReducibleInverse& inv) {
    return Json{{"n", inv.n},   {"m", inv.m}, {"A0", inv.A0},
                {"A", inv.A},   {"B0", inv.B0}, {"B", inv.B},
                {"branch_residue", inv.branch_residue}};
}

Json to_json(const std::vector<Violation>& violations) {
    Json out = Json::array();
    for (const auto& v : violations) {
        Json e{{"condition", v.condition}};
        e["index"] = v.index ? Json(*v.index) : Json(nullptr);
        e["detail"] = v.detail;
        out.push_back(std::move(e));
    }
    return out;
}

Json to_json(const gf::Field&, const gf::FieldElement& x) { return Json(x.coeffs); }

Json to_json(const gf::FieldPoly& poly) {
    const auto& f = poly.field();
    Json terms = Json::array();
    for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it)
        terms.push_back(Json{{"exp", it->first}, {"coeff", it->second.coeffs}});
    return Json{{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}, {"terms", std::move(terms)}};
}

Json envelope(const std::string& command, Json input, Json result, const std::vector<std::string>& warnings) {
    return Json{{"command", command}, {"input", std::move(input)}, {"result", std::move(result)}, {"warnings", warnings}};
}

}  // namespace papermute::json_io
