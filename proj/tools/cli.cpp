#include "cli.hpp"

#include <papermute/cycles.hpp>
#include <papermute/gf.hpp>
#include <papermute/json_io.hpp>
#include <papermute/pap.hpp>
#include <papermute/reference.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace papermute::cli {

namespace {

using i64 = std::int64_t;
using json_io::Json;

// Every flag, registered on the root command and visible from all
// subcommands. Each command lists the ones it reads; others draw a warning.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"--file", "p.a.p. description file (JSON)"},
    {"--n", "modulus n"},
    {"--m", "block modulus m"},
    {"--a", "slopes a_1,...,a_m, or the single slope a of a two-rule p.a.p."},
    {"--b", "offsets b_1,...,b_m, or the single offset b of a two-rule p.a.p."},
    {"--c", "class pattern c_1,...,c_m"},
    {"--a0", "slope on the multiples of m (two-rule p.a.p.)"},
    {"--b0", "offset on the multiples of m (two-rule p.a.p.)"},
    {"--p", "field characteristic"},
    {"--k", "extension degree (default 1)"},
    {"--modulus", "monic field modulus, low degree first, e.g. --modulus=-3,-1,1"},
    {"--theta", "primitive element (integer or coefficient list); for `gf family`, the m-th root of unity"},
    {"--x", "point: integer in [1, n], or a field element"},
    {"--ell", "prime cycle length for the equal-length test (gf cycles)"},
    {"--seed", "seed for a sampled triple when no p.a.p. is given"},
    {"--budget", "search-space limit for enumerations"},
};

const std::vector<std::string> kPapSource = {"--file", "--n", "--m", "--a", "--b", "--c", "--a0", "--b0", "--seed"};
const std::vector<std::string> kField = {"--p", "--k", "--modulus", "--theta"};

std::string join(const std::vector<i64>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

i64 parse_int(const std::string& s, const std::string& flag) {
    i64 v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw InvalidArgument(flag + ": expected an integer, got \"" + s + "\"");
    return v;
}

std::vector<i64> parse_list(const std::string& s, const std::string& flag) {
    std::vector<i64> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
        out.push_back(parse_int(item, flag));
    }
    if (out.empty()) throw InvalidArgument(flag + ": expected a comma-separated list of integers");
    return out;
}

struct Context {
    CLI::App& app;
    std::map<std::string, std::string>& values;
    bool check = false;
    Json input = Json::object();
    std::vector<std::string> warnings;

    bool has(const std::string& flag) const { return app.count(flag) > 0; }

    const std::string& raw(const std::string& flag) const {
        if (!has(flag)) throw InvalidArgument("missing required flag " + flag);
        return values.at(flag);
    }
    i64 integer(const std::string& flag) const { return parse_int(raw(flag), flag); }
    i64 integer_or(const std::string& flag, i64 fallback) const { return has(flag) ? integer(flag) : fallback; }
    std::vector<i64> list(const std::string& flag) const { return parse_list(raw(flag), flag); }
};

struct Outcome {
    Json result = Json::object();
    std::string text;
    std::optional<std::string> mismatch;
};

// --- input resolution --------------------------------------------------------

json_io::PapFile pap_source(Context& ctx) {
    json_io::PapFile file;
    if (ctx.has("--file")) {
        file = json_io::read_pap_file(ctx.raw("--file"));
    } else if (ctx.has("--n") && ctx.has("--m") && ctx.has("--a0")) {
        const i64 n = ctx.integer("--n"), m = ctx.integer("--m");
        const ReducedParams params{ctx.integer("--a0"), ctx.integer("--a"), ctx.integer("--b0"), ctx.integer("--b")};
        file = {two_reducible_triple(n, m, params), params};
    } else if (ctx.has("--n") && ctx.has("--m") && (ctx.has("--a") || ctx.has("--b") || ctx.has("--c"))) {
        file = {{ctx.integer("--n"), ctx.integer("--m"), ctx.list("--a"), ctx.list("--b"), ctx.list("--c")}, std::nullopt};
    } else if (ctx.has("--n") && ctx.has("--m") && ctx.has("--seed")) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(ctx.integer("--seed")));
        file = {reference::sample_triple(ctx.integer("--n"), ctx.integer("--m"), rng), std::nullopt};
        ctx.warnings.push_back("no p.a.p. given; sampled one from --seed " + ctx.raw("--seed"));
    } else {
        throw InvalidArgument(
            "no p.a.p. given: use --file, --n/--m with --a/--b/--c, --n/--m with --a0/--a/--b0/--b, or --n/--m with "
            "--seed");
    }
    ctx.input["pap"] = json_io::to_json(file);
    return file;
}

Pap load_pap(Context& ctx) { return Pap(pap_source(ctx).triple); }

ReducedParams reduced_flags(Context& ctx, i64& n, i64& m) {
    n = ctx.integer("--n");
    m = ctx.integer("--m");
    const ReducedParams params{ctx.integer("--a0"), ctx.integer("--a"), ctx.integer("--b0"), ctx.integer("--b")};
    ctx.input["n"] = n;
    ctx.input["m"] = m;
    ctx.input["reduced"] = json_io::to_json(params);
    return params;
}

gf::Field load_field(Context& ctx) {
    const i64 p = ctx.integer("--p");
    const i64 k = ctx.integer_or("--k", 1);
    if (k < 1 || k > 64) throw InvalidArgument("--k: extension degree must lie in [1, 64]");
    std::optional<std::vector<i64>> modulus;
    if (ctx.has("--modulus")) modulus = ctx.list("--modulus");
    gf::Field field = gf::Field::make(p, static_cast<int>(k), modulus);
    ctx.input["field"] = Json{{"p", field.p()}, {"k", field.k()}, {"modulus", field.modulus()}};
    return field;
}

gf::FieldElement element_flag(Context& ctx, const gf::Field& field, const std::string& flag) {
    const auto values = ctx.list(flag);
    return values.size() == 1 ? field.constant(values[0]) : field.from_coeffs(values);
}

gf::FieldElement load_theta(Context& ctx, const gf::Field& field) {
    const gf::FieldElement theta = ctx.has("--theta") ? element_flag(ctx, field, "--theta") : gf::find_primitive(field);
    ctx.input["theta"] = theta.coeffs;
    return theta;
}

std::uint64_t load_budget(Context& ctx) {
    const i64 budget = ctx.integer_or("--budget", static_cast<i64>(reference::kDefaultBudget));
    if (budget < 0) throw InvalidArgument("--budget must be nonnegative");
    ctx.input["budget"] = budget;
    return static_cast<std::uint64_t>(budget);
}

// --- oracle helpers ------------------------------------------------------------

std::string cycles_text(const std::vector<std::vector<i64>>& cycles) {
    std::string out;
    for (const auto& c : cycles) out += "(" + join(c, " ") + ")";
    return out;
}

// Permutation of F_q induced by f, on indices shifted to [1, q].
reference::PermTable field_table(const gf::Field& field, const std::function<gf::FieldElement(const gf::FieldElement&)>& f) {
    return reference::PermTable::from_function(field.q(), [&](i64 x) { return field.index(f(field.element(x - 1))) + 1; });
}

void set_check(Outcome& o, bool passed, const std::string& detail) {
    o.result["check"] = Json{{"passed", passed}, {"detail", detail}};
    if (!passed) o.mismatch = detail;
}

std::string principal_text(const PrincipalData& pd) {
    std::string out = "P = " + pd.product.str() + "\nS = " + std::to_string(pd.sum);
    if (pd.product > 1) out += "\ng = " + pd.g.str() + "\nN1 = " + pd.n1.str() + "\nN2 = " + pd.n2.str();
    return out;
}

std::string triple_text(const AdmissibleTriple& t) {
    return "a = " + join(t.a) + "\nb = " + join(t.b) + "\nc = " + join(t.c);
}

// --- pap ---------------------------------------------------------------------------

Outcome pap_validate(Context& ctx) {
    const auto file = pap_source(ctx);
    const auto report = validate_triple(file.triple);
    if (!report.ok()) throw ValidationError(report.violations);
    Outcome o;
    o.result["valid"] = true;
    o.text = "valid";
    return o;
}

Outcome pap_apply(Context& ctx) {
    const Pap pap = load_pap(ctx);
    const i64 x = ctx.integer("--x");
    ctx.input["x"] = x;
    Outcome o;
    const i64 y = pap.apply(x);
    o.result = Json{{"x", x}, {"image", y}};
    o.text = std::to_string(y);
    return o;
}

Outcome pap_table(Context& ctx) {
    const Pap pap = load_pap(ctx);
    Outcome o;
    const auto table = pap.table();
    o.result["image"] = table;
    for (std::size_t i = 0; i < table.size(); ++i)
        o.text += (i ? "\n" : "") + std::to_string(i + 1) + " -> " + std::to_string(table[i]);
    return o;
}

Outcome pap_invert(Context& ctx) {
    const Pap pap = load_pap(ctx);
    const Pap inv = invert(pap);
    Outcome o;
    o.result = json_io::to_json(inv.triple());
    o.text = triple_text(inv.triple());
    if (ctx.check) {
        bool ok = true;
        for (i64 x = 1; x <= pap.n(); ++x) ok = ok && inv(pap(x)) == x && pap(inv(x)) == x;
        set_check(o, ok, ok ? "both compositions are the identity" : "composition with the inverse is not the identity");
    }
    return o;
}

Outcome pap_cycles(Context& ctx) {
    const Pap pap = load_pap(ctx);
    const PrincipalData pd = principal(pap);
    const CycleType ct = cycle_type(pd);
    Outcome o;
    o.result["cycle_type"] = json_io::to_json(ct);
    o.result["principal"] = json_io::to_json(pd);
    o.text = ct.to_string() + "\n" + principal_text(pd);
    std::optional<i64> length;
    if (ctx.has("--x")) {
        const i64 x = ctx.integer("--x");
        ctx.input["x"] = x;
        length = cycle_length(pap, x);
        o.result["cycle_length"] = *length;
        o.text += "\ncycle length of " + std::to_string(x) + " = " + std::to_string(*length);
    }
    if (ctx.check) {
        const auto table = reference::PermTable::from_pap(pap);
        const CycleType brute = reference::brute_cycle_type(table);
        bool ok = brute == ct;
        std::string detail = ok ? "orbit tracing agrees" : "orbit tracing gives " + brute.to_string();
        if (ok && length) {
            for (const auto& cycle : reference::brute_cycles(table))
                if (std::find(cycle.begin(), cycle.end(), ctx.integer("--x")) != cycle.end() &&
                    static_cast<i64>(cycle.size()) != *length) {
                    ok = false;
                    detail = "orbit tracing gives cycle length " + std::to_string(cycle.size());
                }
        }
        set_check(o, ok, detail);
    }
    return o;
}

Outcome pap_count(Context& ctx) {
    const i64 n = ctx.integer("--n"), m = ctx.integer("--m");
    ctx.input["n"] = n;
    ctx.input["m"] = m;
    const BigInt paps = count_paps(n, m);
    const BigInt triples = count_admissible_triples(n, m);
    Outcome o;
    o.result = Json{{"paps", json_io::exact(paps)}, {"triples", json_io::exact(triples)}};
    o.text = "paps = " + paps.str() + "\ntriples = " + triples.str();
    if (ctx.check) {
        std::uint64_t seen = 0;
        reference::for_each_pap(n, m, load_budget(ctx), [&](const reference::EnumeratedPap&) { ++seen; });
        const bool ok = BigInt(seen) == paps;
        set_check(o, ok, "enumeration found " + std::to_string(seen) + " distinct tables");
    }
    return o;
}

Outcome pap_enumerate(Context& ctx) {
    const i64 n = ctx.integer("--n"), m = ctx.integer("--m");
    ctx.input["n"] = n;
    ctx.input["m"] = m;
    Outcome o;
    Json paps = Json::array();
    std::uint64_t count = 0;
    reference::for_each_pap(n, m, load_budget(ctx), [&](const reference::EnumeratedPap& e) {
        ++count;
        paps.push_back(Json{{"table", e.table.image}, {"witness", json_io::to_json(e.witness)}});
        o.text += join(e.table.image, " ") + "  [a=" + join(e.witness.a) + " b=" + join(e.witness.b) +
                  " c=" + join(e.witness.c) + "]\n";
    });
    o.result["count"] = count;
    o.result["paps"] = std::move(paps);
    o.text += "count = " + std::to_string(count);
    return o;
}

Outcome tr_build(Context& ctx) {
    i64 n = 0, m = 0;
    const ReducedParams params = reduced_flags(ctx, n, m);
    const Pap pap = two_reducible_build(n, m, params);
    const CycleType ct = cycle_type(pap);
    Outcome o;
    o.result["triple"] = json_io::to_json(pap.triple());
    o.result["cycle_type"] = json_io::to_json(ct);
    o.text = triple_text(pap.triple()) + "\ncycles: " + ct.to_string();
    if (ctx.check) {
        const CycleType brute = reference::brute_cycle_type(reference::PermTable::from_pap(pap));
        set_check(o, brute == ct, "orbit tracing gives " + brute.to_string());
    }
    return o;
}

Outcome tr_invert(Context& ctx) {
    i64 n = 0, m = 0;
    const ReducedParams params = reduced_flags(ctx, n, m);
    const auto inv = two_reducible_invert(n, m, params);
    Outcome o;
    o.result = json_io::to_json(inv);
    o.text = "A0 = " + std::to_string(inv.A0) + "\nB0 = " + std::to_string(inv.B0) + "\nA = " + std::to_string(inv.A) +
             "\nB = " + std::to_string(inv.B) + "\nbranch residue = " + std::to_string(inv.branch_residue);
    if (ctx.check) {
        const Pap pap = two_reducible_build(n, m, params);
        bool ok = true;
        for (i64 x = 1; x <= n; ++x) ok = ok && inv.apply(pap(x)) == x && pap(inv.apply(x)) == x;
        set_check(o, ok, ok ? "both compositions are the identity" : "composition with the inverse is not the identity");
    }
    return o;
}

Outcome tr_bound(Context& ctx) {
    const i64 n = ctx.integer("--n"), m = ctx.integer("--m");
    ctx.input["n"] = n;
    ctx.input["m"] = m;
    const BigInt bound = two_reducible_lower_bound(n, m);
    Outcome o;
    o.result["lower_bound"] = json_io::exact(bound);
    o.text = bound.str();
    return o;
}

// --- gf ---------------------------------------------------------------------------

Outcome poly_outcome(const gf::FieldPoly& poly) {
    Outcome o;
    o.result["polynomial"] = json_io::to_json(poly);
    o.result["display"] = poly.to_string();
    o.result["terms"] = poly.size();
    o.text = poly.to_string();
    return o;
}

void check_poly_against(Outcome& o, const gf::FieldPoly& poly,
                        const std::function<gf::FieldElement(const gf::FieldElement&)>& expected) {
    const gf::Field& f = poly.field();
    for (i64 i = 0; i < f.q(); ++i) {
        const auto x = f.element(i);
        if (poly.evaluate(x) != expected(x)) {
            set_check(o, false, "polynomial and direct evaluation differ at " + f.to_string(x));
            return;
        }
    }
    const bool perm = reference::verify_permutation([&](i64 i) { return f.index(poly.evaluate(f.element(i))); }, f.q());
    set_check(o, perm, perm ? "agrees with direct evaluation at all q points; permutes F_q" : "does not permute F_q");
}

Outcome gf_lift(Context& ctx, bool inverse) {
    const gf::Field field = load_field(ctx);
    const gf::FieldElement theta = load_theta(ctx, field);
    const gf::LiftSpec spec(load_pap(ctx), field, theta);
    const gf::FieldPoly poly = inverse ? gf::lift_poly_inverse(spec) : gf::lift_poly(spec);
    Outcome o = poly_outcome(poly);
    if (ctx.check) {
        if (!inverse) {
            check_poly_against(o, poly, [&](const gf::FieldElement& x) { return gf::lift_eval(spec, x); });
        } else {
            std::map<gf::FieldElement, gf::FieldElement> preimage;
            for (i64 i = 0; i < field.q(); ++i) preimage[gf::lift_eval(spec, field.element(i))] = field.element(i);
            check_poly_against(o, poly, [&](const gf::FieldElement& x) { return preimage.at(x); });
        }
    }
    return o;
}

Outcome gf_lift_eval(Context& ctx) {
    const gf::Field field = load_field(ctx);
    const gf::FieldElement theta = load_theta(ctx, field);
    const gf::LiftSpec spec(load_pap(ctx), field, theta);
    const gf::FieldElement x = element_flag(ctx, field, "--x");
    ctx.input["x"] = x.coeffs;
    const gf::FieldElement y = gf::lift_eval(spec, x);
    Outcome o;
    o.result = Json{{"x", x.coeffs}, {"value", y.coeffs}, {"display", field.to_string(y)}};
    o.text = field.to_string(y);
    if (ctx.check) {
        const gf::FieldElement via_poly = gf::lift_poly(spec).evaluate(x);
        set_check(o, via_poly == y, "polynomial gives " + field.to_string(via_poly));
    }
    return o;
}

Outcome gf_cycles(Context& ctx) {
    const gf::Field field = load_field(ctx);
    const gf::FieldElement theta = load_theta(ctx, field);
    const gf::LiftSpec spec(load_pap(ctx), field, theta);
    const CycleType ct = gf::lift_cycle_type(spec);
    Outcome o;
    o.result["cycle_type"] = json_io::to_json(ct);
    o.text = ct.to_string();
    if (ctx.has("--ell")) {
        const i64 ell = ctx.integer("--ell");
        ctx.input["ell"] = ell;
        const auto report = gf::equal_length_check(spec.pap(), ell);
        o.result["equal_length"] =
            Json{{"ell", ell}, {"holds", report.ok()}, {"violations", json_io::to_json(report.violations)}};
        o.text += "\nall cycles of length " + std::to_string(ell) + ": " + (report.ok() ? "yes" : "no");
        for (const auto& v : report.violations) o.text += "\n  - " + v.to_string();
    }
    if (ctx.check) {
        const CycleType brute =
            reference::brute_cycle_type(field_table(field, [&](const gf::FieldElement& x) { return gf::lift_eval(spec, x); }));
        set_check(o, brute == ct, "orbit tracing on F_q gives " + brute.to_string());
    }
    return o;
}

Outcome gf_involution(Context& ctx) {
    const gf::Field field = load_field(ctx);
    const gf::FieldElement theta = load_theta(ctx, field);
    const ReducedParams params{ctx.integer("--a0"), ctx.integer("--a"), ctx.integer("--b0"), ctx.integer("--b")};
    ctx.input["reduced"] = json_io::to_json(params);
    const gf::Involution inv = gf::involution_build(field, theta, params);
    const CycleType ct = gf::lift_cycle_type(inv.spec);
    Outcome o = poly_outcome(inv.poly);
    o.result["cycle_type"] = json_io::to_json(ct);
    o.text += "\ncycles: " + ct.to_string();
    if (ctx.check) {
        bool ok = true;
        std::vector<i64> fixed;
        for (i64 i = 0; i < field.q(); ++i) {
            const auto x = field.element(i);
            const auto y = inv.poly.evaluate(x);
            ok = ok && inv.poly.evaluate(y) == x && y == gf::lift_eval(inv.spec, x);
            if (y == x) fixed.push_back(i);
        }
        ok = ok && fixed == std::vector<i64>{0};
        set_check(o, ok, ok ? "F(F(x)) = x everywhere; only 0 is fixed" : "not an involution with the single fixed point 0");
    }
    return o;
}

Outcome gf_family(Context& ctx) {
    const i64 p = ctx.integer("--p");
    const i64 k = ctx.integer_or("--k", 1);
    const i64 m = ctx.integer("--m");
    const i64 theta_m = ctx.integer("--theta");
    const i64 a0 = ctx.integer("--a0"), a = ctx.integer("--a"), b = ctx.integer("--b");
    std::optional<std::vector<i64>> modulus;
    if (ctx.has("--modulus")) modulus = ctx.list("--modulus");
    if (k < 1 || k > 64) throw InvalidArgument("--k: extension degree must lie in [1, 64]");
    ctx.input = Json{{"p", p}, {"k", k}, {"m", m}, {"theta_m", theta_m}, {"a0", a0}, {"a", a}, {"b", b}};
    const gf::ExplicitFamily fam = gf::explicit_family(p, static_cast<int>(k), m, theta_m, a0, a, b, modulus);
    Outcome o = poly_outcome(fam.poly);
    o.result["reduced"] = json_io::to_json(fam.reduced);
    o.result["cycle_type"] = json_io::to_json(fam.cycles);
    o.text += "\ncycles: " + fam.cycles.to_string();
    if (ctx.check) {
        const auto& f = fam.field;
        const bool perm = reference::verify_permutation([&](i64 i) { return f.index(fam.poly.evaluate(f.element(i))); }, f.q());
        if (!perm) {
            set_check(o, false, "polynomial does not permute F_q");
        } else {
            const CycleType brute =
                reference::brute_cycle_type(field_table(f, [&](const gf::FieldElement& x) { return fam.poly.evaluate(x); }));
            set_check(o, brute == fam.cycles, "orbit tracing on F_q gives " + brute.to_string());
        }
    }
    return o;
}

// --- oracle ------------------------------------------------------------------------

Outcome oracle_cycles(Context& ctx) {
    const Pap pap = load_pap(ctx);
    const auto table = reference::PermTable::from_pap(pap);
    const auto cycles = reference::brute_cycles(table);
    const CycleType ct = reference::brute_cycle_type(table);
    Outcome o;
    o.result["cycle_type"] = json_io::to_json(ct);
    o.result["cycles"] = cycles;
    o.text = cycles_text(cycles) + "\n" + ct.to_string();
    return o;
}

Outcome oracle_enumerate(Context& ctx) {
    const i64 n = ctx.integer("--n"), m = ctx.integer("--m");
    ctx.input["n"] = n;
    ctx.input["m"] = m;
    const std::uint64_t budget = load_budget(ctx);
    const BigInt space = reference::pap_search_space(n, m);
    std::map<std::map<i64, i64>, std::uint64_t> histogram;
    std::uint64_t count = 0;
    reference::for_each_pap(n, m, budget, [&](const reference::EnumeratedPap& e) {
        ++count;
        ++histogram[reference::brute_cycle_type(e.table).entries()];
    });
    Outcome o;
    o.result["search_space"] = json_io::exact(space);
    o.result["count"] = count;
    Json hist = Json::array();
    o.text = "count = " + std::to_string(count) + "\nsearch space = " + space.str();
    for (const auto& [entries, paps] : histogram) {
        CycleType ct;
        for (const auto& [length, c] : entries) ct.add(length, c);
        hist.push_back(Json{{"cycle_type", json_io::to_json(ct)}, {"paps", paps}});
        o.text += "\n" + std::to_string(paps) + " : " + ct.to_string();
    }
    o.result["cycle_types"] = std::move(hist);
    return o;
}

struct Command {
    std::function<Outcome(Context&)> handler;
    std::vector<std::string> flags;
    bool checkable = false;
};

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
    std::vector<std::string> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table = {
        {"pap validate", {pap_validate, kPapSource}},
        {"pap apply", {pap_apply, concat({kPapSource, {"--x"}})}},
        {"pap table", {pap_table, kPapSource}},
        {"pap invert", {pap_invert, kPapSource, true}},
        {"pap cycles", {pap_cycles, concat({kPapSource, {"--x"}}), true}},
        {"pap count", {pap_count, {"--n", "--m", "--budget"}, true}},
        {"pap enumerate", {pap_enumerate, {"--n", "--m", "--budget"}}},
        {"pap two-reducible build", {tr_build, {"--n", "--m", "--a0", "--a", "--b0", "--b"}, true}},
        {"pap two-reducible invert", {tr_invert, {"--n", "--m", "--a0", "--a", "--b0", "--b"}, true}},
        {"pap two-reducible bound", {tr_bound, {"--n", "--m"}}},
        {"gf lift", {[](Context& c) { return gf_lift(c, false); }, concat({kPapSource, kField}), true}},
        {"gf lift-inverse", {[](Context& c) { return gf_lift(c, true); }, concat({kPapSource, kField}), true}},
        {"gf lift-eval", {gf_lift_eval, concat({kPapSource, kField, {"--x"}}), true}},
        {"gf cycles", {gf_cycles, concat({kPapSource, kField, {"--ell"}}), true}},
        {"gf involution", {gf_involution, concat({kField, {"--a0", "--a", "--b0", "--b"}}), true}},
        {"gf family", {gf_family, {"--p", "--k", "--modulus", "--m", "--theta", "--a0", "--a", "--b"}, true}},
        {"oracle cycles", {oracle_cycles, kPapSource}},
        {"oracle enumerate", {oracle_enumerate, {"--n", "--m", "--budget"}}},
    };
    return table;
}

std::string group_help(const std::string& path) {
    static const std::map<std::string, std::string> help = {
        {"pap", "Validate, apply, invert and decompose p.a.p.s"},
        {"pap two-reducible", "Two-rule p.a.p.s from (a0, a, b0, b)"},
        {"gf", "Lifts to permutation polynomials of F_q"},
        {"oracle", "Brute-force reference computations"},
        {"pap validate", "Check admissibility and list every violated condition"},
        {"pap apply", "Image of --x"},
        {"pap table", "Full table x -> pi(x)"},
        {"pap invert", "Inverse p.a.p. as a triple"},
        {"pap cycles", "Cycle type from the principal data; cycle length of --x"},
        {"pap count", "Number of distinct p.a.p.s and of admissible triples"},
        {"pap enumerate", "List every distinct table within --budget"},
        {"pap two-reducible build", "Triple and cycle type of the two-rule p.a.p."},
        {"pap two-reducible invert", "Two-rule description of the inverse"},
        {"pap two-reducible bound", "Lower bound on the number of two-rule p.a.p.s"},
        {"gf lift", "Permutation polynomial of the lift"},
        {"gf lift-inverse", "Permutation polynomial of the inverse lift"},
        {"gf lift-eval", "Lift evaluated at --x"},
        {"gf cycles", "Cycle type of the lift; equal-length test with --ell"},
        {"gf involution", "Involution from a two-rule (q-1, 2)-p.a.p."},
        {"gf family", "Explicit family built from an m-th root of unity in F_p"},
        {"oracle cycles", "Cycles by orbit tracing"},
        {"oracle enumerate", "Distinct tables by exhaustive search"},
    };
    const auto it = help.find(path);
    return it == help.end() ? "" : it->second;
}

void emit(std::ostream& out, std::ostream& err, bool json, const std::string& command, const Context& ctx,
          const Outcome& o) {
    if (json) {
        out << json_io::envelope(command, ctx.input, o.result, ctx.warnings).dump(2) << "\n";
        return;
    }
    for (const auto& w : ctx.warnings) err << "warning: " << w << "\n";
    out << o.text << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Piecewise-affine permutations of [1, n] and their lifts to F_q", "papermute"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string format = "text";
    if (const char* env = std::getenv("PAPERMUTE_FORMAT"); env && *env) format = env;
    app.add_option("--format", format, "Output format: json or text (env PAPERMUTE_FORMAT)")
        ->check(CLI::IsMember({"json", "text"}));
    bool check = false;
    app.add_flag("--check", check, "Compare against the brute-force oracle; exit 3 on mismatch");

    std::map<std::string, std::string> values;
    for (const auto& [flag, help] : kFlags) app.add_option(flag, values[flag], help);

    std::string command;
    std::map<std::string, CLI::App*> groups;
    for (const auto& [name, cmd] : commands()) {
        // Walk "pap two-reducible build" down the subcommand tree.
        std::stringstream words(name);
        std::string word, path;
        CLI::App* parent = &app;
        while (words >> word) {
            path += (path.empty() ? "" : " ") + word;
            auto& node = groups[path];
            if (!node) {
                node = parent->add_subcommand(word, group_help(path));
                node->fallthrough();
                node->require_subcommand(path == name ? 0 : 1);
            }
            parent = node;
        }
        parent->callback([&command, name = name] { command = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    if (format != "json" && format != "text") {
        err << "error: PAPERMUTE_FORMAT must be json or text, got \"" << format << "\"\n";
        return kExitInvalid;
    }
    const bool json = format == "json";
    const Command& cmd = commands().at(command);

    Context ctx{app, values, check};
    for (const auto& [flag, help] : kFlags)
        if (ctx.has(flag) && std::find(cmd.flags.begin(), cmd.flags.end(), flag) == cmd.flags.end())
            ctx.warnings.push_back(flag + " is not used by `" + command + "`; ignored");
    if (check && !cmd.checkable) {
        ctx.warnings.push_back("--check has no oracle comparison for `" + command + "`; ignored");
        ctx.check = false;
    }

    const auto fail = [&](int code, const std::string& message, Json detail) {
        if (json) {
            Json result{{"error", message}};
            for (auto& [k, v] : detail.items()) result[k] = v;
            out << json_io::envelope(command, ctx.input, result, ctx.warnings).dump(2) << "\n";
        } else {
            for (const auto& w : ctx.warnings) err << "warning: " << w << "\n";
            err << "error: " << message << "\n";
        }
        return code;
    };

    try {
        const Outcome o = cmd.handler(ctx);
        emit(out, err, json, command, ctx, o);
        if (o.mismatch) {
            if (!json) err << "error: oracle mismatch: " << *o.mismatch << "\n";
            return kExitMismatch;
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        return fail(kExitInvalid, e.what(), Json{{"violations", json_io::to_json(e.violations())}});
    } catch (const BudgetExceeded& e) {
        return fail(kExitInvalid, e.what(), Json{{"search_space", e.search_space()}});
    } catch (const InvalidArgument& e) {
        return fail(kExitInvalid, e.what(), Json::object());
    } catch (const std::exception& e) {
        return fail(kExitInternal, std::string("internal error: ") + e.what(), Json::object());
    }
}

}  // namespace papermute::cli
