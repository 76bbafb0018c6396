#include <papermute/gf.hpp>

#include <papermute/cycles.hpp>

#include <cmath>
#include <utility>

namespace papermute::gf {

namespace {

using i64 = std::int64_t;
using Poly = std::vector<i64>;  // over F_p, low degree first

std::string str(i64 v) { return std::to_string(v); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce_mod_p(Poly f, i64 p) {
    for (auto& c : f) c = arith::floor_mod(c, p);
    trim(f);
    return f;
}

// Remainder of f by the monic g.
Poly poly_rem(Poly f, const Poly& g, i64 p) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t d = f.size(); d-- > dg;) {
        const i64 c = f[d];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dg; ++i) f[d - dg + i] = arith::floor_mod(f[d - dg + i] - c * g[i], p);
    }
    f.resize(std::min(f.size(), dg));
    trim(f);
    return f;
}

i64 checked_power(i64 p, int k) {
    i64 q = 1;
    for (int i = 0; i < k; ++i) {
        if (q > (kMaxModulus + 1) / p)
            throw InvalidArgument("field size " + str(p) + "^" + str(k) + " exceeds the supported maximum");
        q *= p;
    }
    return q;
}

// Digits of t in base p, most significant first: lexicographic order on
// (c_0, ..., c_{k-1}) as t runs upward.
std::vector<i64> lex_digits(i64 t, i64 p, int k) {
    std::vector<i64> out(static_cast<std::size_t>(k));
    for (int i = k; i-- > 0;) {
        out[static_cast<std::size_t>(i)] = t % p;
        t /= p;
    }
    return out;
}

// Adds scale * sum_{j<m} ratio^j x^(e + (q-1) j / m).
void add_coset_sum(FieldPoly& out, i64 m, const FieldElement& scale, i64 exponent, const FieldElement& ratio) {
    const Field& f = out.field();
    const i64 step = (f.q() - 1) / m;
    FieldElement coeff = scale;
    for (i64 j = 0; j < m; ++j) {
        out.add_term(exponent + step * j, coeff);
        coeff = f.mul(coeff, ratio);
    }
}

// (coef / m) x^e E_m(x theta^(-residue)): the piece of a lift acting on the
// coset of exponents = residue (mod m).
void add_branch(FieldPoly& out, const FieldElement& theta, i64 m, const FieldElement& coef, i64 exponent,
                i64 residue) {
    const Field& f = out.field();
    const i64 step = (f.q() - 1) / m;
    const FieldElement scale = f.mul(coef, f.inv(f.constant(m)));
    const FieldElement ratio = f.pow(theta, arith::floor_mod(-residue * step, f.q() - 1));
    add_coset_sum(out, m, scale, exponent, ratio);
}

void require_divides(const Field& field, i64 m) {
    if (m < 1 || (field.q() - 1) % m != 0)
        throw InvalidArgument("m = " + str(m) + " must divide q - 1 = " + str(field.q() - 1));
}

FieldPoly poly_of(const Pap& pap, const Field& field, const FieldElement& theta) {
    FieldPoly out(field);
    const auto& t = pap.triple();
    for (std::size_t i = 0; i < t.a.size(); ++i)
        add_branch(out, theta, t.m, field.pow(theta, t.b[i]), t.a[i], t.c[i]);
    return out;
}

void require_primitive(const Field& field, const FieldElement& theta) {
    if (!is_primitive(field, theta)) throw InvalidArgument("theta = " + field.to_string(theta) + " is not primitive");
}

}  // namespace

bool is_irreducible(i64 p, Poly poly) {
    poly = reduce_mod_p(std::move(poly), p);
    if (poly.size() < 2) return false;
    const i64 lead_inv = arith::mod_inverse(poly.back(), p);
    for (auto& c : poly) c = c * lead_inv % p;
    const int degree = static_cast<int>(poly.size()) - 1;
    for (int d = 1; 2 * d <= degree; ++d) {
        const i64 count = checked_power(p, d);
        for (i64 t = 0; t < count; ++t) {
            Poly divisor = lex_digits(t, p, d);
            divisor.push_back(1);
            if (poly_rem(poly, divisor, p).empty()) return false;
        }
    }
    return true;
}

Poly default_modulus(i64 p, int k) {
    if (!arith::is_prime(p)) throw InvalidArgument("p = " + str(p) + " is not prime");
    if (k < 1) throw InvalidArgument("extension degree must be at least 1");
    const i64 count = checked_power(p, k);
    for (i64 t = 0; t < count; ++t) {
        Poly candidate = lex_digits(t, p, k);
        candidate.push_back(1);
        if (is_irreducible(p, candidate)) return candidate;
    }
    throw InternalError("no irreducible polynomial of degree " + str(k) + " over F_" + str(p));
}

Field::Field(i64 p, int k, Poly modulus) : p_(p), k_(k), q_(checked_power(p, k)), modulus_(std::move(modulus)) {}

Field Field::make(i64 p, int k, std::optional<Poly> modulus) {
    if (!arith::is_prime(p)) throw InvalidArgument("p = " + str(p) + " is not prime");
    if (k < 1) throw InvalidArgument("extension degree must be at least 1");
    checked_power(p, k);
    if (!modulus) return Field(p, k, default_modulus(p, k));

    if (modulus->size() != static_cast<std::size_t>(k) + 1)
        throw InvalidArgument("modulus must have k + 1 = " + str(k + 1) + " coefficients, got " + str(static_cast<i64>(modulus->size())));
    Poly reduced = *modulus;
    for (auto& c : reduced) c = arith::floor_mod(c, p);
    if (reduced.back() != 1) throw InvalidArgument("modulus must be monic");
    if (!is_irreducible(p, reduced)) throw InvalidArgument("modulus is reducible over F_" + str(p));
    return Field(p, k, std::move(reduced));
}

void Field::check(const FieldElement& x) const {
    if (x.coeffs.size() != static_cast<std::size_t>(k_))
        throw InvalidArgument("field element has " + str(static_cast<i64>(x.coeffs.size())) + " coefficients, expected " + str(k_));
}

FieldElement Field::zero() const { return {std::vector<i64>(static_cast<std::size_t>(k_), 0)}; }

FieldElement Field::one() const { return constant(1); }

FieldElement Field::constant(i64 v) const {
    FieldElement out = zero();
    out.coeffs[0] = arith::floor_mod(v, p_);
    return out;
}

FieldElement Field::generator() const {
    if (k_ == 1) return constant(-modulus_[0]);
    FieldElement out = zero();
    out.coeffs[1] = 1;
    return out;
}

FieldElement Field::from_coeffs(const std::vector<i64>& coeffs) const {
    if (coeffs.size() > static_cast<std::size_t>(k_))
        throw InvalidArgument("element has more than k = " + str(k_) + " coefficients");
    FieldElement out = zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] = arith::floor_mod(coeffs[i], p_);
    return out;
}

bool Field::is_zero(const FieldElement& x) const {
    check(x);
    return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](i64 c) { return c == 0; });
}

FieldElement Field::add(const FieldElement& x, const FieldElement& y) const {
    check(x);
    check(y);
    FieldElement out = x;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = (out.coeffs[i] + y.coeffs[i]) % p_;
    return out;
}

FieldElement Field::neg(const FieldElement& x) const {
    check(x);
    FieldElement out = x;
    for (auto& c : out.coeffs) c = c == 0 ? 0 : p_ - c;
    return out;
}

FieldElement Field::sub(const FieldElement& x, const FieldElement& y) const { return add(x, neg(y)); }

FieldElement Field::mul(const FieldElement& x, const FieldElement& y) const {
    check(x);
    check(y);
    const auto k = static_cast<std::size_t>(k_);
    Poly product(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
        if (x.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < k; ++j) product[i + j] = (product[i + j] + x.coeffs[i] * y.coeffs[j]) % p_;
    }
    for (std::size_t d = product.size(); d-- > k;) {
        const i64 c = product[d];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= k; ++i)
            product[d - k + i] = arith::floor_mod(product[d - k + i] - c * modulus_[i], p_);
    }
    product.resize(k);
    return {std::move(product)};
}

FieldElement Field::pow(const FieldElement& x, i64 e) const {
    FieldElement base = e < 0 ? inv(x) : x;
    check(base);
    i64 rest = e < 0 ? -e : e;
    FieldElement out = one();
    while (rest > 0) {
        if (rest & 1) out = mul(out, base);
        base = mul(base, base);
        rest >>= 1;
    }
    return out;
}

FieldElement Field::inv(const FieldElement& x) const {
    if (is_zero(x)) throw InvalidArgument("zero has no inverse");
    return pow(x, q_ - 2);
}

i64 Field::index(const FieldElement& x) const {
    check(x);
    i64 out = 0;
    for (std::size_t i = x.coeffs.size(); i-- > 0;) out = out * p_ + x.coeffs[i];
    return out;
}

FieldElement Field::element(i64 index) const {
    if (index < 0 || index >= q_) throw InvalidArgument("element index " + str(index) + " outside [0, q)");
    FieldElement out = zero();
    for (auto& c : out.coeffs) {
        c = index % p_;
        index /= p_;
    }
    return out;
}

std::string Field::to_string(const FieldElement& x) const {
    check(x);
    if (k_ == 1) return str(x.coeffs[0]);
    std::string out;
    for (std::size_t i = x.coeffs.size(); i-- > 0;) {
        const i64 c = x.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (c != 1 || i == 0) out += str(c);
        if (i >= 1) out += "α";
        if (i >= 2) out += "^" + str(static_cast<i64>(i));
    }
    return out.empty() ? "0" : out;
}

bool is_primitive(const Field& field, const FieldElement& x) {
    if (field.is_zero(x)) return false;
    const i64 order = field.q() - 1;
    for (const auto& [r, e] : arith::factorize(order))
        if (field.pow(x, order / r) == field.one()) return false;
    return true;
}

FieldElement find_primitive(const Field& field) {
    for (i64 v = 1; v < field.p(); ++v) {
        // 1 only qualifies in F_2.
        if (v == 1 && field.q() != 2) continue;
        const FieldElement x = field.constant(v);
        if (is_primitive(field, x)) return x;
    }
    for (i64 t = 0; t < field.q(); ++t) {
        const FieldElement x = field.from_coeffs(lex_digits(t, field.p(), field.k()));
        if (is_primitive(field, x)) return x;
    }
    throw InternalError("no primitive element found");
}

DiscreteLog::DiscreteLog(Field field, FieldElement theta)
    : field_(std::move(field)), theta_(std::move(theta)), step_(0), giant_(field_.one()) {
    require_primitive(field_, theta_);
    const i64 order = field_.q() - 1;
    step_ = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(order))));
    while (step_ * step_ < order) ++step_;
    FieldElement power = field_.one();
    for (i64 j = 0; j < step_; ++j) {
        baby_.emplace(field_.index(power), j);
        power = field_.mul(power, theta_);
    }
    giant_ = field_.inv(power);
}

i64 DiscreteLog::operator()(const FieldElement& x) const {
    if (field_.is_zero(x)) throw InvalidArgument("dlog: zero has no logarithm");
    const i64 order = field_.q() - 1;
    FieldElement y = x;
    for (i64 i = 0; i <= step_; ++i) {
        if (const auto it = baby_.find(field_.index(y)); it != baby_.end()) {
            const i64 e = (i * step_ + it->second) % order;
            return e == 0 ? order : e;
        }
        y = field_.mul(y, giant_);
    }
    throw InternalError("dlog: no logarithm found for " + field_.to_string(x));
}

i64 dlog(const Field& field, const FieldElement& theta, const FieldElement& x) {
    return DiscreteLog(field, theta)(x);
}

FieldElement e_m_eval(const Field& field, i64 m, const FieldElement& z) {
    require_divides(field, m);
    if (field.is_zero(z)) throw InvalidArgument("E_m is evaluated at nonzero elements only");
    const FieldElement t = field.pow(z, (field.q() - 1) / m);

    FieldElement by_sum = field.zero();
    FieldElement term = field.one();
    for (i64 j = 0; j < m; ++j) {
        by_sum = field.add(by_sum, term);
        term = field.mul(term, t);
    }
    const FieldElement by_test = t == field.one() ? field.constant(m) : field.zero();
    if (by_sum != by_test) throw InternalError("E_m: sum and residue test disagree");
    return by_sum;
}

i64 reduce_exponent(i64 e, i64 q) {
    if (e < 0) throw InvalidArgument("negative exponent " + str(e));
    if (e < q) return e;
    return (e - 1) % (q - 1) + 1;
}

void FieldPoly::add_term(i64 exponent, const FieldElement& coeff) {
    if (field_.is_zero(coeff)) return;
    const i64 e = reduce_exponent(exponent, field_.q());
    auto [it, inserted] = terms_.try_emplace(e, coeff);
    if (inserted) return;
    it->second = field_.add(it->second, coeff);
    if (field_.is_zero(it->second)) terms_.erase(it);
}

FieldPoly& FieldPoly::operator+=(const FieldPoly& other) {
    if (!(other.field_ == field_)) throw InvalidArgument("adding polynomials over different fields");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

FieldElement FieldPoly::evaluate(const FieldElement& x) const {
    FieldElement out = field_.zero();
    for (const auto& [e, c] : terms_) out = field_.add(out, field_.mul(c, field_.pow(x, e)));
    return out;
}

std::string FieldPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += " + ";
        const bool constant = std::all_of(c.coeffs.begin() + 1, c.coeffs.end(), [](i64 v) { return v == 0; });
        if (!constant)
            out += "(" + field_.to_string(c) + ")";
        else if (c.coeffs[0] != 1 || e == 0)
            out += str(c.coeffs[0]);
        if (e == 1)
            out += "x";
        else if (e > 1)
            out += "x^" + str(e);
    }
    return out;
}

LiftSpec::LiftSpec(Pap pap, Field field, FieldElement theta)
    : pap_(std::move(pap)), field_(std::move(field)), theta_(std::move(theta)) {
    if (pap_.n() != field_.q() - 1)
        throw InvalidArgument("lift needs n = q - 1 = " + str(field_.q() - 1) + ", got n = " + str(pap_.n()));
    log_ = std::make_shared<const DiscreteLog>(field_, theta_);
}

FieldElement lift_eval(const LiftSpec& spec, const FieldElement& x) {
    const Field& f = spec.field();
    if (f.is_zero(x)) return f.zero();
    return f.pow(spec.theta(), spec.pap()(spec.log()(x)));
}

FieldPoly lift_poly(const LiftSpec& spec) { return poly_of(spec.pap(), spec.field(), spec.theta()); }

FieldPoly lift_poly_inverse(const LiftSpec& spec) {
    return poly_of(invert(spec.pap()), spec.field(), spec.theta());
}

TwoRulePolys two_reducible_lift_poly(const Field& field, const FieldElement& theta, i64 m,
                                     const ReducedParams& params) {
    require_primitive(field, theta);
    const i64 n = field.q() - 1;
    two_reducible_build(n, m, params);

    TwoRulePolys out{FieldPoly(field), FieldPoly(field)};
    const FieldElement tb = field.pow(theta, params.b);
    out.forward.add_term(params.a, tb);
    add_branch(out.forward, theta, m, field.pow(theta, params.b0), params.a0, m);
    add_branch(out.forward, theta, m, field.neg(tb), params.a, m);

    const auto inv = two_reducible_invert(n, m, params);
    const FieldElement tB = field.pow(theta, inv.B);
    out.inverse.add_term(inv.A, tB);
    add_branch(out.inverse, theta, m, field.pow(theta, inv.B0), inv.A0, inv.branch_residue);
    add_branch(out.inverse, theta, m, field.neg(tB), inv.A, inv.branch_residue);
    return out;
}

CycleType lift_cycle_type(const LiftSpec& spec) {
    CycleType out = cycle_type(spec.pap());
    out.add(1);
    return out;
}

ValidationReport equal_length_check(const Pap& pap, i64 ell) {
    if (!arith::is_prime(ell)) throw InvalidArgument("ell = " + str(ell) + " is not prime");
    const PrincipalData pd = principal(pap);
    const i64 n = pap.n(), m = pap.m();
    ValidationReport report;
    if (ell != m) report.violations.push_back({"(i) ell = m", std::nullopt, "ell = " + str(ell) + ", m = " + str(m)});
    const BigInt residue = arith::floor_mod(pd.product, BigInt(n / m));
    if ((pd.product - 1) % (n / m) != 0)
        report.violations.push_back({"(ii) P = 1 (mod (q-1)/m)", std::nullopt,
                                     "P = " + residue.str() + " (mod " + str(n / m) + ")"});
    if (pd.sum % n != 0)
        report.violations.push_back({"(iii) S = 0 (mod q-1)", std::nullopt, "S = " + str(pd.sum) + " (mod " + str(n) + ")"});
    return report;
}

Involution involution_build(const Field& field, const FieldElement& theta, const ReducedParams& params) {
    const i64 q = field.q();
    if (q % 4 != 3)
        throw ValidationError({{"q = 3 (mod 4)", std::nullopt, "q = " + str(q % 4) + " (mod 4)"}});
    const i64 n = q - 1, half = n / 2;
    Pap pap = two_reducible_build(n, 2, params);

    std::vector<Violation> failures;
    const i64 product = arith::floor_mod(params.a0 * params.a, half);
    if (product != 1 % half)
        failures.push_back({"a0 a = 1 (mod (q-1)/2)", std::nullopt, "a0 a = " + str(product) + " (mod " + str(half) + ")"});
    const i64 sum = principal(pap).sum;
    if (sum % n != 0)
        failures.push_back({"S = 0 (mod q-1)", std::nullopt, "S = " + str(sum % n) + " (mod " + str(n) + ")"});
    if (!failures.empty()) throw ValidationError(std::move(failures));

    FieldPoly poly = two_reducible_lift_poly(field, theta, 2, params).forward;
    return {LiftSpec(std::move(pap), field, theta), std::move(poly)};
}

ExplicitFamily explicit_family(i64 p, int k, i64 m, i64 theta_m, i64 a0, i64 a, i64 b, std::optional<Poly> modulus) {
    Field field = Field::make(p, k, std::move(modulus));
    const i64 q = field.q();
    if (m < 2) throw InvalidArgument("m must be at least 2");

    std::vector<Violation> failures;
    if ((p - 1) % m != 0) failures.push_back({"m | p - 1", std::nullopt, "m = " + str(m) + ", p - 1 = " + str(p - 1)});

    const i64 t = arith::floor_mod(theta_m, p);
    bool order_m = t != 0 && arith::gcd(t, p) == 1;
    if (order_m) {
        const auto power = [&](i64 e) { return static_cast<i64>(boost::multiprecision::powm(BigInt(t), BigInt(e), BigInt(p))); };
        order_m = power(m) == 1;
        for (const auto& [r, e] : arith::factorize(m)) order_m = order_m && power(m / r) != 1;
    }
    if (!order_m) failures.push_back({"theta_m has order m in F_p", std::nullopt, "theta_m = " + str(t)});
    if (b <= 0 || b >= m) failures.push_back({"0 < b < m", std::nullopt, "b = " + str(b)});
    if (arith::gcd(b, m) != 1) failures.push_back({"gcd(b, m) = 1", std::nullopt, "b = " + str(b)});
    if (arith::floor_mod(a - 1, arith::rad2(m)) != 0)
        failures.push_back({"a = 1 (mod rad2(m))", std::nullopt, "rad2(m) = " + str(arith::rad2(m))});
    if ((q - 1) % m == 0) {
        const i64 n1 = arith::split_n(q - 1, m).n1;
        if (arith::gcd(a * a0 % n1, n1) != 1)
            failures.push_back({"gcd(a a0, n1) = 1", std::nullopt, "n1 = " + str(n1)});
    }
    if (!failures.empty()) throw ValidationError(std::move(failures));

    const ReducedParams reduced{a0, a, b * ((q - 1) / m), b * ((q - 1) / m)};
    const Pap pap = two_reducible_build(q - 1, m, reduced);

    FieldPoly poly(field);
    const FieldElement scale = field.pow(field.constant(t), b);
    const FieldElement scale_m = field.mul(scale, field.inv(field.constant(m)));
    poly.add_term(a, scale);
    add_coset_sum(poly, m, scale_m, a0, field.one());
    add_coset_sum(poly, m, field.neg(scale_m), a, field.one());

    BigInt product = a0;
    for (i64 i = 1; i < m; ++i) product *= a;
    const PrincipalData pd = principal_from(q - 1, m, product, q - 1);
    const PrincipalData direct = principal(pap);
    if (direct.product != pd.product || direct.sum != pd.sum)
        throw InternalError("explicit_family: principal data of the underlying p.a.p. is (" + direct.product.str() + ", " +
                            str(direct.sum) + "), expected (" + product.str() + ", " + str(q - 1) + ")");
    CycleType cycles = cycle_type(pd);
    cycles.add(1);
    return {std::move(field), reduced, std::move(poly), std::move(cycles)};
}

}  // namespace papermute::gf
