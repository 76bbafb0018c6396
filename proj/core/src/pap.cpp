#include <papermute/pap.hpp>

#include <algorithm>
#include <numeric>

namespace papermute {

using arith::floor_mod;
using arith::gcd;

namespace {

using i64 = std::int64_t;

std::string str(i64 v) { return std::to_string(v); }

// psi_k of an arbitrary (possibly non-positive) integer.
i64 wrap(i64 v, i64 k) { return floor_mod(v - 1, k) + 1; }

std::size_t next(std::size_t i, std::size_t m) { return (i + 1) % m; }
std::size_t prev(std::size_t i, std::size_t m) { return (i + m - 1) % m; }

void require_lengths(const AdmissibleTriple& t) {
    const auto m = static_cast<std::size_t>(t.m);
    if (t.a.size() != m || t.b.size() != m || t.c.size() != m)
        throw InvalidArgument("triple vectors must have length m = " + str(t.m) + " (got |a| = " +
                              str(static_cast<i64>(t.a.size())) + ", |b| = " + str(static_cast<i64>(t.b.size())) +
                              ", |c| = " + str(static_cast<i64>(t.c.size())) + ")");
    for (std::size_t i = 0; i < m; ++i) {
        const auto idx = str(static_cast<i64>(i + 1));
        if (t.a[i] < 1 || t.a[i] > t.n)
            throw InvalidArgument("a_" + idx + " = " + str(t.a[i]) + " is outside [1, " + str(t.n) + "]");
        if (t.b[i] < 1 || t.b[i] > t.n)
            throw InvalidArgument("b_" + idx + " = " + str(t.b[i]) + " is outside [1, " + str(t.n) + "]");
        if (t.c[i] < 1 || t.c[i] > t.m)
            throw InvalidArgument("c_" + idx + " = " + str(t.c[i]) + " is outside [1, " + str(t.m) + "]");
    }
}

void require_param_range(i64 n, const ReducedParams& p) {
    const std::pair<const char*, i64> entries[] = {{"a0", p.a0}, {"a", p.a}, {"b0", p.b0}, {"b", p.b}};
    for (const auto& [name, v] : entries)
        if (v < 1 || v > n)
            throw InvalidArgument(std::string(name) + " = " + str(v) + " is outside [1, " + str(n) + "]");
}

std::vector<i64> table_of(const AdmissibleTriple& t) {
    std::vector<std::size_t> index(static_cast<std::size_t>(t.m));
    for (std::size_t i = 0; i < t.c.size(); ++i) index[static_cast<std::size_t>(t.c[i] - 1)] = i;
    std::vector<i64> out(static_cast<std::size_t>(t.n));
    for (i64 x = 1; x <= t.n; ++x) {
        const std::size_t i = index[static_cast<std::size_t>((x - 1) % t.m)];
        out[static_cast<std::size_t>(x - 1)] = wrap(t.a[i] * x + t.b[i], t.n);
    }
    return out;
}

}  // namespace

void require_shape(i64 n, i64 m) {
    if (m <= 1) throw InvalidArgument("m must exceed 1, got m = " + str(m));
    if (n < m || n % m != 0) throw InvalidArgument("m = " + str(m) + " does not divide n = " + str(n));
    if (n > kMaxModulus) throw InvalidArgument("n = " + str(n) + " exceeds the supported maximum " + str(kMaxModulus));
}

ValidationReport validate_triple(const AdmissibleTriple& t) {
    require_shape(t.n, t.m);
    require_lengths(t);

    ValidationReport report;
    const auto m = static_cast<std::size_t>(t.m);
    const i64 n1 = arith::split_n(t.n, t.m).n1;

    std::vector<bool> seen(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        auto slot = seen[static_cast<std::size_t>(t.c[i] - 1)];
        if (slot)
            report.violations.push_back(
                {"c is a permutation of [1, m]", i + 1, "value " + str(t.c[i]) + " repeats an earlier entry"});
        slot = true;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (gcd(t.a[i], n1) != 1)
            report.violations.push_back({"gcd(a_i, n1) = 1", i + 1,
                                         "gcd(" + str(t.a[i]) + ", " + str(n1) + ") = " + str(gcd(t.a[i], n1))});
    }
    for (std::size_t i = 0; i < m; ++i) {
        const i64 want = floor_mod(t.c[next(i, m)] - t.a[i] * t.c[i], t.m);
        if (floor_mod(t.b[i], t.m) != want)
            report.violations.push_back({"b_i = c_{i+1} - a_i c_i (mod m)", i + 1,
                                         "b_i = " + str(t.b[i]) + " is " + str(floor_mod(t.b[i], t.m)) +
                                             " mod " + str(t.m) + ", expected " + str(want)});
    }
    return report;
}

Pap::Pap(AdmissibleTriple triple) : triple_(std::move(triple)) {
    auto report = validate_triple(triple_);
    if (!report.ok()) throw ValidationError(std::move(report.violations));
    class_index_.resize(static_cast<std::size_t>(m()));
    for (std::size_t i = 0; i < triple_.c.size(); ++i) class_index_[static_cast<std::size_t>(triple_.c[i] - 1)] = i;
}

std::int64_t Pap::apply(i64 x) const {
    if (x < 1 || x > n()) throw InvalidArgument("x = " + str(x) + " is outside [1, " + str(n()) + "]");
    return (*this)(x);
}

std::vector<std::int64_t> Pap::table() const {
    std::vector<i64> out(static_cast<std::size_t>(n()));
    for (i64 x = 1; x <= n(); ++x) out[static_cast<std::size_t>(x - 1)] = (*this)(x);
    return out;
}

Pap invert(const Pap& pap) {
    const auto& t = pap.triple();
    const auto m = static_cast<std::size_t>(t.m);
    const i64 n1 = arith::split_n(t.n, t.m).n1;

    AdmissibleTriple inv{t.n, t.m, std::vector<i64>(m), std::vector<i64>(m), std::vector<i64>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t p = prev(i, m);
        const i64 A = arith::mod_inverse(t.a[p], n1);
        const auto B = arith::crt2(floor_mod(t.c[p] - A * t.c[i], t.m), t.m, floor_mod(-A * t.b[p], n1), n1);
        if (!B) throw InternalError("invert: inverse offset system has no solution at i = " + str(static_cast<i64>(i + 1)));
        // Reversal: position i of the forward indexing lands at m - 1 - i.
        inv.a[m - 1 - i] = A;
        inv.b[m - 1 - i] = *B;
        inv.c[m - 1 - i] = t.c[i];
    }
    return Pap(std::move(inv));
}

AdmissibleTriple canonical_shift(const AdmissibleTriple& t) {
    const auto it = std::find(t.c.begin(), t.c.end(), t.m);
    if (it == t.c.end()) throw InvalidArgument("canonical_shift: c does not contain m");
    const auto k = static_cast<std::ptrdiff_t>(it - t.c.begin());
    AdmissibleTriple out = t;
    std::rotate(out.a.begin(), out.a.begin() + k, out.a.end());
    std::rotate(out.b.begin(), out.b.begin() + k, out.b.end());
    std::rotate(out.c.begin(), out.c.begin() + k, out.c.end());
    return out;
}

std::optional<std::int64_t> equivalent(const AdmissibleTriple& lhs, const AdmissibleTriple& rhs) {
    if (lhs.n != rhs.n || lhs.m != rhs.m)
        throw InvalidArgument("equivalent: triples have different (n, m): (" + str(lhs.n) + ", " + str(lhs.m) +
                              ") vs (" + str(rhs.n) + ", " + str(rhs.m) + ")");
    for (const auto* t : {&lhs, &rhs}) {
        auto report = validate_triple(*t);
        if (!report.ok()) throw ValidationError(std::move(report.violations));
    }
    const i64 n = lhs.n;
    const auto m = static_cast<std::size_t>(lhs.m);
    const i64 block = n / lhs.m;

    std::optional<i64> shift;
    for (std::size_t t = 1; t <= m && !shift; ++t) {
        bool holds = true;
        for (std::size_t i = 0; i < m && holds; ++i) {
            const std::size_t j = (i + t) % m;
            holds = lhs.c[i] == rhs.c[j] && floor_mod(lhs.a[i] - rhs.a[j], block) == 0 &&
                    rhs.b[j] == wrap(lhs.a[i] * lhs.c[i] + lhs.b[i] - rhs.a[j] * rhs.c[j], n);
        }
        if (holds) shift = static_cast<i64>(t);
    }

    if (shift.has_value() != (table_of(lhs) == table_of(rhs)))
        throw InternalError("equivalent: shift conditions disagree with the induced permutations");
    return shift;
}

BigInt count_admissible_triples(i64 n, i64 m) {
    require_shape(n, m);
    const auto [n1, n2] = arith::split_n(n, m);
    BigInt fact = 1;
    for (i64 k = 2; k <= m; ++k) fact *= k;
    const BigInt per_entry = BigInt(n / m) * n2 * arith::phi(n1);
    return fact * boost::multiprecision::pow(per_entry, static_cast<unsigned>(m));
}

BigInt count_paps(i64 n, i64 m) {
    require_shape(n, m);
    const auto [n1, n2] = arith::split_n(n, m);
    BigInt fact = 1;
    for (i64 k = 2; k < m; ++k) fact *= k;
    const auto e = static_cast<unsigned>(m);
    const BigInt numerator = fact * boost::multiprecision::pow(BigInt(n) * n2 * arith::phi(n1), e);
    const BigInt denominator = boost::multiprecision::pow(BigInt(m), 2 * e);
    if (numerator % denominator != 0) throw InternalError("count_paps: closed form is not an integer");
    return numerator / denominator;
}

ValidationReport check_reduced(i64 n, i64 m, const ReducedParams& p) {
    require_shape(n, m);
    require_param_range(n, p);

    if (m == 2) {
        AdmissibleTriple t{n, m, {p.a0, p.a}, {p.b0, p.b}, {2, arith::psi<i64>(p.b0, 2)}};
        return validate_triple(t);
    }

    ValidationReport report;
    const i64 n1 = arith::split_n(n, m).n1;
    const i64 r2 = arith::rad2(m);
    auto fail = [&](std::string condition, std::string detail) {
        report.violations.push_back({std::move(condition), std::nullopt, std::move(detail)});
    };
    if (gcd(p.b, m) != 1) fail("(i) gcd(b, m) = 1", "gcd(" + str(p.b) + ", " + str(m) + ") = " + str(gcd(p.b, m)));
    if (gcd(p.b0, m) != 1)
        fail("(i) gcd(b0, m) = 1", "gcd(" + str(p.b0) + ", " + str(m) + ") = " + str(gcd(p.b0, m)));
    if (floor_mod(p.b - p.b0, m) != 0)
        fail("(i) b = b0 (mod m)", str(p.b) + " and " + str(p.b0) + " differ modulo " + str(m));
    if (floor_mod(p.a - 1, r2) != 0)
        fail("(ii) a = 1 (mod rad2(m))", "a = " + str(p.a) + " is " + str(floor_mod(p.a, r2)) + " mod " + str(r2));
    if (gcd(p.a, n1) != 1) fail("(iii) gcd(a, n1) = 1", "gcd(" + str(p.a) + ", " + str(n1) + ") = " + str(gcd(p.a, n1)));
    if (gcd(p.a0, n1) != 1)
        fail("(iii) gcd(a0, n1) = 1", "gcd(" + str(p.a0) + ", " + str(n1) + ") = " + str(gcd(p.a0, n1)));
    return report;
}

AdmissibleTriple two_reducible_triple(i64 n, i64 m, const ReducedParams& p) {
    auto report = check_reduced(n, m, p);
    if (!report.ok()) throw ValidationError(std::move(report.violations));

    const auto size = static_cast<std::size_t>(m);
    AdmissibleTriple t{n, m, std::vector<i64>(size, p.a), std::vector<i64>(size, p.b), std::vector<i64>(size)};
    t.a[0] = p.a0;
    t.b[0] = p.b0;
    t.c[0] = m;
    if (m == 2) {
        t.c[1] = arith::psi<i64>(p.b0, 2);
        return t;
    }
    // c_i = psi_m(b (a^{i-2} + ... + a + 1)) for i >= 2.
    i64 geometric = 1;
    for (std::size_t i = 1; i < size; ++i) {
        t.c[i] = arith::psi<i64>(floor_mod(p.b * geometric, m) + m, m);
        geometric = floor_mod(geometric * p.a + 1, m);
    }
    return t;
}

Pap two_reducible_build(i64 n, i64 m, const ReducedParams& p) {
    auto t = two_reducible_triple(n, m, p);
    try {
        return Pap(std::move(t));
    } catch (const ValidationError& e) {
        throw InternalError(std::string("two_reducible_build: reduced conditions hold but the triple is not admissible: ") +
                            e.what());
    }
}

std::int64_t TwoReducibleInverse::apply(i64 x) const {
    if (x < 1 || x > n) throw InvalidArgument("x = " + str(x) + " is outside [1, " + str(n) + "]");
    if (arith::psi(x, m) == branch_residue) return wrap(A0 * x + B0, n);
    return wrap(A * x + B, n);
}

TwoReducibleInverse two_reducible_invert(i64 n, i64 m, const ReducedParams& p) {
    const auto t = two_reducible_triple(n, m, p);
    const i64 n1 = arith::split_n(n, m).n1;

    TwoReducibleInverse inv{n, m, 0, 0, 0, 0, t.c[1]};
    inv.A0 = arith::mod_inverse(p.a0, n1);
    const auto B0 = arith::crt2(floor_mod(t.c[0] - inv.A0 * t.c[1], m), m, floor_mod(-inv.A0 * p.b0, n1), n1);
    if (!B0) throw InternalError("two_reducible_invert: no solution for B0");
    inv.B0 = *B0;

    if (m == 2) {
        // No coprimality of a with m here; use the general per-branch inverse.
        inv.A = arith::mod_inverse(p.a, n1);
        const auto B = arith::crt2(floor_mod(t.c[1] - inv.A * t.c[0], m), m, floor_mod(-inv.A * p.b, n1), n1);
        if (!B) throw InternalError("two_reducible_invert: no solution for B");
        inv.B = *B;
    } else {
        inv.A = arith::mod_inverse(p.a, arith::lcm(m, n1));
        inv.B = wrap(-inv.A * p.b, n);
    }
    return inv;
}

BigInt two_reducible_lower_bound(i64 n, i64 m) {
    require_shape(n, m);
    const i64 block = n / m;
    return BigInt(arith::phi(block)) * arith::phi(m) * block * block;
}

}  // namespace papermute
