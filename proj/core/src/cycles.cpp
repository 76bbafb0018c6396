#include <papermute/cycles.hpp>

#include <algorithm>
#include <tuple>

namespace papermute {

using arith::floor_mod;
using arith::gcd;

namespace {

using i64 = std::int64_t;

i64 to_i64(const BigInt& v) { return v.convert_to<i64>(); }

void require_multiple(const PrincipalData& pd, i64 x) {
    if (x < 1 || x > pd.n || x % pd.m != 0)
        throw InvalidArgument("x = " + std::to_string(x) + " must be a multiple of m = " + std::to_string(pd.m) +
                              " in [1, " + std::to_string(pd.n) + "]");
}

void require_product_above_one(const PrincipalData& pd) {
    if (pd.product <= 1) throw InvalidArgument("principal product is 1; the order-based formulas need P > 1");
}

CycleType uniform_cycle_type(const PrincipalData& pd) {
    const i64 length = pd.m * (pd.n / gcd(pd.n, pd.sum));
    if (pd.n % length != 0) throw InternalError("cycle length " + std::to_string(length) + " does not divide n");
    CycleType out;
    out.add(length, pd.n / length);
    return out;
}

}  // namespace

PrincipalData principal_from(i64 n, i64 m, BigInt product, i64 sum) {
    require_shape(n, m);
    if (product < 1) throw InvalidArgument("principal product must be positive");
    if (sum < 1 || sum > n || sum % m != 0)
        throw InvalidArgument("principal sum " + std::to_string(sum) + " must be a multiple of m in [1, n]");

    PrincipalData pd{n, m, std::move(product), sum, 0, 0, 0};
    if (pd.product > 1) {
        pd.g = gcd(BigInt(sum / m), BigInt(pd.product - 1));
        const BigInt alpha = (pd.product - 1) / pd.g;
        std::tie(pd.n1, pd.n2) = arith::split_coprime(BigInt(n / m), alpha);
    }
    return pd;
}

PrincipalData principal(const Pap& pap) {
    const auto& t = pap.triple();
    const auto m = static_cast<std::size_t>(t.m);

    BigInt product = 1;
    for (const i64 a : t.a) product *= a;

    // Compose the branches in class order, starting from class m.
    std::size_t i = static_cast<std::size_t>(std::find(t.c.begin(), t.c.end(), t.m) - t.c.begin());
    i64 offset = 0;
    for (std::size_t step = 0; step < m; ++step, i = (i + 1) % m) offset = (t.a[i] * offset + t.b[i]) % t.n;
    const i64 sum = offset == 0 ? t.n : offset;
    if (sum % t.m != 0) throw InternalError("principal sum " + std::to_string(sum) + " is not a multiple of m");

    return principal_from(t.n, t.m, std::move(product), sum);
}

std::int64_t iterate_mk(const Pap& pap, i64 x, const BigInt& k) {
    const i64 n = pap.n();
    if (x < 1 || x > n || x % pap.m() != 0)
        throw InvalidArgument("iterate_mk: x = " + std::to_string(x) + " is not a multiple of m in [1, n]");
    if (k < 0) throw InvalidArgument("iterate_mk: k must be nonnegative");
    if (k == 0) return x;

    const PrincipalData pd = principal(pap);
    const BigInt bn = n;
    if (pd.product == 1) {
        BigInt total_b = 0;
        for (const i64 b : pap.triple().b) total_b += b;
        return to_i64(arith::psi(BigInt(floor_mod(BigInt(x + k * total_b), bn) + bn), bn));
    }
    if (pd.product_is_one_mod_n()) return to_i64(arith::psi(BigInt(floor_mod(BigInt(x + k * pd.sum), bn) + bn), bn));

    // (P^k - 1)/(P - 1) mod n, read off P^k mod n (P - 1).
    const BigInt pm1 = pd.product - 1;
    const BigInt modulus = bn * pm1;
    const BigInt pk = boost::multiprecision::powm(pd.product, k, modulus);
    const BigInt geometric = floor_mod(BigInt(pk - 1), modulus) / pm1;
    const BigInt value = floor_mod(BigInt(pk * x + geometric * pd.sum), bn);
    return to_i64(value == 0 ? bn : value);
}

BigInt kappa(const PrincipalData& pd, i64 x) {
    require_product_above_one(pd);
    require_multiple(pd, x);
    const BigInt pm1 = pd.product - 1;
    const BigInt top = BigInt(pd.n) * pm1;
    return top / gcd(top, BigInt(x * pm1 + pd.sum));
}

BigInt kappa(const Pap& pap, i64 x) { return kappa(principal(pap), x); }

BigInt n0(const PrincipalData& pd, i64 x) {
    require_product_above_one(pd);
    require_multiple(pd, x);
    const BigInt alpha = (pd.product - 1) / pd.g;
    const BigInt beta = BigInt(pd.sum / pd.m) / pd.g;
    return gcd(BigInt(BigInt(pd.n / pd.m) * alpha), BigInt(alpha * (x / pd.m) + beta));
}

BigInt kappa_from_n0(const PrincipalData& pd, i64 x) {
    const BigInt numerator = BigInt(pd.n / pd.m) * (pd.product - 1);
    const BigInt denominator = pd.g * n0(pd, x);
    if (numerator % denominator != 0) throw InternalError("kappa_from_n0: non-integral quotient");
    return numerator / denominator;
}

std::int64_t cycle_length(const Pap& pap, i64 x) {
    if (x < 1 || x > pap.n()) throw InvalidArgument("x = " + std::to_string(x) + " is outside [1, n]");
    // Every cycle meets a multiple of m within m - 1 steps.
    i64 z = x;
    for (i64 step = 0; z % pap.m() != 0; ++step) {
        if (step >= pap.m()) throw InternalError("cycle_length: no multiple of m reached from x");
        z = pap(z);
    }
    const PrincipalData pd = principal(pap);
    if (pd.product_is_one_mod_n()) return pd.m * (pd.n / gcd(pd.n, pd.sum));
    const BigInt order = arith::mult_order(pd.product, kappa(pd, z), BigInt(pd.n / pd.m));
    return pd.m * to_i64(order);
}

CycleType divisor_sum_cycle_type(const PrincipalData& pd) {
    require_product_above_one(pd);
    const BigInt alpha = (pd.product - 1) / pd.g;
    const BigInt bound = pd.n / pd.m;

    CycleType out;
    for (const BigInt& d : arith::divisors(pd.n2)) {
        const BigInt eta = pd.n1 * alpha * d;
        const BigInt order = arith::mult_order(pd.product, eta, bound);
        const BigInt points = arith::phi(d) * pd.n1;
        if (points % order != 0)
            throw InternalError("cycle count phi(d) N1 / ord is not an integer for d = " + d.str());
        out.add(pd.m * to_i64(order), to_i64(points / order));
    }
    if (out.points() != pd.n)
        throw InternalError("cycle type covers " + std::to_string(out.points()) + " points, expected " +
                            std::to_string(pd.n));
    return out;
}

CycleType cycle_type(const PrincipalData& pd) {
    if (pd.product_is_one_mod_n()) return uniform_cycle_type(pd);
    return divisor_sum_cycle_type(pd);
}

CycleType cycle_type(const Pap& pap) { return cycle_type(principal(pap)); }

GcdClassCount gcd_class_count(const BigInt& alpha, const BigInt& beta, const BigInt& gamma, const BigInt& d) {
    if (alpha < 1 || beta < 1 || gamma < 1 || d < 1)
        throw InvalidArgument("gcd_class_count: alpha, beta, gamma, d must be positive");
    if (gcd(alpha, beta) != 1) throw InvalidArgument("gcd_class_count: gcd(alpha, beta) != 1");
    if (gamma % alpha != 0) throw InvalidArgument("gcd_class_count: alpha does not divide gamma");
    auto [gamma1, gamma2] = arith::split_coprime(gamma, alpha);
    if (gamma2 % d != 0) throw InvalidArgument("gcd_class_count: d = " + d.str() + " does not divide gamma2 = " + gamma2.str());
    BigInt count = arith::phi(d) * gamma1;
    BigInt reduced = count / alpha;
    return {std::move(gamma1), std::move(gamma2), std::move(count), std::move(reduced)};
}

std::vector<BigInt> gcd_class_solutions(const BigInt& alpha, const BigInt& beta, const BigInt& gamma, const BigInt& d) {
    const auto counted = gcd_class_count(alpha, beta, gamma, d);
    const BigInt target = counted.gamma2 / d;
    std::vector<BigInt> out;
    for (BigInt y = 1; y <= gamma; ++y)
        if (gcd(BigInt(alpha * y + beta), gamma) == target) out.push_back(y);
    return out;
}

}  // namespace papermute
