#include <papermute/arith.hpp>

#include <boost/container_hash/hash.hpp>

#include <unordered_map>

namespace papermute::arith {

SplitN split_n(std::int64_t n, std::int64_t m) {
    if (m <= 1) throw InvalidArgument("split_n: m must exceed 1, got " + std::to_string(m));
    if (n < 1 || n % m != 0)
        throw InvalidArgument("split_n: m = " + std::to_string(m) + " does not divide n = " + std::to_string(n));
    const auto [n1, n2] = split_coprime<std::int64_t>(n, n / m);
    return {n1, n2};
}

BigInt mult_order(const BigInt& r, const BigInt& k, const std::optional<BigInt>& bound) {
    if (k < 1) throw InvalidArgument("mult_order: modulus must be positive");
    if (gcd(r, k) != 1)
        throw InvalidArgument("mult_order: gcd(" + r.str() + ", " + k.str() + ") != 1");
    if (k == 1) return 1;
    const BigInt base = floor_mod(r, k);
    // The order is at most k - 1, so the search range is [1, limit].
    const BigInt limit = bound && *bound < k ? *bound : k;

    // Baby steps base^1 .. base^s. A repeat inside them is the order itself;
    // otherwise base^j for j in [0, s) are distinct and the first giant step
    // i with base^(-i s) among them gives the least t = i s + j.
    const BigInt s = boost::multiprecision::sqrt(limit) + 1;
    std::unordered_map<BigInt, BigInt, boost::hash<BigInt>> baby;
    BigInt acc = 1;
    for (BigInt j = 0; j < s; ++j) {
        baby.emplace(acc, j);
        acc = acc * base % k;
        if (acc == 1) {
            if (j + 1 > limit) break;
            return j + 1;
        }
    }
    const BigInt giant = mod_inverse(acc, k);  // acc = base^s
    BigInt target = 1;
    for (BigInt i = 1; i * s <= limit + s; ++i) {
        target = target * giant % k;
        const auto hit = baby.find(target);
        if (hit == baby.end()) continue;
        const BigInt t = i * s + hit->second;
        if (t > limit) break;
        return t;
    }
    if (bound && limit == *bound)
        throw InternalError("mult_order: order of " + r.str() + " modulo " + k.str() + " exceeds bound " + bound->str());
    throw InternalError("mult_order: no order found for unit " + r.str() + " modulo " + k.str());
}

}  // namespace papermute::arith
