#pragma once

// Elementary number theory shared by every other module.
//
// Most routines are templates over the integer type so the same code serves
// word-sized parameters (n, m, vector entries) and exact big integers (the
// principal product and everything derived from it).

#include <papermute/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace papermute {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
concept Integer = std::same_as<T, std::int64_t> || std::same_as<T, BigInt>;

namespace arith {

inline std::string to_string(std::int64_t v) { return std::to_string(v); }
inline std::string to_string(const BigInt& v) { return v.str(); }

template <Integer Int>
Int abs_value(const Int& a) {
    return a < 0 ? Int(-a) : a;
}

template <Integer Int>
Int gcd(Int a, Int b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        Int r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

template <Integer Int>
Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return Int(0);
    return abs_value(Int(a / gcd(a, b) * b));
}

/// Representative of a modulo k in [0, k). k must be positive.
template <Integer Int>
Int floor_mod(const Int& a, const Int& k) {
    Int r = a % k;
    if (r < 0) r += k;
    return r;
}

/// Reduction modulo k with representatives in [1, k]: multiples of k map to k.
/// Defined for a >= 1 and k >= 2; shift negative intermediates with
/// floor_mod first.
template <Integer Int>
Int psi(const Int& a, const Int& k) {
    if (k < 2) throw InvalidArgument("psi: modulus must be at least 2, got " + to_string(k));
    if (a < 1) throw InvalidArgument("psi: argument must be positive, got " + to_string(a));
    Int r = a % k;
    return r == 0 ? k : r;
}

/// Trial-division factorization, primes in increasing order.
template <Integer Int>
std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n < 1) throw InvalidArgument("factorize: argument must be positive, got " + to_string(n));
    std::vector<std::pair<Int, unsigned>> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1U);
    return out;
}

template <Integer Int>
bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Product of the distinct primes dividing n; rad(1) = 1.
template <Integer Int>
Int rad(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factorize(n)) r *= p;
    return r;
}

/// rad(m) * gcd(m, 2).
template <Integer Int>
Int rad2(const Int& m) {
    return rad(m) * gcd(m, Int(2));
}

/// Euler's totient.
template <Integer Int>
Int phi(const Int& n) {
    Int r = n;
    for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

/// All positive divisors in increasing order.
template <Integer Int>
std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        Int pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Largest e with p^e | n.
template <Integer Int>
unsigned nu_p(const Int& p, Int n) {
    if (!is_prime(p)) throw InvalidArgument("nu_p: " + to_string(p) + " is not prime");
    if (n < 1) throw InvalidArgument("nu_p: argument must be positive, got " + to_string(n));
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

/// Inverse of a modulo k, taken in [1, k] (so the inverse modulo 1 is 1).
template <Integer Int>
Int mod_inverse(const Int& a, const Int& k) {
    if (k < 1) throw InvalidArgument("mod_inverse: modulus must be positive");
    // Extended Euclid on (a mod k, k).
    Int old_r = floor_mod(a, k), r = k;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * s;
        old_s = std::move(s);
        s = std::move(tmp);
    }
    if (old_r != 1 && k != 1)
        throw InvalidArgument("mod_inverse: " + to_string(a) + " is not invertible modulo " + to_string(k));
    Int inv = floor_mod(old_s, k);
    return inv == 0 ? k : inv;
}

/// The x in [1, lcm(m1, m2)] with x = r1 (mod m1) and x = r2 (mod m2), or
/// nothing when r1 and r2 disagree modulo gcd(m1, m2).
template <Integer Int>
std::optional<Int> crt2(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    if (m1 < 1 || m2 < 1) throw InvalidArgument("crt2: moduli must be positive");
    const Int g = gcd(m1, m2);
    if (floor_mod(Int(r2 - r1), g) != 0) return std::nullopt;
    const Int l = m1 / g * m2;
    const Int m1g = m1 / g, m2g = m2 / g;
    // x = r1 + m1 * t with m1/g * t = (r2 - r1)/g (mod m2/g).
    const Int t = floor_mod(Int((r2 - r1) / g * mod_inverse(m1g, m2g)), m2g);
    const Int x = floor_mod(Int(r1 + m1 * t), l);
    return x == 0 ? l : x;
}

/// N = first * second with rad(first) | K and gcd(second, K) = 1.
template <Integer Int>
std::pair<Int, Int> split_coprime(const Int& n, const Int& k) {
    if (n < 1) throw InvalidArgument("split_coprime: argument must be positive");
    Int rest = n;
    for (Int g = gcd(rest, k); g > 1; g = gcd(rest, k)) rest /= g;
    return {Int(n / rest), rest};
}

/// n = n1 * n2 with rad(n1) | n/m, gcd(n2, n/m) = 1.
struct SplitN {
    std::int64_t n1;
    std::int64_t n2;
    friend bool operator==(const SplitN&, const SplitN&) = default;
};

SplitN split_n(std::int64_t n, std::int64_t m);

/// Multiplicative order of r modulo k. Throws when gcd(r, k) != 1. When
/// `bound` is given and the order exceeds it, throws InternalError; callers
/// use this when the theory guarantees a small order.
BigInt mult_order(const BigInt& r, const BigInt& k, const std::optional<BigInt>& bound = std::nullopt);

}  // namespace arith
}  // namespace papermute
