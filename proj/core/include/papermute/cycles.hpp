#pragma once

// Closed-form cycle structure of a p.a.p.
//
// Every cycle passes through a multiple of m, and m steps of pi act on the
// multiples of m as the affine map x -> psi_n(P x + S). P (the principal
// product) is the exact product of the slopes, S (the principal sum) the
// offset of that composite. Cycle lengths then come from multiplicative
// orders of P modulo the quantities below.

#include <papermute/arith.hpp>
#include <papermute/cycle_type.hpp>
#include <papermute/pap.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace papermute {

struct PrincipalData {
    std::int64_t n = 0;
    std::int64_t m = 0;
    BigInt product;         // P = a_1 * ... * a_m, unreduced
    std::int64_t sum = 0;   // S in [1, n], always a multiple of m

    // Only meaningful when P > 1:
    BigInt g;               // gcd(S/m, P - 1)
    BigInt n1;              // n/m = n1 * n2, rad(n1) | (P-1)/g,
    BigInt n2;              //   gcd(n2, (P-1)/g) = 1

    bool product_is_one_mod_n() const { return product % n == 1; }
};

/// P and S of the permutation. S composes the m branches starting with the
/// one whose class is m.
PrincipalData principal(const Pap& pap);

/// Fills the derived quantities for an externally known (P, S).
/// Throws InvalidArgument unless S in [1, n] and m | S.
PrincipalData principal_from(std::int64_t n, std::int64_t m, BigInt product, std::int64_t sum);

/// pi^(m k)(x) for a multiple x of m, evaluated in closed form.
std::int64_t iterate_mk(const Pap& pap, std::int64_t x, const BigInt& k);

/// n (P-1) / gcd(n (P-1), x (P-1) + S). Requires P > 1 and m | x.
BigInt kappa(const PrincipalData& pd, std::int64_t x);
BigInt kappa(const Pap& pap, std::int64_t x);

/// gcd((n/m) (P-1)/g, x0 (P-1)/g + S/(m g)) for x = m x0.
BigInt n0(const PrincipalData& pd, std::int64_t x);

/// (n/m) (P-1) / (g N0), the same value as kappa() by a second route.
BigInt kappa_from_n0(const PrincipalData& pd, std::int64_t x);

/// Length of the cycle through any x in [1, n].
std::int64_t cycle_length(const Pap& pap, std::int64_t x);

/// Full cycle type. When P = 1 (mod n) all cycles share the length
/// m n / gcd(n, S); otherwise the divisor sum over d | n2.
CycleType cycle_type(const Pap& pap);
CycleType cycle_type(const PrincipalData& pd);

/// The divisor-sum formula applied unconditionally (P > 1 required), even
/// when P = 1 (mod n). Used to compare the two routes.
CycleType divisor_sum_cycle_type(const PrincipalData& pd);

/// How often each value of gcd(alpha y + beta, gamma) occurs.
///
/// Over y in [1, gamma/alpha] the gcd takes every value gamma2 / d, d | gamma2.
/// The count phi(d) * gamma1 holds over y in [1, gamma]; on the shorter range
/// each value is hit phi(d) * gamma1 / alpha times.
struct GcdClassCount {
    BigInt gamma1;         // rad(gamma1) | alpha
    BigInt gamma2;         // gcd(gamma2, alpha) = 1
    BigInt count;          // y in [1, gamma]
    BigInt count_reduced;  // y in [1, gamma/alpha]
};
/// Requires gcd(alpha, beta) = 1, alpha | gamma and d | gamma2.
GcdClassCount gcd_class_count(const BigInt& alpha, const BigInt& beta, const BigInt& gamma, const BigInt& d);
/// The y in [1, gamma] with gcd(alpha y + beta, gamma) = gamma2 / d.
std::vector<BigInt> gcd_class_solutions(const BigInt& alpha, const BigInt& beta, const BigInt& gamma, const BigInt& d);

}  // namespace papermute
