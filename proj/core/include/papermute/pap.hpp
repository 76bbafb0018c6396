#pragma once

// Piecewise-affine permutations of [1, n].
//
// An admissible triple (a, b, c) with m | n, m > 1 defines
//
//     pi(x) = psi_n(a_i * x + b_i)   whenever psi_m(x) = c_i,
//
// and pi sends residue class c_i onto class c_{i+1} (indices cyclic mod m).
// Vectors are stored 0-based; reports and the public index conventions used
// in messages are 1-based.

#include <papermute/arith.hpp>
#include <papermute/error.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace papermute {

/// Largest n accepted anywhere in the library. Keeps a_i * x + b_i inside
/// 64 bits; everything derived from products of several a_i is a BigInt.
inline constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

/// Throws InvalidArgument unless m > 1, m | n and n <= kMaxModulus.
void require_shape(std::int64_t n, std::int64_t m);

struct AdmissibleTriple {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    std::vector<std::int64_t> c;

    friend bool operator==(const AdmissibleTriple&, const AdmissibleTriple&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks the admissibility conditions: c is a permutation of [1, m],
/// gcd(a_i, n1) = 1, and b_i = c_{i+1} - a_i c_i (mod m).
///
/// Structural problems (bad shape, wrong vector lengths, entries outside
/// their ranges) are not reportable conditions and throw InvalidArgument.
ValidationReport validate_triple(const AdmissibleTriple& t);

class Pap {
public:
    /// Throws ValidationError when the triple is not admissible.
    explicit Pap(AdmissibleTriple triple);

    std::int64_t n() const noexcept { return triple_.n; }
    std::int64_t m() const noexcept { return triple_.m; }
    const AdmissibleTriple& triple() const noexcept { return triple_; }

    /// 0-based index i with c_i = psi_m(x).
    std::size_t branch_of(std::int64_t x) const noexcept { return class_index_[static_cast<std::size_t>((x - 1) % m())]; }

    /// Image of x in [1, n]; throws InvalidArgument outside that range.
    std::int64_t apply(std::int64_t x) const;

    /// apply() without the range check.
    std::int64_t operator()(std::int64_t x) const noexcept {
        const std::size_t i = branch_of(x);
        return (triple_.a[i] * x + triple_.b[i] - 1) % n() + 1;
    }

    /// Images of 1..n, stored at [0, n).
    std::vector<std::int64_t> table() const;

private:
    AdmissibleTriple triple_;
    // class_index_[r - 1] is the index i with c_i = r.
    std::vector<std::size_t> class_index_;
};

/// The inverse permutation as a p.a.p.: A_i = a_{i-1}^{-1} (mod n1) in
/// [1, n1], B_i the CRT solution of
///     x = c_{i-1} - A_i c_i (mod m),  x = -A_i b_{i-1} (mod n1)
/// taken in [1, lcm(m, n1)], and every vector reversed.
Pap invert(const Pap& pap);

/// Rotates (a, b, c) so that c_1 = m. Induces the same permutation.
AdmissibleTriple canonical_shift(const AdmissibleTriple& t);

/// Shift t in [1, m] under which the triples satisfy the equivalence
/// conditions, or nothing. Both triples must be admissible with equal (n, m).
/// The answer is cross-checked against the induced maps; disagreement throws
/// InternalError.
std::optional<std::int64_t> equivalent(const AdmissibleTriple& lhs, const AdmissibleTriple& rhs);

/// Number of admissible triples, m! * (n * n2 * phi(n1) / m)^m.
BigInt count_admissible_triples(std::int64_t n, std::int64_t m);

/// Number of distinct (n, m)-p.a.p.'s, (m-1)! * (n * n2 * phi(n1) / m^2)^m.
BigInt count_paps(std::int64_t n, std::int64_t m);

// --- two-rule permutations -------------------------------------------------

/// (a0, b0) acts on the multiples of m, (a, b) on everything else.
struct ReducedParams {
    std::int64_t a0 = 0;
    std::int64_t a = 0;
    std::int64_t b0 = 0;
    std::int64_t b = 0;

    friend bool operator==(const ReducedParams&, const ReducedParams&) = default;
};

/// For m > 2: (i) gcd(b, m) = gcd(b0, m) = 1 and b = b0 (mod m);
/// (ii) a = 1 (mod rad2(m)); (iii) gcd(a * a0, n1) = 1.
/// For m = 2 the quadruple only needs to yield an admissible triple.
ValidationReport check_reduced(std::int64_t n, std::int64_t m, const ReducedParams& params);

/// The triple a = (a0, a, ..., a), b = (b0, b, ..., b) with c_1 = m.
/// Throws ValidationError naming the failed conditions.
AdmissibleTriple two_reducible_triple(std::int64_t n, std::int64_t m, const ReducedParams& params);
Pap two_reducible_build(std::int64_t n, std::int64_t m, const ReducedParams& params);

/// Inverse of a two-rule permutation, again described by two rules:
/// x = branch_residue (mod m) uses (A0, B0), every other x uses (A, B).
struct TwoReducibleInverse {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t A0 = 0;
    std::int64_t A = 0;
    std::int64_t B0 = 0;
    std::int64_t B = 0;
    std::int64_t branch_residue = 0;  // in [1, m]

    std::int64_t apply(std::int64_t x) const;
};

TwoReducibleInverse two_reducible_invert(std::int64_t n, std::int64_t m, const ReducedParams& params);

/// phi(n/m) * phi(m) * n^2 / m^2, a lower bound on the number of distinct
/// two-rule (n, m)-p.a.p.'s.
BigInt two_reducible_lower_bound(std::int64_t n, std::int64_t m);

}  // namespace papermute
