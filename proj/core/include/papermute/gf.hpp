#pragma once

// Arithmetic in F_q, q = p^k, and the lift of a (q-1, m)-p.a.p. pi to the
// permutation of F_q given by 0 -> 0, theta^i -> theta^pi(i).
//
// Elements are coefficient vectors over [0, p) in the basis 1, alpha, ...,
// alpha^(k-1), alpha a root of the field modulus. Moduli are given low
// degree first and include the leading 1.

#include <papermute/arith.hpp>
#include <papermute/cycle_type.hpp>
#include <papermute/error.hpp>
#include <papermute/pap.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace papermute::gf {

struct FieldElement {
    std::vector<std::int64_t> coeffs;  // length k

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// True iff the polynomial (low degree first, any leading coefficient) is
/// irreducible over F_p. Trial division by monic polynomials up to half its
/// degree.
bool is_irreducible(std::int64_t p, std::vector<std::int64_t> poly);

/// First monic irreducible of degree k, ordering candidates by
/// (c_0, c_1, ..., c_{k-1}) lexicographically.
std::vector<std::int64_t> default_modulus(std::int64_t p, int k);

class Field {
public:
    /// Throws InvalidArgument for composite p, k < 1, q - 1 above
    /// kMaxModulus, or a modulus that is not monic of degree k and
    /// irreducible. Modulus entries may be negative; they are reduced mod p.
    static Field make(std::int64_t p, int k, std::optional<std::vector<std::int64_t>> modulus = std::nullopt);

    std::int64_t p() const noexcept { return p_; }
    int k() const noexcept { return k_; }
    std::int64_t q() const noexcept { return q_; }
    const std::vector<std::int64_t>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    /// v * 1, v reduced mod p.
    FieldElement constant(std::int64_t v) const;
    /// Class of x modulo the field modulus. For k = 1 this is the root of
    /// the linear modulus.
    FieldElement generator() const;
    /// At most k coefficients, low degree first, reduced mod p.
    FieldElement from_coeffs(const std::vector<std::int64_t>& coeffs) const;

    bool is_zero(const FieldElement& x) const;
    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement sub(const FieldElement& x, const FieldElement& y) const;
    FieldElement neg(const FieldElement& x) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    /// Negative exponents invert first; 0^0 = 1.
    FieldElement pow(const FieldElement& x, std::int64_t e) const;
    /// Throws InvalidArgument on zero.
    FieldElement inv(const FieldElement& x) const;

    /// Bijection F_q -> [0, q): sum of coeffs[i] p^i.
    std::int64_t index(const FieldElement& x) const;
    FieldElement element(std::int64_t index) const;

    /// "0", "7" in a prime field, "2α+1", "α^2+3" in an extension.
    std::string to_string(const FieldElement& x) const;

    friend bool operator==(const Field& lhs, const Field& rhs) {
        return lhs.p_ == rhs.p_ && lhs.modulus_ == rhs.modulus_;
    }

private:
    Field(std::int64_t p, int k, std::vector<std::int64_t> modulus);
    void check(const FieldElement& x) const;

    std::int64_t p_;
    int k_;
    std::int64_t q_;
    std::vector<std::int64_t> modulus_;
};

/// Multiplicative order q - 1, tested through the prime factors of q - 1.
bool is_primitive(const Field& field, const FieldElement& x);

/// The constants 2, 3, ..., p - 1 first, then every element in
/// lexicographic order of (c_0, ..., c_{k-1}).
FieldElement find_primitive(const Field& field);

/// Baby-step giant-step table for one (field, theta).
class DiscreteLog {
public:
    /// Throws InvalidArgument unless theta is primitive.
    DiscreteLog(Field field, FieldElement theta);

    /// The i in [1, q - 1] with theta^i = x. Throws on x = 0.
    std::int64_t operator()(const FieldElement& x) const;

    const Field& field() const noexcept { return field_; }
    const FieldElement& theta() const noexcept { return theta_; }

private:
    Field field_;
    FieldElement theta_;
    std::int64_t step_;
    FieldElement giant_;  // theta^(-step)
    std::unordered_map<std::int64_t, std::int64_t> baby_;
};

std::int64_t dlog(const Field& field, const FieldElement& theta, const FieldElement& x);

/// E_m(z) = sum_{j<m} z^((q-1)j/m): m when z is an m-th power, else 0.
/// Evaluated by the sum and by z^((q-1)/m) = 1; disagreement throws
/// InternalError.
FieldElement e_m_eval(const Field& field, std::int64_t m, const FieldElement& z);

/// e >= q becomes the representative of e mod (q - 1) in [1, q - 1].
std::int64_t reduce_exponent(std::int64_t e, std::int64_t q);

/// Sparse polynomial over F_q, reduced mod x^q - x, zero coefficients never
/// stored.
class FieldPoly {
public:
    explicit FieldPoly(Field field) : field_(std::move(field)) {}

    const Field& field() const noexcept { return field_; }
    /// Ascending by exponent.
    const std::map<std::int64_t, FieldElement>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    void add_term(std::int64_t exponent, const FieldElement& coeff);
    FieldPoly& operator+=(const FieldPoly& other);

    FieldElement evaluate(const FieldElement& x) const;

    /// Descending exponents, "10x^11 + 8x^9 + 6x"; coefficients outside the
    /// prime field are parenthesized.
    std::string to_string() const;

    friend bool operator==(const FieldPoly&, const FieldPoly&) = default;

private:
    Field field_;
    std::map<std::int64_t, FieldElement> terms_;
};

class LiftSpec {
public:
    /// Throws InvalidArgument unless pap.n() = q - 1 and theta is primitive.
    LiftSpec(Pap pap, Field field, FieldElement theta);

    const Pap& pap() const noexcept { return pap_; }
    const Field& field() const noexcept { return field_; }
    const FieldElement& theta() const noexcept { return theta_; }
    /// Shared between copies of the spec.
    const DiscreteLog& log() const noexcept { return *log_; }

private:
    Pap pap_;
    Field field_;
    FieldElement theta_;
    std::shared_ptr<const DiscreteLog> log_;
};

FieldElement lift_eval(const LiftSpec& spec, const FieldElement& x);

/// (1/m) sum_i theta^(b_i) x^(a_i) E_m(x theta^(-c_i)), expanded.
FieldPoly lift_poly(const LiftSpec& spec);
/// lift_poly of the inverse p.a.p. with the same field and theta.
FieldPoly lift_poly_inverse(const LiftSpec& spec);

struct TwoRulePolys {
    FieldPoly forward;
    FieldPoly inverse;
};

/// Lifts of the two-rule permutation with reduced parameters over n = q - 1
/// and of its inverse, each from the two-rule formula
///     x^a theta^b + (x^a0 theta^b0 - x^a theta^b) E_m(x theta^(-r)) / m.
TwoRulePolys two_reducible_lift_poly(const Field& field, const FieldElement& theta, std::int64_t m,
                                     const ReducedParams& params);

/// cycle_type(pap) plus the fixed point 0.
CycleType lift_cycle_type(const LiftSpec& spec);

/// Conditions for every cycle of the p.a.p. to have the prime length ell:
/// (i) ell = m, (ii) P = 1 (mod n/m), (iii) S = 0 (mod n), with n = q - 1.
/// Throws InvalidArgument when ell is not prime.
ValidationReport equal_length_check(const Pap& pap, std::int64_t ell);

struct Involution {
    LiftSpec spec;
    FieldPoly poly;
};

/// Two-rule (q-1, 2)-p.a.p. whose lift is an involution, q = 3 (mod 4).
/// Requires a0 a = 1 (mod (q-1)/2) and S = 0 (mod q-1); failures raise
/// ValidationError carrying the residues found.
Involution involution_build(const Field& field, const FieldElement& theta, const ReducedParams& params);

struct ExplicitFamily {
    Field field;
    ReducedParams reduced;  // (a0, a, B, B) with B = b (q-1)/m
    FieldPoly poly;
    CycleType cycles;       // includes the fixed point 0
};

/// theta_m^b ((1/m) E_m(x) x^a0 + (1 - (1/m) E_m(x)) x^a) over F_{p^k}, with
/// theta_m of order m in F_p. Uses no primitive element of F_q. Violated
/// preconditions raise ValidationError.
ExplicitFamily explicit_family(std::int64_t p, int k, std::int64_t m, std::int64_t theta_m, std::int64_t a0,
                               std::int64_t a, std::int64_t b,
                               std::optional<std::vector<std::int64_t>> modulus = std::nullopt);

}  // namespace papermute::gf
