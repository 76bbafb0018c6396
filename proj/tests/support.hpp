#pragma once

// Helpers shared by the unit suites and the acceptance binary.

#include <papermute/cycle_type.hpp>
#include <papermute/gf.hpp>
#include <papermute/pap.hpp>
#include <papermute/reference.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace papermute::testing {

using i64 = std::int64_t;

inline AdmissibleTriple golden_triple() { return {12, 3, {1, 3, 5}, {4, 6, 1}, {1, 2, 3}}; }

inline const std::vector<std::pair<i64, i64>>& exhaustive_pairs() {
    static const std::vector<std::pair<i64, i64>> pairs{{4, 2}, {6, 2}, {6, 3}, {8, 2}, {8, 4},
                                                       {9, 3}, {12, 3}, {12, 4}, {12, 6}};
    return pairs;
}

/// Every (n, m) with 1 < m | n and n <= max_n.
std::vector<std::pair<i64, i64>> shapes_up_to(i64 max_n);

struct SweepStats {
    std::uint64_t tables = 0;      // distinct permutations visited
    std::uint64_t triples = 0;     // admissible triples, all m rotations counted
    std::uint64_t mismatches = 0;
    std::string first_mismatch;
};

/// Visits every admissible triple of shape (n, m) and compares the closed
/// form cycle type against orbit tracing of the induced table. Tables are
/// traced once; P and S are folded per triple.
SweepStats sweep_all_triples(i64 n, i64 m);

/// Admissible triple with P = 1 (mod n/m) and S = 0 (mod n): random except
/// for the last branch applied when composing from class m.
AdmissibleTriple sample_equal_length_triple(i64 n, i64 m, std::mt19937_64& rng);

/// Table of x -> index(f(element(x))) on [0, q).
std::vector<i64> field_table(const gf::Field& field, const gf::FieldPoly& poly);

/// Cycle type of a polynomial permutation of F_q by tracing.
CycleType poly_cycle_type(const gf::FieldPoly& poly);

/// Pointwise equality on all of F_q.
bool same_function(const gf::FieldPoly& lhs, const gf::FieldPoly& rhs);

/// lhs(rhs(x)) = x everywhere.
bool composes_to_identity(const gf::FieldPoly& lhs, const gf::FieldPoly& rhs);

}  // namespace papermute::testing
