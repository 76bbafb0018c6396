#pragma once

// Brute-force oracles. Nothing here calls the closed-form cycle or counting
// code; results are obtained by tracing orbits and by searching the
// definition directly.

#include <papermute/arith.hpp>
#include <papermute/cycle_type.hpp>
#include <papermute/pap.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace papermute::reference {

/// A map of [1, n] to itself: image[x - 1] is the image of x.
struct PermTable {
    std::int64_t n = 0;
    std::vector<std::int64_t> image;

    static PermTable from_pap(const Pap& pap);
    static PermTable from_function(std::int64_t n, const std::function<std::int64_t(std::int64_t)>& f);

    bool is_bijection() const;

    friend bool operator==(const PermTable&, const PermTable&) = default;
    friend auto operator<=>(const PermTable&, const PermTable&) = default;
};

/// Orbits by direct tracing, each starting at its smallest element, ordered
/// by that element. Throws InvalidArgument for a non-bijective table.
std::vector<std::vector<std::int64_t>> brute_cycles(const PermTable& t);
CycleType brute_cycle_type(const PermTable& t);

/// True iff f maps [0, size) onto itself.
bool verify_permutation(const std::function<std::int64_t(std::int64_t)>& f, std::int64_t size);

/// All (a, b) in [1, n]^2 for which x -> psi_n(a x + b) sends the residue
/// class `from` (mod m) injectively into the class `to`, grouped by the
/// restricted map they induce.
struct ClassMap {
    std::vector<std::int64_t> images;  // images of from, from + m, from + 2m, ...
    std::vector<std::pair<std::int64_t, std::int64_t>> witnesses;
};

std::vector<ClassMap> class_transitions(std::int64_t n, std::int64_t m, std::int64_t from, std::int64_t to);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Number of candidate tables (for_each_pap) or triples
/// (for_each_admissible_triple) an enumeration would visit.
BigInt pap_search_space(std::int64_t n, std::int64_t m);
BigInt triple_search_space(std::int64_t n, std::int64_t m);

struct EnumeratedPap {
    PermTable table;
    AdmissibleTriple witness;
};

/// Streams every distinct (n, m)-p.a.p. once, with one triple inducing it.
///
/// The class pattern c is taken over cyclic orders with c_1 = m (rotating c
/// together with a and b yields the same permutation), and for each class
/// over all distinct restricted maps found by class_transitions(). Throws
/// BudgetExceeded when pap_search_space() exceeds `budget`.
void for_each_pap(std::int64_t n, std::int64_t m, std::uint64_t budget,
                  const std::function<void(const EnumeratedPap&)>& visit);
std::vector<EnumeratedPap> enumerate_paps(std::int64_t n, std::int64_t m, std::uint64_t budget = kDefaultBudget);

/// Streams every admissible triple: c over all m! permutations, each (a_i,
/// b_i) over the witnesses of class_transitions(c_i, c_{i+1}).
void for_each_admissible_triple(std::int64_t n, std::int64_t m, std::uint64_t budget,
                                const std::function<void(const AdmissibleTriple&)>& visit);

/// Uniformly random admissible triple: c a random permutation, a_i uniform
/// among [1, n] coprime to n1, b_i uniform in its forced residue class.
AdmissibleTriple sample_triple(std::int64_t n, std::int64_t m, std::mt19937_64& rng);

}  // namespace papermute::reference
