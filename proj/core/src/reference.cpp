#include <papermute/reference.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

namespace papermute::reference {

namespace {

using i64 = std::int64_t;

// transitions[(r - 1) * m + (s - 1)] = class_transitions(n, m, r, s), r != s.
using TransitionTable = std::vector<std::vector<ClassMap>>;

TransitionTable all_transitions(i64 n, i64 m) {
    const auto mm = static_cast<std::size_t>(m);
    TransitionTable out(mm * mm);
    for (i64 r = 1; r <= m; ++r)
        for (i64 s = 1; s <= m; ++s)
            if (r != s) out[static_cast<std::size_t>((r - 1) * m + (s - 1))] = class_transitions(n, m, r, s);
    return out;
}

const std::vector<ClassMap>& transitions(const TransitionTable& table, i64 m, i64 r, i64 s) {
    return table[static_cast<std::size_t>((r - 1) * m + (s - 1))];
}

BigInt factorial(i64 k) {
    BigInt out = 1;
    for (i64 i = 2; i <= k; ++i) out *= i;
    return out;
}

// Sum over the class patterns visited of the product of per-class option
// counts. `cyclic` restricts to patterns with c_1 = m.
template <class Count>
BigInt search_space(const TransitionTable& table, i64 m, bool cyclic, Count count) {
    std::vector<std::size_t> sizes;
    for (i64 r = 1; r <= m; ++r)
        for (i64 s = 1; s <= m; ++s)
            if (r != s) sizes.push_back(count(transitions(table, m, r, s)));
    const bool uniform = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t v) { return v == sizes.front(); });
    if (uniform)
        return factorial(cyclic ? m - 1 : m) * boost::multiprecision::pow(BigInt(sizes.front()), static_cast<unsigned>(m));

    std::vector<i64> c(static_cast<std::size_t>(m));
    std::iota(c.begin(), c.end(), 1);
    if (cyclic) std::rotate(c.begin(), c.end() - 1, c.end());
    BigInt total = 0;
    do {
        BigInt product = 1;
        for (std::size_t i = 0; i < c.size(); ++i)
            product *= count(transitions(table, m, c[i], c[(i + 1) % c.size()]));
        total += product;
    } while (std::next_permutation(c.begin() + (cyclic ? 1 : 0), c.end()));
    return total;
}

std::size_t count_maps(const std::vector<ClassMap>& maps) { return maps.size(); }

std::size_t count_witnesses(const std::vector<ClassMap>& maps) {
    std::size_t total = 0;
    for (const auto& map : maps) total += map.witnesses.size();
    return total;
}

void require_budget(const BigInt& size, std::uint64_t budget, const char* what) {
    if (size > budget)
        throw BudgetExceeded(std::string(what) + ": search space of " + size.str() + " exceeds the budget of " +
                                 std::to_string(budget),
                             size.str());
}

// Advances a mixed-radix counter; false once it wraps around.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radices) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radices[i]) return true;
        digits[i] = 0;
    }
    return false;
}

}  // namespace

PermTable PermTable::from_pap(const Pap& pap) { return {pap.n(), pap.table()}; }

PermTable PermTable::from_function(i64 n, const std::function<i64(i64)>& f) {
    PermTable out{n, std::vector<i64>(static_cast<std::size_t>(n))};
    for (i64 x = 1; x <= n; ++x) out.image[static_cast<std::size_t>(x - 1)] = f(x);
    return out;
}

bool PermTable::is_bijection() const {
    if (image.size() != static_cast<std::size_t>(n)) return false;
    std::vector<bool> hit(image.size(), false);
    for (const i64 y : image) {
        if (y < 1 || y > n || hit[static_cast<std::size_t>(y - 1)]) return false;
        hit[static_cast<std::size_t>(y - 1)] = true;
    }
    return true;
}

std::vector<std::vector<i64>> brute_cycles(const PermTable& t) {
    if (!t.is_bijection()) throw InvalidArgument("brute_cycles: table is not a bijection of [1, n]");
    std::vector<bool> visited(static_cast<std::size_t>(t.n), false);
    std::vector<std::vector<i64>> out;
    for (i64 start = 1; start <= t.n; ++start) {
        if (visited[static_cast<std::size_t>(start - 1)]) continue;
        auto& cycle = out.emplace_back();
        for (i64 x = start; !visited[static_cast<std::size_t>(x - 1)]; x = t.image[static_cast<std::size_t>(x - 1)]) {
            visited[static_cast<std::size_t>(x - 1)] = true;
            cycle.push_back(x);
        }
    }
    return out;
}

CycleType brute_cycle_type(const PermTable& t) {
    CycleType out;
    for (const auto& cycle : brute_cycles(t)) out.add(static_cast<i64>(cycle.size()));
    return out;
}

bool verify_permutation(const std::function<i64(i64)>& f, i64 size) {
    std::vector<bool> hit(static_cast<std::size_t>(size), false);
    for (i64 x = 0; x < size; ++x) {
        const i64 y = f(x);
        if (y < 0 || y >= size || hit[static_cast<std::size_t>(y)]) return false;
        hit[static_cast<std::size_t>(y)] = true;
    }
    return true;
}

std::vector<ClassMap> class_transitions(i64 n, i64 m, i64 from, i64 to) {
    require_shape(n, m);
    if (from < 1 || from > m || to < 1 || to > m) throw InvalidArgument("class_transitions: classes must lie in [1, m]");
    const i64 block = n / m;
    std::map<std::vector<i64>, std::vector<std::pair<i64, i64>>> grouped;
    std::vector<i64> images(static_cast<std::size_t>(block));
    std::vector<bool> hit(static_cast<std::size_t>(block));
    for (i64 a = 1; a <= n; ++a) {
        for (i64 b = 1; b <= n; ++b) {
            std::fill(hit.begin(), hit.end(), false);
            bool ok = true;
            for (i64 j = 0; j < block && ok; ++j) {
                const i64 y = arith::psi(a * (from + j * m) + b, n);
                const i64 slot = (y - 1) / m;
                ok = arith::psi(y, m) == to && !hit[static_cast<std::size_t>(slot)];
                if (ok) {
                    hit[static_cast<std::size_t>(slot)] = true;
                    images[static_cast<std::size_t>(j)] = y;
                }
            }
            if (ok) grouped[images].emplace_back(a, b);
        }
    }
    std::vector<ClassMap> out;
    out.reserve(grouped.size());
    for (auto& [imgs, witnesses] : grouped) out.push_back({imgs, std::move(witnesses)});
    return out;
}

BigInt pap_search_space(i64 n, i64 m) {
    require_shape(n, m);
    return search_space(all_transitions(n, m), m, true, count_maps);
}

BigInt triple_search_space(i64 n, i64 m) {
    require_shape(n, m);
    return search_space(all_transitions(n, m), m, false, count_witnesses);
}

void for_each_pap(i64 n, i64 m, std::uint64_t budget, const std::function<void(const EnumeratedPap&)>& visit) {
    require_shape(n, m);
    const auto table = all_transitions(n, m);
    require_budget(search_space(table, m, true, count_maps), budget, "for_each_pap");

    const auto mm = static_cast<std::size_t>(m);
    std::vector<i64> c(mm);
    c[0] = m;
    std::iota(c.begin() + 1, c.end(), 1);
    EnumeratedPap current{{n, std::vector<i64>(static_cast<std::size_t>(n))},
                          {n, m, std::vector<i64>(mm), std::vector<i64>(mm), {}}};
    do {
        std::vector<const std::vector<ClassMap>*> options(mm);
        std::vector<std::size_t> radices(mm);
        for (std::size_t i = 0; i < mm; ++i) {
            options[i] = &transitions(table, m, c[i], c[(i + 1) % mm]);
            radices[i] = options[i]->size();
        }
        if (std::find(radices.begin(), radices.end(), 0) != radices.end()) continue;

        current.witness.c = c;
        std::vector<std::size_t> digits(mm, 0);
        do {
            for (std::size_t i = 0; i < mm; ++i) {
                const ClassMap& chosen = (*options[i])[digits[i]];
                for (std::size_t j = 0; j < chosen.images.size(); ++j)
                    current.table.image[static_cast<std::size_t>(c[i] - 1) + j * mm] = chosen.images[j];
                current.witness.a[i] = chosen.witnesses.front().first;
                current.witness.b[i] = chosen.witnesses.front().second;
            }
            visit(current);
        } while (advance(digits, radices));
    } while (std::next_permutation(c.begin() + 1, c.end()));
}

std::vector<EnumeratedPap> enumerate_paps(i64 n, i64 m, std::uint64_t budget) {
    std::vector<EnumeratedPap> out;
    for_each_pap(n, m, budget, [&](const EnumeratedPap& p) { out.push_back(p); });
    return out;
}

void for_each_admissible_triple(i64 n, i64 m, std::uint64_t budget,
                                const std::function<void(const AdmissibleTriple&)>& visit) {
    require_shape(n, m);
    const auto table = all_transitions(n, m);
    require_budget(search_space(table, m, false, count_witnesses), budget, "for_each_admissible_triple");

    const auto mm = static_cast<std::size_t>(m);
    std::vector<std::vector<std::pair<i64, i64>>> flat(mm * mm);
    for (i64 r = 1; r <= m; ++r)
        for (i64 s = 1; s <= m; ++s)
            if (r != s)
                for (const auto& map : transitions(table, m, r, s))
                    for (const auto& w : map.witnesses)
                        flat[static_cast<std::size_t>((r - 1) * m + (s - 1))].push_back(w);

    AdmissibleTriple t{n, m, std::vector<i64>(mm), std::vector<i64>(mm), std::vector<i64>(mm)};
    std::iota(t.c.begin(), t.c.end(), 1);
    do {
        std::vector<const std::vector<std::pair<i64, i64>>*> options(mm);
        std::vector<std::size_t> radices(mm);
        for (std::size_t i = 0; i < mm; ++i) {
            options[i] = &flat[static_cast<std::size_t>((t.c[i] - 1) * m + (t.c[(i + 1) % mm] - 1))];
            radices[i] = options[i]->size();
        }
        if (std::find(radices.begin(), radices.end(), 0) != radices.end()) continue;
        std::vector<std::size_t> digits(mm, 0);
        do {
            for (std::size_t i = 0; i < mm; ++i) std::tie(t.a[i], t.b[i]) = (*options[i])[digits[i]];
            visit(t);
        } while (advance(digits, radices));
    } while (std::next_permutation(t.c.begin(), t.c.end()));
}

AdmissibleTriple sample_triple(i64 n, i64 m, std::mt19937_64& rng) {
    require_shape(n, m);
    const i64 n1 = arith::split_n(n, m).n1;
    const auto mm = static_cast<std::size_t>(m);
    AdmissibleTriple t{n, m, std::vector<i64>(mm), std::vector<i64>(mm), std::vector<i64>(mm)};
    std::iota(t.c.begin(), t.c.end(), 1);
    std::shuffle(t.c.begin(), t.c.end(), rng);

    std::uniform_int_distribution<i64> entry(1, n);
    std::uniform_int_distribution<i64> lift(0, n / m - 1);
    for (std::size_t i = 0; i < mm; ++i) {
        do t.a[i] = entry(rng);
        while (arith::gcd(t.a[i], n1) != 1);
        const i64 r = arith::floor_mod(t.c[(i + 1) % mm] - t.a[i] * t.c[i], m);
        t.b[i] = (r == 0 ? m : r) + m * lift(rng);
    }
    return t;
}

}  // namespace papermute::reference
