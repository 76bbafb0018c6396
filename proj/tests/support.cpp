#include "support.hpp"

#include <papermute/cycles.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace papermute::testing {

std::vector<std::pair<i64, i64>> shapes_up_to(i64 max_n) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 n = 2; n <= max_n; ++n)
        for (i64 m = 2; m <= n; ++m)
            if (n % m == 0) out.emplace_back(n, m);
    return out;
}

namespace {

using reference::ClassMap;

// Formula cycle types keyed densely by (P, S/m).
class FormulaCache {
public:
    FormulaCache(i64 n, i64 m, i64 max_product) : n_(n), m_(m), stride_(n / m) {
        const BigInt size = BigInt(max_product + 1) * stride_;
        if (size > 200'000'000) throw std::runtime_error("sweep: principal products too large for the dense cache");
        slots_.assign(size.convert_to<std::size_t>(), -1);
    }

    int get(i64 product, i64 sum, std::vector<CycleType>& interned) {
        int& slot = slots_[static_cast<std::size_t>(product * stride_ + (sum / m_ - 1))];
        if (slot < 0) slot = intern(cycle_type(principal_from(n_, m_, BigInt(product), sum)), interned);
        return slot;
    }

    static int intern(const CycleType& ct, std::vector<CycleType>& interned) {
        const auto it = std::find(interned.begin(), interned.end(), ct);
        if (it != interned.end()) return static_cast<int>(it - interned.begin());
        interned.push_back(ct);
        return static_cast<int>(interned.size() - 1);
    }

private:
    i64 n_, m_, stride_;
    std::vector<int> slots_;
};

struct Walker {
    i64 n;
    i64 m;
    std::vector<const std::vector<std::pair<i64, i64>>*> witnesses;
    FormulaCache& cache;
    std::vector<CycleType>& interned;
    int oracle = 0;
    SweepStats& stats;
    std::string context;

    void walk(std::size_t level, i64 product, i64 offset) {
        if (level + 1 == witnesses.size()) {
            for (const auto& [a, b] : *witnesses[level]) {
                const i64 s = (a * offset + b) % n;
                const int id = cache.get(product * a, s == 0 ? n : s, interned);
                ++stats.triples;
                if (id != oracle && stats.mismatches++ == 0)
                    stats.first_mismatch = context + ": formula " + interned[id].to_string() + ", oracle " +
                                           interned[oracle].to_string();
            }
            return;
        }
        for (const auto& [a, b] : *witnesses[level]) walk(level + 1, product * a, (a * offset + b) % n);
    }
};

bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radix[i]) return true;
        digits[i] = 0;
    }
    return false;
}

std::string describe(const AdmissibleTriple& t) {
    std::ostringstream os;
    auto list = [&](const std::vector<i64>& v) {
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ')';
    };
    os << "(" << t.n << "," << t.m << ") a=";
    list(t.a);
    os << " b=";
    list(t.b);
    os << " c=";
    list(t.c);
    return os.str();
}

}  // namespace

SweepStats sweep_all_triples(i64 n, i64 m) {
    require_shape(n, m);
    BigInt max_product = 1;
    for (i64 i = 0; i < m; ++i) max_product *= n;
    if (max_product > BigInt(1) << 40) throw std::runtime_error("sweep: shape too large");

    std::vector<std::vector<std::vector<ClassMap>>> transitions(static_cast<std::size_t>(m));
    for (i64 r = 1; r <= m; ++r)
        for (i64 s = 1; s <= m; ++s) transitions[r - 1].push_back(reference::class_transitions(n, m, r, s));

    SweepStats stats;
    std::vector<CycleType> interned;
    FormulaCache cache(n, m, max_product.convert_to<i64>());
    const auto um = static_cast<std::size_t>(m);

    std::vector<i64> c(um);
    c[0] = m;
    std::iota(c.begin() + 1, c.end(), 1);
    do {
        std::vector<const std::vector<ClassMap>*> options(um);
        std::vector<std::size_t> radix(um);
        bool feasible = true;
        for (std::size_t i = 0; i < um; ++i) {
            options[i] = &transitions[c[i] - 1][c[(i + 1) % um] - 1];
            radix[i] = options[i]->size();
            feasible = feasible && radix[i] > 0;
        }
        if (!feasible) continue;

        std::vector<std::size_t> pick(um, 0);
        do {
            reference::PermTable table{n, std::vector<i64>(static_cast<std::size_t>(n))};
            AdmissibleTriple first{n, m, {}, {}, c};
            Walker walker{n, m, {}, cache, interned, 0, stats, {}};
            for (std::size_t i = 0; i < um; ++i) {
                const ClassMap& cm = (*options[i])[pick[i]];
                for (std::size_t j = 0; j < cm.images.size(); ++j)
                    table.image[static_cast<std::size_t>(c[i] - 1 + static_cast<i64>(j) * m)] = cm.images[j];
                walker.witnesses.push_back(&cm.witnesses);
                first.a.push_back(cm.witnesses.front().first);
                first.b.push_back(cm.witnesses.front().second);
            }
            ++stats.tables;
            walker.oracle = FormulaCache::intern(reference::brute_cycle_type(table), interned);
            walker.context = describe(first);

            // The folded (P, S) must agree with the library's own principal data.
            const Pap pap(first);
            const PrincipalData pd = principal(pap);
            i64 product = 1, offset = 0;
            for (std::size_t i = 0; i < um; ++i) {
                product *= first.a[i];
                offset = (first.a[i] * offset + first.b[i]) % n;
            }
            if ((pd.product != product || pd.sum != (offset == 0 ? n : offset)) && stats.mismatches++ == 0)
                stats.first_mismatch = walker.context + ": principal data disagrees with the fold";
            if (reference::PermTable::from_pap(pap) != table && stats.mismatches++ == 0)
                stats.first_mismatch = walker.context + ": witness does not induce the enumerated table";

            walker.walk(0, 1, 0);
        } while (advance(pick, radix));
    } while (std::next_permutation(c.begin() + 1, c.end()));

    // Every table was reached with c_1 = m; each triple has m rotations.
    stats.triples *= static_cast<std::uint64_t>(m);
    return stats;
}

AdmissibleTriple sample_equal_length_triple(i64 n, i64 m, std::mt19937_64& rng) {
    require_shape(n, m);
    const i64 n1 = arith::split_n(n, m).n1;
    const i64 nm = n / m;
    const auto um = static_cast<std::size_t>(m);
    AdmissibleTriple t{n, m, std::vector<i64>(um), std::vector<i64>(um), std::vector<i64>(um)};
    std::iota(t.c.begin(), t.c.end(), 1);
    std::shuffle(t.c.begin(), t.c.end(), rng);
    const auto start = static_cast<std::size_t>(std::find(t.c.begin(), t.c.end(), m) - t.c.begin());

    std::uniform_int_distribution<i64> any(1, n);
    i64 product = 1, offset = 0;
    for (std::size_t step = 0; step + 1 < um; ++step) {
        const std::size_t i = (start + step) % um;
        i64 a;
        do a = any(rng);
        while (arith::gcd(a, n1) != 1);
        const i64 r = arith::floor_mod(t.c[(i + 1) % um] - a * t.c[i], m);
        const i64 b = (r == 0 ? m : r) + m * std::uniform_int_distribution<i64>(0, nm - 1)(rng);
        t.a[i] = a;
        t.b[i] = b;
        product = product * a % nm;
        offset = (a * offset + b) % n;
    }
    const std::size_t last = (start + um - 1) % um;
    t.a[last] = arith::mod_inverse(product, nm) + nm * std::uniform_int_distribution<i64>(0, m - 1)(rng);
    const i64 b = arith::floor_mod(-t.a[last] * offset, n);
    t.b[last] = b == 0 ? n : b;
    return t;
}

std::vector<i64> field_table(const gf::Field& field, const gf::FieldPoly& poly) {
    std::vector<i64> out(static_cast<std::size_t>(field.q()));
    for (i64 x = 0; x < field.q(); ++x) out[static_cast<std::size_t>(x)] = field.index(poly.evaluate(field.element(x)));
    return out;
}

CycleType poly_cycle_type(const gf::FieldPoly& poly) {
    const auto table = field_table(poly.field(), poly);
    return reference::brute_cycle_type(
        reference::PermTable::from_function(poly.field().q(), [&](i64 x) { return table[static_cast<std::size_t>(x - 1)] + 1; }));
}

bool same_function(const gf::FieldPoly& lhs, const gf::FieldPoly& rhs) {
    return lhs.field() == rhs.field() && field_table(lhs.field(), lhs) == field_table(rhs.field(), rhs);
}

bool composes_to_identity(const gf::FieldPoly& lhs, const gf::FieldPoly& rhs) {
    const auto& f = lhs.field();
    const auto inner = field_table(f, rhs);
    const auto outer = field_table(f, lhs);
    for (i64 x = 0; x < f.q(); ++x)
        if (outer[static_cast<std::size_t>(inner[static_cast<std::size_t>(x)])] != x) return false;
    return true;
}

}  // namespace papermute::testing
