#include "jetcalc/multi_index.hpp"

#include "jetcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace jc {

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e < b.e;
}

Rational mi_factorial(const MultiIndex& a) {
    Rational r = 1;
    for (int x : a.e) r *= rat_factorial(static_cast<unsigned>(x));
    return r;
}

Rational mi_binomial(const MultiIndex& a, const MultiIndex& b) {
    if (a.arity() != b.arity()) throw ShapeError("mi_binomial arity mismatch");
    Rational r = 1;
    for (int i = 0; i < a.arity(); ++i) {
        if (b[i] > a[i]) return 0;
        r *= rat_binomial(static_cast<unsigned>(a[i]), static_cast<unsigned>(b[i]));
    }
    return r;
}

long count_leq(int m, int k) {
    if (k < 0) return 0;
    Rational c = rat_binomial(static_cast<unsigned>(m + k), static_cast<unsigned>(k));
    return c.get_num().get_si();
}

long count_eq(int m, int k) {
    if (k < 0) return 0;
    if (k == 0) return 1;
    Rational c = rat_binomial(static_cast<unsigned>(m + k - 1), static_cast<unsigned>(k));
    return c.get_num().get_si();
}

static void gen_rec(int m, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (pos == m) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        cur[pos] = v;
        gen_rec(m, pos + 1, remaining - v, cur, out);
    }
    cur[pos] = 0;
}

const std::vector<MultiIndex>& enumerate_leq(int m, int k) {
    static std::map<std::pair<int, int>, std::vector<MultiIndex>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<MultiIndex> out;
    if (k >= 0) {
        MultiIndex cur(m);
        for (int d = 0; d <= k; ++d) {
            std::vector<MultiIndex> layer;
            gen_rec(m, 0, d, cur, layer);
            std::vector<MultiIndex> exact;
            for (auto& a : layer)
                if (a.degree() == d) exact.push_back(a);
            std::sort(exact.begin(), exact.end(), GrlexLess{});
            for (auto& a : exact) out.push_back(a);
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

std::vector<MultiIndex> enumerate_eq(int m, int k) {
    std::vector<MultiIndex> out;
    if (k < 0) return out;
    for (const auto& a : enumerate_leq(m, k))
        if (a.degree() == k) out.push_back(a);
    return out;
}

long index_of(const MultiIndex& a, int m, int k) {
    const auto& all = enumerate_leq(m, k);
    auto it = std::lower_bound(all.begin(), all.end(), a, GrlexLess{});
    if (it == all.end() || !(*it == a)) return -1;
    return it - all.begin();
}

std::string mi_str(const MultiIndex& a) {
    std::string s = "(";
    for (int i = 0; i < a.arity(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

} // namespace jc
