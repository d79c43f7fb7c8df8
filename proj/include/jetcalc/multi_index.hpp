#pragma once

#include "jetcalc/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jc {

// Exponent vector (a_1, ..., a_m), a_i >= 0. Total order is graded
// lexicographic: first by |a|, ties by lexicographic comparison. This order
// is fixed globally; every polynomial printout and matrix enumeration uses it.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(int arity) : e(arity, 0) {}
    MultiIndex(std::initializer_list<int> init) : e(init) {}

    int arity() const { return static_cast<int>(e.size()); }
    int degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    int operator[](int i) const { return e[i]; }
    int& operator[](int i) { return e[i]; }

    bool operator==(const MultiIndex& o) const { return e == o.e; }
    bool operator!=(const MultiIndex& o) const { return e != o.e; }

    // true if this <= o componentwise
    bool divides(const MultiIndex& o) const {
        if (e.size() != o.e.size()) return false;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    MultiIndex plus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    MultiIndex minus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }
    MultiIndex plus_unit(int i, int amount = 1) const {
        MultiIndex r = *this;
        r.e[i] += amount;
        return r;
    }
};

bool grlex_less(const MultiIndex& a, const MultiIndex& b);

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

// alpha! = prod a_i!
Rational mi_factorial(const MultiIndex& a);
// binomial(alpha, beta) = prod C(a_i, b_i); zero unless beta <= alpha
Rational mi_binomial(const MultiIndex& a, const MultiIndex& b);

// number of multi-indices of arity m with |a| <= k: C(m+k, k)
long count_leq(int m, int k);
// number with |a| == k: C(m+k-1, k)
long count_eq(int m, int k);

// All multi-indices of arity m with |a| <= k (k < 0 gives the empty list),
// sorted grlex ascending. Cached per (m, k).
const std::vector<MultiIndex>& enumerate_leq(int m, int k);
// Those with |a| == k exactly, grlex ascending.
std::vector<MultiIndex> enumerate_eq(int m, int k);

// Position of `a` within enumerate_leq(m, k); negative if absent.
long index_of(const MultiIndex& a, int m, int k);

std::string mi_str(const MultiIndex& a);

} // namespace jc
