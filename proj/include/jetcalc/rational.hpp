#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace jc {

// Arbitrary-precision rational scalar. All arithmetic in the engine is exact;
// there is no floating point anywhere downstream of this typedef.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// 1/q in canonical form; the raw two-argument mpq constructor must not be
// used for this, it skips canonicalization (sign and gcd invariants)
inline Rational rat_inv(const Rational& q) {
    Rational r(q.get_den(), q.get_num());
    r.canonicalize();
    return r;
}

inline Rational rat_pow(const Rational& q, unsigned e) {
    Rational r = 1;
    Rational base = q;
    unsigned k = e;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Rational rat_factorial(unsigned n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rational(z);
}

// n choose k, exact.
inline Rational rat_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rational(z);
}

} // namespace jc

namespace Eigen {

template <>
struct NumTraits<jc::Rational> {
    using Real = jc::Rational;
    using NonInteger = jc::Rational;
    using Nested = jc::Rational;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 30,
        MulCost = 30
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

} // namespace Eigen
