#pragma once

#include "jetcalc/mpoly.hpp"

namespace jc {

// gcd of multivariate polynomials over Q, normalized so the grlex-leading
// coefficient is 1. gcd(0, p) = normalized p; gcd of constants is 1.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

// Exact division; throws ValidationError if b does not divide a.
MPoly mpoly_exact_divide(const MPoly& a, const MPoly& b);
bool mpoly_try_divide(const MPoly& a, const MPoly& b, MPoly& quot);

// Rational function in reduced form: gcd(num, den) = 1, den has grlex-leading
// coefficient 1, and num = 0 forces den = 1. Equality is structural.
class RatFunc {
  public:
    RatFunc() : num_(0), den_(0, 1) {}
    explicit RatFunc(int arity) : num_(arity), den_(arity, 1) {}
    RatFunc(const MPoly& p) : num_(p), den_(p.arity(), 1) {}
    RatFunc(const MPoly& num, const MPoly& den);
    RatFunc(int arity, const Rational& c) : num_(arity, c), den_(arity, 1) {}

    static RatFunc variable(int i, int arity) { return RatFunc(MPoly::variable(i, arity)); }

    int arity() const { return num_.arity(); }
    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc derivative(int i) const;
    RatFunc extended(int new_arity) const;
    Rational eval_rat(const std::vector<Rational>& args) const; // throws NotInvertible on pole

    // Evaluate over a ring R that supports division by units.
    template <class R>
    R eval(const std::vector<R>& args, const R& zero) const {
        R n = num_.eval(args, zero);
        if (den_.is_constant()) {
            Rational d = den_.constant_value();
            return n * zero.from_rational(rat_inv(d));
        }
        R d = den_.eval(args, zero);
        return n / d;
    }

    // Substitute polynomial maps for the variables.
    RatFunc subst(const std::vector<MPoly>& subs) const;

    std::string str() const;

  private:
    MPoly num_, den_;
    void reduce();
    // fast path: caller guarantees gcd(n, d) is constant; only normalizes
    static RatFunc from_coprime(MPoly n, MPoly d);
};

} // namespace jc
