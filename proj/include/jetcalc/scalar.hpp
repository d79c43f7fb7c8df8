#pragma once

#include "jetcalc/ratfunc.hpp"

#include <array>

namespace jc {

// Scalar tower: rationals, rational functions in x_1..x_m, and nilpotent
// extensions by up to two commuting nilpotents eps1, eps2 with eps_i^2 = 0
// and eps1*eps2 kept (it carries mixed second derivatives).
//
// A value is c[0] + c[1]*eps1 + c[2]*eps2 + c[3]*eps1*eps2 with RatFunc
// components. The tower tag is (arity, eps): arity 0 means plain rationals,
// eps is the number of live nilpotents. Mixed-tower arithmetic promotes both
// operands to the join; incompatible positive arities raise ShapeError.
class Scalar {
  public:
    Scalar() : arity_(0), eps_(0) { init(); }
    Scalar(int arity, int eps) : arity_(arity), eps_(eps) { init(); }
    Scalar(const Rational& q) : arity_(0), eps_(0) {
        init();
        c_[0] = RatFunc(0, q);
    }
    Scalar(long n) : Scalar(Rational(n)) {}
    Scalar(const RatFunc& f) : arity_(f.arity()), eps_(0) {
        init();
        c_[0] = f;
    }

    static Scalar coordinate(int i, int m) { return Scalar(RatFunc::variable(i, m)); }
    static Scalar eps1(int arity = 0) {
        Scalar s(arity, 1);
        s.c_[1] = RatFunc(arity, Rational(1));
        return s;
    }
    static Scalar eps2(int arity = 0) {
        Scalar s(arity, 2);
        s.c_[2] = RatFunc(arity, Rational(1));
        return s;
    }

    int arity() const { return arity_; }
    int eps_level() const { return eps_; }
    bool is_zero() const;

    const RatFunc& comp(int k) const { return c_[k]; }
    void set_comp(int k, const RatFunc& f);

    RatFunc base() const { return c_[0]; }
    // coefficient of eps1, eps2, eps1*eps2 as eps-free scalars
    RatFunc part_eps1() const { return c_[1]; }
    RatFunc part_eps2() const { return c_[2]; }
    RatFunc part_eps12() const { return c_[3]; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // NotInvertible if base part is 0
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    Scalar derivative(int i) const; // d/dx_i componentwise

    // shape carrier for MPoly/RatFunc evaluation templates
    Scalar from_rational(const Rational& q) const {
        Scalar s(arity_, eps_);
        s.c_[0] = RatFunc(arity_, q);
        return s;
    }

    // promote to (arity, eps) at least as large; ShapeError on arity clash
    Scalar promoted(int arity, int eps) const;

    std::string str() const;

  private:
    int arity_;
    int eps_;
    std::array<RatFunc, 4> c_;
    void init();
    static void join(const Scalar& a, const Scalar& b, Scalar& pa, Scalar& pb);
};

// generic-point coordinates (x_1, ..., x_m) as Scalars
std::vector<Scalar> generic_point(int m);
// rational point as Scalars of arity 0
std::vector<Scalar> rational_point(const std::vector<Rational>& xs);

} // namespace jc
