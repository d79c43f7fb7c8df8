#pragma once

#include "jetcalc/errors.hpp"
#include "jetcalc/multi_index.hpp"
#include "jetcalc/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace jc {

// Sparse multivariate polynomial over the rationals.
// Invariants: every stored coefficient is nonzero; all keys share the arity;
// the term map is ordered grlex ascending, so iteration and printing are
// deterministic.
class MPoly {
  public:
    using TermMap = std::map<MultiIndex, Rational, GrlexLess>;

    MPoly() : arity_(0) {}
    explicit MPoly(int arity) : arity_(arity) {}
    MPoly(int arity, const Rational& c);

    static MPoly variable(int i, int arity);
    static MPoly constant(int arity, const Rational& c) { return MPoly(arity, c); }
    static MPoly monomial(const MultiIndex& a, const Rational& c);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // throws unless constant
    int degree() const;              // total degree, -1 for zero
    const TermMap& terms() const { return terms_; }

    Rational coeff(const MultiIndex& a) const;
    void set_coeff(const MultiIndex& a, const Rational& c);

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly scaled(const Rational& c) const;
    MPoly pow(unsigned e) const;

    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(int i) const;
    MPoly derivative(const MultiIndex& a) const;

    // Raise arity from m to new_arity by padding exponents with zeros.
    MPoly extended(int new_arity) const;

    // Evaluate over any commutative ring R with +, *, and construction from
    // Rational via R(ring_const). `zero` seeds the accumulator and carries
    // contextual data (arity, nilpotent level) into the result.
    template <class R>
    R eval(const std::vector<R>& args, const R& zero) const {
        if (static_cast<int>(args.size()) != arity_) throw ShapeError("MPoly::eval argument count");
        R acc = zero;
        // cache powers of each argument up to the needed degree
        std::vector<std::vector<R>> pows(arity_);
        for (const auto& [a, c] : terms_) {
            R term = zero.from_rational(c);
            for (int i = 0; i < arity_; ++i) {
                int e = a[i];
                if (e == 0) continue;
                auto& p = pows[i];
                if (p.empty()) p.push_back(args[i]);
                while (static_cast<int>(p.size()) < e) p.push_back(p.back() * args[i]);
                term = term * p[e - 1];
            }
            acc = acc + term;
        }
        return acc;
    }

    Rational eval_rat(const std::vector<Rational>& args) const;

    // Substitute each variable x_i by subs[i], all of the same arity.
    MPoly subst(const std::vector<MPoly>& subs) const;

    // First nonzero coefficient in grlex descending order (the leading one).
    Rational lead_coeff() const;

    std::string str() const; // matches the polynomial literal grammar

  private:
    int arity_;
    TermMap terms_;
    void add_term(const MultiIndex& a, const Rational& c);
    friend MPoly mpoly_mul_impl(const MPoly&, const MPoly&);
};

// Parse a polynomial literal such as "3/4*x1^2*x2 - x3 + 1".
// `names` maps variable names to slots; when empty, x1..x<arity> is assumed.
MPoly parse_poly(const std::string& text, int arity,
                 const std::map<std::string, int>& names = {});

} // namespace jc
