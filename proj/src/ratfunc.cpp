#include "jetcalc/ratfunc.hpp"

namespace jc {

namespace {

// highest variable index with positive degree, -1 for constants
int main_var(const MPoly& p) {
    int v = -1;
    for (const auto& [a, c] : p.terms())
        for (int i = 0; i < a.arity(); ++i)
            if (a[i] > 0 && i > v) v = i;
    return v;
}

int deg_in(const MPoly& p, int v) {
    int d = 0;
    for (const auto& [a, c] : p.terms())
        if (a[v] > d) d = a[v];
    return d;
}

// p as a dense univariate polynomial in x_v with MPoly coefficients
std::vector<MPoly> to_uni(const MPoly& p, int v) {
    std::vector<MPoly> cs(static_cast<size_t>(deg_in(p, v)) + 1, MPoly(p.arity()));
    for (const auto& [a, c] : p.terms()) {
        MultiIndex b = a;
        int e = b[v];
        b[v] = 0;
        cs[e] += MPoly::monomial(b, c);
    }
    return cs;
}

MPoly from_uni(const std::vector<MPoly>& cs, int v, int arity) {
    MPoly p(arity);
    for (size_t e = 0; e < cs.size(); ++e) {
        MPoly xv = MPoly::variable(v, arity).pow(static_cast<unsigned>(e));
        p += cs[e] * xv;
    }
    return p;
}

void trim(std::vector<MPoly>& cs) {
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

MPoly normalize_lead(const MPoly& p) {
    if (p.is_zero()) return p;
    Rational lc = p.lead_coeff();
    return p.scaled(rat_inv(lc));
}

// gcd of numerators over lcm of denominators, always positive
Rational rat_content_accum(const MPoly& p, Rational acc) {
    mpz_class gn = acc.get_num(), ld = acc.get_den();
    for (const auto& [a, c] : p.terms()) {
        mpz_gcd(gn.get_mpz_t(), gn.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(ld.get_mpz_t(), ld.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (gn == 0) return acc;
    return Rational(gn) / Rational(ld);
}

// scale to integer coefficients with gcd 1 and positive leading coefficient;
// pseudo-remainder sequences explode without this
MPoly normalize_primitive(const MPoly& p) {
    if (p.is_zero()) return p;
    Rational c = rat_content_accum(p, Rational(0));
    if (p.lead_coeff() < 0) c = -c;
    if (c == 1) return p;
    return p.scaled(rat_inv(c));
}

void strip_content(std::vector<MPoly>& cs) {
    Rational c(0);
    for (const auto& p : cs) c = rat_content_accum(p, c);
    if (c == 0 || c == 1) return;
    Rational inv = rat_inv(c);
    for (auto& p : cs) p = p.scaled(inv);
}

// componentwise-min exponent monomial dividing every term
MultiIndex monomial_content(const MPoly& p) {
    MultiIndex m(p.arity());
    bool first = true;
    for (const auto& [a, c] : p.terms()) {
        if (first) {
            m = a;
            first = false;
        } else {
            for (int i = 0; i < a.arity(); ++i)
                if (a[i] < m[i]) m[i] = a[i];
        }
    }
    return m;
}

MPoly divide_monomial(const MPoly& p, const MultiIndex& m) {
    MPoly r(p.arity());
    for (const auto& [a, c] : p.terms()) r.set_coeff(a.minus(m), c);
    return r;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b);

// gcd of the coefficient list (the content w.r.t. the main variable)
MPoly content_of(const std::vector<MPoly>& cs, int arity) {
    MPoly g(arity);
    for (const auto& c : cs) {
        g = gcd_rec(g, c);
        if (g.is_constant() && !g.is_zero()) return MPoly(arity, 1);
    }
    return g;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    if (a.is_constant() || b.is_constant()) return MPoly(a.arity(), 1);

    // strip common monomial factors first; cheap and caps the PRS work
    MultiIndex ma = monomial_content(a), mb = monomial_content(b);
    MultiIndex mc(a.arity());
    bool stripped = false;
    for (int i = 0; i < a.arity(); ++i) {
        mc[i] = std::min(ma[i], mb[i]);
        if (ma[i] > 0 || mb[i] > 0) stripped = true;
    }
    if (stripped && (ma.degree() > 0 || mb.degree() > 0)) {
        MPoly a2 = divide_monomial(a, ma), b2 = divide_monomial(b, mb);
        MPoly g = gcd_rec(a2, b2);
        return g * MPoly::monomial(mc, 1);
    }

    int v = std::max(main_var(a), main_var(b));
    if (deg_in(a, v) == 0) {
        auto cb = to_uni(b, v);
        return gcd_rec(a, content_of(cb, a.arity()));
    }
    if (deg_in(b, v) == 0) {
        auto ca = to_uni(a, v);
        return gcd_rec(b, content_of(ca, a.arity()));
    }

    auto F = to_uni(a, v), G = to_uni(b, v);
    MPoly cF = content_of(F, a.arity()), cG = content_of(G, a.arity());
    MPoly cont = gcd_rec(cF, cG);
    for (auto& c : F) c = mpoly_exact_divide(c, cF);
    for (auto& c : G) c = mpoly_exact_divide(c, cG);
    strip_content(F);
    strip_content(G);

    // primitive polynomial remainder sequence in x_v
    while (true) {
        trim(F);
        trim(G);
        if (G.empty()) break;
        if (F.size() < G.size()) std::swap(F, G);
        if (G.size() == 1) {
            // nonzero "constant" in x_v: primitive gcd is trivial
            G.clear();
            F.clear();
            F.push_back(MPoly(a.arity(), 1));
            break;
        }
        // scaled pseudo-remainder: R = lc(G)*F - lead(F)*x^(dF-dG)*G, repeated,
        // with numeric content stripped each round to stop coefficient blowup
        MPoly lc = G.back();
        std::vector<MPoly> R = F;
        while (true) {
            trim(R);
            if (R.size() < G.size()) break;
            size_t shift = R.size() - G.size();
            MPoly lead = R.back();
            std::vector<MPoly> next(R.size(), MPoly(a.arity()));
            for (size_t i = 0; i + 1 < R.size(); ++i) next[i] = R[i] * lc;
            for (size_t i = 0; i < G.size() - 1; ++i) next[i + shift] -= G[i] * lead;
            next.pop_back();
            strip_content(next);
            R = std::move(next);
        }
        F = G;
        if (R.empty()) {
            G.clear();
        } else {
            MPoly cR = content_of(R, a.arity());
            for (auto& c : R) c = mpoly_exact_divide(c, cR);
            strip_content(R);
            G = R;
        }
    }
    MPoly prim = F.empty() ? MPoly(a.arity(), 1) : from_uni(F, v, a.arity());
    return normalize_primitive(cont * prim);
}

} // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
    if (a.arity() != b.arity()) throw ShapeError("mpoly_gcd arity");
    return normalize_lead(gcd_rec(a, b));
}

bool mpoly_try_divide(const MPoly& a, const MPoly& b, MPoly& quot) {
    if (a.arity() != b.arity()) throw ShapeError("mpoly divide arity");
    if (b.is_zero()) return false;
    MPoly q(a.arity());
    MPoly r = a;
    const MultiIndex& ltb = b.terms().rbegin()->first;
    const Rational& lcb = b.terms().rbegin()->second;
    while (!r.is_zero()) {
        const MultiIndex& ltr = r.terms().rbegin()->first;
        if (!ltb.divides(ltr)) return false;
        Rational c = r.terms().rbegin()->second / lcb;
        MPoly t = MPoly::monomial(ltr.minus(ltb), c);
        q += t;
        r -= t * b;
    }
    quot = q;
    return true;
}

MPoly mpoly_exact_divide(const MPoly& a, const MPoly& b) {
    MPoly q(a.arity());
    if (!mpoly_try_divide(a, b, q))
        throw ValidationError("inexact polynomial division: (" + a.str() + ") / (" + b.str() + ")");
    return q;
}

RatFunc::RatFunc(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
    if (num.arity() != den.arity()) throw ShapeError("RatFunc arity");
    if (den.is_zero()) throw NotInvertible("zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = MPoly(num_.arity(), 1);
        return;
    }
    if (!den_.is_constant()) {
        MPoly g = mpoly_gcd(num_, den_);
        if (!(g.is_constant())) {
            num_ = mpoly_exact_divide(num_, g);
            den_ = mpoly_exact_divide(den_, g);
        }
    }
    Rational lc = den_.lead_coeff();
    if (lc != 1) {
        Rational inv = rat_inv(lc);
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw ShapeError("constant_value of nonconstant RatFunc");
    if (num_.is_zero()) return 0;
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::from_coprime(MPoly n, MPoly d) {
    RatFunc r;
    if (n.is_zero()) {
        r.num_ = MPoly(n.arity());
        r.den_ = MPoly(n.arity(), 1);
        return r;
    }
    Rational lc = d.lead_coeff();
    if (lc != 1) {
        Rational inv = rat_inv(lc);
        n = n.scaled(inv);
        d = d.scaled(inv);
    }
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (arity() != o.arity()) throw ShapeError("RatFunc + arity");
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (is_poly() && o.is_poly()) return RatFunc(num_ + o.num_);
    if (den_ == o.den_) {
        MPoly t = num_ + o.num_;
        MPoly h = mpoly_gcd(t, den_);
        if (h.is_constant()) return from_coprime(t, den_);
        return from_coprime(mpoly_exact_divide(t, h), mpoly_exact_divide(den_, h));
    }
    // reduce against the common denominator factor only, never the full product
    MPoly g = mpoly_gcd(den_, o.den_);
    if (g.is_constant())
        return from_coprime(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    MPoly bp = mpoly_exact_divide(den_, g), dp = mpoly_exact_divide(o.den_, g);
    MPoly t = num_ * dp + o.num_ * bp;
    MPoly h = mpoly_gcd(t, g);
    MPoly n2 = h.is_constant() ? t : mpoly_exact_divide(t, h);
    MPoly gh = h.is_constant() ? g : mpoly_exact_divide(g, h);
    return from_coprime(n2, bp * dp * gh);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (arity() != o.arity()) throw ShapeError("RatFunc * arity");
    if (is_zero() || o.is_zero()) return RatFunc(arity());
    // cross-reduce before multiplying to keep intermediates small
    MPoly g1 = mpoly_gcd(num_, o.den_);
    MPoly g2 = mpoly_gcd(o.num_, den_);
    MPoly n1 = g1.is_constant() ? num_ : mpoly_exact_divide(num_, g1);
    MPoly d2 = g1.is_constant() ? o.den_ : mpoly_exact_divide(o.den_, g1);
    MPoly n2 = g2.is_constant() ? o.num_ : mpoly_exact_divide(o.num_, g2);
    MPoly d1 = g2.is_constant() ? den_ : mpoly_exact_divide(den_, g2);
    return from_coprime(n1 * n2, d1 * d2);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw NotInvertible("division by zero rational function");
    // o is reduced, so the flipped fraction is already coprime
    return *this * from_coprime(o.den_, o.num_);
}

RatFunc RatFunc::derivative(int i) const {
    if (is_poly()) {
        Rational d = den_.constant_value();
        return RatFunc(num_.derivative(i).scaled(rat_inv(d)));
    }
    MPoly w = num_.derivative(i) * den_ - num_ * den_.derivative(i);
    if (w.is_zero()) return RatFunc(arity());
    // gcd(w, den^2) = g1 * g2 with two gcds against den itself
    MPoly g1 = mpoly_gcd(w, den_);
    MPoly w1 = g1.is_constant() ? w : mpoly_exact_divide(w, g1);
    MPoly d1 = g1.is_constant() ? den_ : mpoly_exact_divide(den_, g1);
    MPoly g2 = mpoly_gcd(w1, den_);
    MPoly w2 = g2.is_constant() ? w1 : mpoly_exact_divide(w1, g2);
    MPoly d2 = g2.is_constant() ? den_ : mpoly_exact_divide(den_, g2);
    return from_coprime(w2, d1 * d2);
}

RatFunc RatFunc::extended(int new_arity) const {
    RatFunc r;
    r.num_ = num_.extended(new_arity);
    r.den_ = den_.extended(new_arity);
    return r;
}

Rational RatFunc::eval_rat(const std::vector<Rational>& args) const {
    Rational d = den_.eval_rat(args);
    if (d == 0) throw NotInvertible("rational function pole at evaluation point");
    return num_.eval_rat(args) / d;
}

RatFunc RatFunc::subst(const std::vector<MPoly>& subs) const {
    MPoly n = num_.subst(subs);
    MPoly d = den_.subst(subs);
    if (d.is_zero()) throw NotInvertible("substitution maps denominator to zero");
    return RatFunc(n, d);
}

std::string RatFunc::str() const {
    if (is_poly()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace jc
