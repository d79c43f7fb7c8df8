#include "jetcalc/mpoly.hpp"

#include <sstream>

namespace jc {

MPoly::MPoly(int arity, const Rational& c) : arity_(arity) {
    if (c != 0) terms_.emplace(MultiIndex(arity), c);
}

MPoly MPoly::variable(int i, int arity) {
    if (i < 0 || i >= arity) throw ShapeError("MPoly::variable index");
    MPoly p(arity);
    p.terms_.emplace(MultiIndex(arity).plus_unit(i), Rational(1));
    return p;
}

MPoly MPoly::monomial(const MultiIndex& a, const Rational& c) {
    MPoly p(a.arity());
    if (c != 0) p.terms_.emplace(a, c);
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.degree() == 0;
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw ShapeError("constant_value of nonconstant polynomial");
    return terms_.begin()->second;
}

int MPoly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

Rational MPoly::coeff(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::set_coeff(const MultiIndex& a, const Rational& c) {
    if (a.arity() != arity_) throw ShapeError("set_coeff arity");
    if (c == 0)
        terms_.erase(a);
    else
        terms_[a] = c;
}

void MPoly::add_term(const MultiIndex& a, const Rational& c) {
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(a, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (arity_ != o.arity_) throw ShapeError("MPoly + arity");
    MPoly r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    if (arity_ != o.arity_) throw ShapeError("MPoly - arity");
    MPoly r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(arity_);
    for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    if (arity_ != o.arity_) throw ShapeError("MPoly * arity");
    MPoly r(arity_);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) r.add_term(a.plus(b), ca * cb);
    return r;
}

MPoly MPoly::scaled(const Rational& c) const {
    MPoly r(arity_);
    if (c == 0) return r;
    for (const auto& [a, ca] : terms_) r.terms_.emplace(a, ca * c);
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r(arity_, 1);
    MPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
}

MPoly MPoly::derivative(int i) const {
    MPoly r(arity_);
    for (const auto& [a, c] : terms_) {
        if (a[i] == 0) continue;
        r.add_term(a.plus_unit(i, -1), c * a[i]);
    }
    return r;
}

MPoly MPoly::derivative(const MultiIndex& a) const {
    MPoly r = *this;
    for (int i = 0; i < a.arity(); ++i)
        for (int j = 0; j < a[i]; ++j) r = r.derivative(i);
    return r;
}

MPoly MPoly::extended(int new_arity) const {
    if (new_arity == arity_) return *this;
    if (new_arity < arity_) throw ShapeError("MPoly::extended shrinks arity");
    MPoly r(new_arity);
    for (const auto& [a, c] : terms_) {
        MultiIndex b(new_arity);
        for (int i = 0; i < arity_; ++i) b[i] = a[i];
        r.terms_.emplace(b, c);
    }
    return r;
}

Rational MPoly::eval_rat(const std::vector<Rational>& args) const {
    if (static_cast<int>(args.size()) != arity_) throw ShapeError("eval_rat argument count");
    Rational acc = 0;
    for (const auto& [a, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < arity_; ++i)
            if (a[i]) t *= rat_pow(args[i], static_cast<unsigned>(a[i]));
        acc += t;
    }
    return acc;
}

MPoly MPoly::subst(const std::vector<MPoly>& subs) const {
    if (static_cast<int>(subs.size()) != arity_) throw ShapeError("subst argument count");
    int out_arity = arity_ == 0 ? 0 : subs[0].arity();
    for (const auto& s : subs)
        if (s.arity() != out_arity) throw ShapeError("subst mixed arities");
    MPoly acc(out_arity);
    for (const auto& [a, c] : terms_) {
        MPoly t(out_arity, c);
        for (int i = 0; i < arity_; ++i)
            if (a[i]) t = t * subs[i].pow(static_cast<unsigned>(a[i]));
        acc += t;
    }
    return acc;
}

Rational MPoly::lead_coeff() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print grlex descending: highest terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const MultiIndex& a = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational ac = neg ? Rational(-c) : c;
        bool has_vars = a.degree() > 0;
        if (ac != 1 || !has_vars) {
            os << ac.get_str();
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (int i = 0; i < a.arity(); ++i) {
            if (a[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << "x" << (i + 1);
            if (a[i] > 1) os << "^" << a[i];
        }
    }
    return os.str();
}

} // namespace jc
