#include "jetcalc/scalar.hpp"

namespace jc {

void Scalar::init() {
    for (auto& f : c_) f = RatFunc(arity_);
}

bool Scalar::is_zero() const {
    for (const auto& f : c_)
        if (!f.is_zero()) return false;
    return true;
}

void Scalar::set_comp(int k, const RatFunc& f) {
    if (f.arity() != arity_) throw ShapeError("Scalar::set_comp arity");
    c_[k] = f;
    if (k >= 3)
        eps_ = 2;
    else if (k >= 1 && eps_ < ((k == 2) ? 2 : 1))
        eps_ = (k == 2) ? 2 : 1;
}

Scalar Scalar::promoted(int arity, int eps) const {
    if (arity_ > 0 && arity > 0 && arity != arity_)
        throw ShapeError("Scalar arity clash: " + std::to_string(arity_) + " vs " +
                         std::to_string(arity));
    int na = std::max(arity_, arity);
    int ne = std::max(eps_, eps);
    Scalar s(na, ne);
    for (int k = 0; k < 4; ++k) s.c_[k] = c_[k].extended(na);
    return s;
}

void Scalar::join(const Scalar& a, const Scalar& b, Scalar& pa, Scalar& pb) {
    pa = a.promoted(b.arity_, b.eps_);
    pb = b.promoted(a.arity_, a.eps_);
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar a, b;
    join(*this, o, a, b);
    for (int k = 0; k < 4; ++k) a.c_[k] += b.c_[k];
    return a;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar a, b;
    join(*this, o, a, b);
    for (int k = 0; k < 4; ++k) a.c_[k] -= b.c_[k];
    return a;
}

Scalar Scalar::operator-() const {
    Scalar a = *this;
    for (int k = 0; k < 4; ++k) a.c_[k] = -a.c_[k];
    return a;
}

// (a0 + a1 e1 + a2 e2 + a3 e1e2)(b0 + b1 e1 + b2 e2 + b3 e1e2)
Scalar Scalar::operator*(const Scalar& o) const {
    Scalar a, b;
    join(*this, o, a, b);
    Scalar r(a.arity_, a.eps_);
    r.c_[0] = a.c_[0] * b.c_[0];
    if (r.eps_ >= 1) r.c_[1] = a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0];
    if (r.eps_ >= 2) {
        r.c_[2] = a.c_[0] * b.c_[2] + a.c_[2] * b.c_[0];
        r.c_[3] = a.c_[0] * b.c_[3] + a.c_[3] * b.c_[0] + a.c_[1] * b.c_[2] + a.c_[2] * b.c_[1];
    }
    return r;
}

Scalar Scalar::inverse() const {
    if (c_[0].is_zero()) throw NotInvertible("Scalar inverse: base part is zero");
    RatFunc ia = RatFunc(c_[0].den(), c_[0].num());
    Scalar r(arity_, eps_);
    r.c_[0] = ia;
    if (eps_ >= 1) r.c_[1] = -(c_[1] * ia * ia);
    if (eps_ >= 2) {
        r.c_[2] = -(c_[2] * ia * ia);
        RatFunc two(arity_, Rational(2));
        r.c_[3] = (two * c_[1] * c_[2] * ia - c_[3]) * ia * ia;
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    Scalar a, b;
    join(*this, o, a, b);
    return a * b.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    Scalar a, b;
    join(*this, o, a, b);
    for (int k = 0; k < 4; ++k)
        if (a.c_[k] != b.c_[k]) return false;
    return true;
}

Scalar Scalar::derivative(int i) const {
    Scalar r(arity_, eps_);
    for (int k = 0; k < 4; ++k) r.c_[k] = c_[k].derivative(i);
    return r;
}

std::string Scalar::str() const {
    static const char* tags[4] = {"", "*e1", "*e2", "*e1e2"};
    std::string s;
    for (int k = 0; k < 4; ++k) {
        if (c_[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[k].str() + ")" + tags[k];
    }
    return s.empty() ? "0" : s;
}

std::vector<Scalar> generic_point(int m) {
    std::vector<Scalar> xs;
    xs.reserve(m);
    for (int i = 0; i < m; ++i) xs.push_back(Scalar::coordinate(i, m));
    return xs;
}

std::vector<Scalar> rational_point(const std::vector<Rational>& xs) {
    std::vector<Scalar> out;
    out.reserve(xs.size());
    for (const auto& q : xs) out.push_back(Scalar(q));
    return out;
}

} // namespace jc
