#include "jetcalc/series.hpp"

#include "jetcalc/errors.hpp"

#include <sstream>

namespace jc {

TruncSeries::TruncSeries(int m_in, int n_out, int order, std::vector<Scalar> base)
    : m_(m_in), n_(n_out), order_(order), base_(std::move(base)), coefs_(n_out) {
    if (static_cast<int>(base_.size()) != m_) throw ShapeError("TruncSeries base size");
    if (order_ < 0) throw OrderError("negative series order");
}

TruncSeries TruncSeries::identity(int m, int order, const std::vector<Scalar>& base) {
    TruncSeries f(m, m, order, base);
    for (int c = 0; c < m; ++c) {
        if (!base[c].is_zero()) f.coefs_[c][MultiIndex(m)] = base[c];
        if (order >= 1) f.coefs_[c][MultiIndex(m).plus_unit(c)] = Scalar(Rational(1));
    }
    return f;
}

TruncSeries TruncSeries::constant(int m, int order, const std::vector<Scalar>& base,
                                  const std::vector<Scalar>& value) {
    TruncSeries f(m, static_cast<int>(value.size()), order, base);
    for (size_t c = 0; c < value.size(); ++c)
        if (!value[c].is_zero()) f.coefs_[c][MultiIndex(m)] = value[c];
    return f;
}

Scalar TruncSeries::coef(int c, const MultiIndex& a) const {
    auto it = coefs_[c].find(a);
    return it == coefs_[c].end() ? Scalar() : it->second;
}

void TruncSeries::set_coef(int c, const MultiIndex& a, const Scalar& s) {
    if (a.arity() != m_) throw ShapeError("set_coef arity");
    if (a.degree() > order_) throw OrderError("set_coef beyond truncation order");
    if (s.is_zero())
        coefs_[c].erase(a);
    else
        coefs_[c][a] = s;
}

std::vector<Scalar> TruncSeries::value() const {
    std::vector<Scalar> v;
    v.reserve(n_);
    for (int c = 0; c < n_; ++c) v.push_back(coef(c, MultiIndex(m_)));
    return v;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    if (m_ != o.m_ || n_ != o.n_) throw ShapeError("series + shape");
    TruncSeries r = truncated(std::min(order_, o.order_));
    for (int c = 0; c < n_; ++c)
        for (const auto& [a, s] : o.coefs_[c]) {
            if (a.degree() > r.order_) continue;
            r.set_coef(c, a, r.coef(c, a) + s);
        }
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    if (m_ != o.m_ || n_ != o.n_) throw ShapeError("series - shape");
    TruncSeries r = truncated(std::min(order_, o.order_));
    for (int c = 0; c < n_; ++c)
        for (const auto& [a, s] : o.coefs_[c]) {
            if (a.degree() > r.order_) continue;
            r.set_coef(c, a, r.coef(c, a) - s);
        }
    return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    if (m_ != o.m_ || n_ != o.n_ || order_ != o.order_) return false;
    for (int i = 0; i < m_; ++i)
        if (base_[i] != o.base_[i]) return false;
    for (int c = 0; c < n_; ++c) {
        for (const auto& [a, s] : coefs_[c])
            if (o.coef(c, a) != s) return false;
        for (const auto& [a, s] : o.coefs_[c])
            if (coef(c, a) != s) return false;
    }
    return true;
}

TruncSeries TruncSeries::truncated(int k) const {
    if (k > order_) throw OrderError("truncated() cannot raise order");
    TruncSeries r(m_, n_, k, base_);
    for (int c = 0; c < n_; ++c)
        for (const auto& [a, s] : coefs_[c])
            if (a.degree() <= k) r.coefs_[c][a] = s;
    return r;
}

TruncSeries TruncSeries::lifted_zero(int k) const {
    if (k < order_) throw OrderError("lifted_zero() cannot drop order");
    TruncSeries r = *this;
    r.order_ = k;
    return r;
}

TruncSeries TruncSeries::component_range(int from, int count) const {
    TruncSeries r(m_, count, order_, base_);
    for (int c = 0; c < count; ++c) r.coefs_[c] = coefs_[from + c];
    return r;
}

TruncSeries TruncSeries::h_derivative(int i) const {
    if (order_ == 0) throw OrderError("h_derivative at order 0");
    TruncSeries r(m_, n_, order_ - 1, base_);
    for (int c = 0; c < n_; ++c)
        for (const auto& [a, s] : coefs_[c]) {
            if (a[i] == 0) continue;
            r.coefs_[c][a.plus_unit(i, -1)] = s * Scalar(Rational(a[i]));
        }
    return r;
}

std::vector<Scalar> TruncSeries::eval_dev(const std::vector<Scalar>& h) const {
    if (static_cast<int>(h.size()) != m_) throw ShapeError("eval_dev size");
    std::vector<Scalar> out(n_, Scalar());
    for (int c = 0; c < n_; ++c) {
        Scalar acc;
        for (const auto& [a, s] : coefs_[c]) {
            Scalar t = s;
            for (int i = 0; i < m_; ++i)
                for (int j = 0; j < a[i]; ++j) t = t * h[i];
            acc = acc + t;
        }
        out[c] = acc;
    }
    return out;
}

TruncSeries TruncSeries::rebased(const std::vector<Scalar>& delta) const {
    if (static_cast<int>(delta.size()) != m_) throw ShapeError("rebased size");
    std::vector<Scalar> nb(base_);
    for (int i = 0; i < m_; ++i) nb[i] = nb[i] + delta[i];
    TruncSeries r(m_, n_, order_, nb);
    // c'_g = sum_{a >= g} C(a, g) c_a delta^{a-g}
    for (int c = 0; c < n_; ++c) {
        for (const auto& [a, s] : coefs_[c]) {
            for (const auto& g : enumerate_leq(m_, a.degree())) {
                if (!g.divides(a)) continue;
                Rational bin = mi_binomial(a, g);
                Scalar t = s * Scalar(bin);
                MultiIndex d = a.minus(g);
                bool dead = false;
                for (int i = 0; i < m_ && !dead; ++i)
                    for (int j = 0; j < d[i]; ++j) {
                        t = t * delta[i];
                        if (t.is_zero()) {
                            dead = true;
                            break;
                        }
                    }
                if (dead || t.is_zero()) continue;
                auto it = r.coefs_[c].find(g);
                if (it == r.coefs_[c].end())
                    r.coefs_[c][g] = t;
                else {
                    it->second = it->second + t;
                    if (it->second.is_zero()) r.coefs_[c].erase(it);
                }
            }
        }
    }
    return r;
}

void TruncSeries::map_add_to(CoefMap& a, const CoefMap& b, const Scalar& factor) {
    for (const auto& [k, s] : b) {
        Scalar t = s * factor;
        if (t.is_zero()) continue;
        auto it = a.find(k);
        if (it == a.end())
            a[k] = t;
        else {
            it->second = it->second + t;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

TruncSeries::CoefMap TruncSeries::map_mul(const CoefMap& a, const CoefMap& b, int order, int m) {
    CoefMap r;
    for (const auto& [ka, sa] : a) {
        if (ka.degree() > order) continue;
        for (const auto& [kb, sb] : b) {
            if (ka.degree() + kb.degree() > order) continue;
            Scalar t = sa * sb;
            if (t.is_zero()) continue;
            MultiIndex k = ka.plus(kb);
            auto it = r.find(k);
            if (it == r.end())
                r[k] = t;
            else {
                it->second = it->second + t;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    }
    return r;
}

TruncSeries TruncSeries::apply_poly_map(const std::vector<MPoly>& polys) const {
    int out = static_cast<int>(polys.size());
    TruncSeries r(m_, out, order_, base_);
    // power cache per input component
    std::vector<std::vector<CoefMap>> pows(n_);
    for (int p = 0; p < out; ++p) {
        if (polys[p].arity() != n_) throw ShapeError("apply_poly_map arity");
        CoefMap acc;
        for (const auto& [a, c] : polys[p].terms()) {
            CoefMap term;
            term[MultiIndex(m_)] = Scalar(c);
            for (int i = 0; i < n_; ++i) {
                int e = a[i];
                if (e == 0) continue;
                auto& pc = pows[i];
                if (pc.empty()) pc.push_back(coefs_[i]);
                while (static_cast<int>(pc.size()) < e)
                    pc.push_back(map_mul(pc.back(), coefs_[i], order_, m_));
                term = map_mul(term, pc[e - 1], order_, m_);
            }
            map_add_to(acc, term, Scalar(Rational(1)));
        }
        r.coefs_[p] = std::move(acc);
    }
    return r;
}

TruncSeries TruncSeries::apply_ratfunc_map(const std::vector<RatFunc>& fs) const {
    int out = static_cast<int>(fs.size());
    TruncSeries r(m_, out, order_, base_);
    for (int p = 0; p < out; ++p) {
        std::vector<MPoly> one{fs[p].num()};
        TruncSeries ns = apply_poly_map(one);
        CoefMap val = ns.coefs_[0];
        if (!fs[p].is_poly()) {
            std::vector<MPoly> d{fs[p].den()};
            TruncSeries ds = apply_poly_map(d);
            // reciprocal of a unit series: D = d0(1 - u), 1/D = (1/d0) sum u^t
            CoefMap dm = ds.coefs_[0];
            Scalar d0 = ds.coef(0, MultiIndex(m_));
            if (d0.base().is_zero())
                throw NotInvertible("rational map denominator vanishes along series");
            Scalar d0inv = d0.inverse();
            CoefMap u; // u = 1 - D/d0, valuation >= 1
            for (const auto& [k, s] : dm) {
                if (k.degree() == 0) continue;
                u[k] = -(s * d0inv);
            }
            CoefMap recip, upow;
            recip[MultiIndex(m_)] = d0inv;
            upow[MultiIndex(m_)] = Scalar(Rational(1));
            for (int t = 1; t <= order_; ++t) {
                upow = map_mul(upow, u, order_, m_);
                if (upow.empty()) break;
                map_add_to(recip, upow, d0inv);
            }
            val = map_mul(val, recip, order_, m_);
        } else {
            Rational dc = fs[p].den().constant_value();
            if (dc != 1) {
                CoefMap scaled;
                Scalar f = Scalar(rat_inv(dc));
                for (const auto& [k, s] : val) scaled[k] = s * f;
                val = std::move(scaled);
            }
        }
        r.coefs_[p] = std::move(val);
    }
    return r;
}

TruncSeries TruncSeries::after(const TruncSeries& inner) const {
    if (inner.n_ != m_) throw ShapeError("series composition arity");
    std::vector<Scalar> iv = inner.value();
    for (int i = 0; i < m_; ++i)
        if (!(iv[i] == base_[i]))
            throw ComposeError("inner series value does not hit outer base point");
    int k = std::min(order_, inner.order_);
    TruncSeries r(inner.m_, n_, k, inner.base_);
    // deviation of inner: no constant term
    std::vector<CoefMap> dev(m_);
    for (int i = 0; i < m_; ++i) {
        for (const auto& [a, s] : inner.coefs_[i]) {
            if (a.degree() == 0 || a.degree() > k) continue;
            dev[i][a] = s;
        }
    }
    std::vector<std::vector<CoefMap>> pows(m_);
    for (int c = 0; c < n_; ++c) {
        CoefMap acc;
        for (const auto& [a, s] : coefs_[c]) {
            if (a.degree() > k) continue;
            CoefMap term;
            term[MultiIndex(inner.m_)] = s;
            bool dead = false;
            for (int i = 0; i < m_ && !dead; ++i) {
                int e = a[i];
                if (e == 0) continue;
                auto& pc = pows[i];
                if (pc.empty()) pc.push_back(dev[i]);
                while (static_cast<int>(pc.size()) < e)
                    pc.push_back(map_mul(pc.back(), dev[i], k, inner.m_));
                term = map_mul(term, pc[e - 1], k, inner.m_);
                if (term.empty()) dead = true;
            }
            if (!dead) map_add_to(acc, term, Scalar(Rational(1)));
        }
        r.coefs_[c] = std::move(acc);
    }
    return r;
}

MatX<Scalar> TruncSeries::linear_part() const {
    MatX<Scalar> l(n_, m_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < m_; ++j) l(i, j) = coef(i, MultiIndex(m_).plus_unit(j));
    return l;
}

TruncSeries TruncSeries::inverted() const {
    if (m_ != n_) throw ShapeError("inversion of non-square series map");
    MatX<Scalar> L = linear_part();
    MatX<Scalar> Linv;
    try {
        Linv = inverse_mat<Scalar>(L);
    } catch (const NotInvertible&) {
        throw NotInvertible("series linear part is singular");
    }
    // f(base + h) = value + L(h + q(h)), q = Linv (dev - L h), val(q) >= 2
    std::vector<CoefMap> dev(m_);
    for (int i = 0; i < m_; ++i)
        for (const auto& [a, s] : coefs_[i]) {
            if (a.degree() == 0) continue;
            dev[i][a] = s;
        }
    std::vector<CoefMap> q(m_);
    for (int i = 0; i < m_; ++i) {
        CoefMap qi;
        for (int j = 0; j < m_; ++j) map_add_to(qi, dev[j], Linv(i, j));
        qi.erase(MultiIndex(m_)); // no constant by construction
        for (int j = 0; j < m_; ++j) qi.erase(MultiIndex(m_).plus_unit(j));
        q[i] = std::move(qi);
    }
    // v = id - q o v, gains one correct order per pass
    std::vector<CoefMap> v(m_);
    for (int i = 0; i < m_; ++i) v[i][MultiIndex(m_).plus_unit(i)] = Scalar(Rational(1));
    for (int pass = 0; pass < order_; ++pass) {
        std::vector<CoefMap> qv(m_);
        // compose q with v (both constant-free deviation maps)
        std::vector<std::vector<CoefMap>> pows(m_);
        for (int i = 0; i < m_; ++i) {
            CoefMap acc;
            for (const auto& [a, s] : q[i]) {
                CoefMap term;
                term[MultiIndex(m_)] = s;
                bool dead = false;
                for (int j = 0; j < m_ && !dead; ++j) {
                    int e = a[j];
                    if (e == 0) continue;
                    auto& pc = pows[j];
                    if (pc.empty()) pc.push_back(v[j]);
                    while (static_cast<int>(pc.size()) < e)
                        pc.push_back(map_mul(pc.back(), v[j], order_, m_));
                    term = map_mul(term, pc[e - 1], order_, m_);
                    if (term.empty()) dead = true;
                }
                if (!dead) map_add_to(acc, term, Scalar(Rational(1)));
            }
            qv[i] = std::move(acc);
        }
        for (int i = 0; i < m_; ++i) {
            CoefMap next;
            next[MultiIndex(m_).plus_unit(i)] = Scalar(Rational(1));
            map_add_to(next, qv[i], Scalar(Rational(-1)));
            v[i] = std::move(next);
        }
    }
    // G(value + e) = base + v(Linv e)
    std::vector<Scalar> y0 = value();
    TruncSeries g(m_, m_, order_, y0);
    // w_i = (Linv e)_i as a linear deviation map in e
    std::vector<CoefMap> w(m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j)
            if (!Linv(i, j).is_zero()) w[i][MultiIndex(m_).plus_unit(j)] = Linv(i, j);
    std::vector<std::vector<CoefMap>> pows(m_);
    for (int i = 0; i < m_; ++i) {
        CoefMap acc;
        if (!base_[i].is_zero()) acc[MultiIndex(m_)] = base_[i];
        for (const auto& [a, s] : v[i]) {
            CoefMap term;
            term[MultiIndex(m_)] = s;
            bool dead = false;
            for (int j = 0; j < m_ && !dead; ++j) {
                int e = a[j];
                if (e == 0) continue;
                auto& pc = pows[j];
                if (pc.empty()) pc.push_back(w[j]);
                while (static_cast<int>(pc.size()) < e)
                    pc.push_back(map_mul(pc.back(), w[j], order_, m_));
                term = map_mul(term, pc[e - 1], order_, m_);
                if (term.empty()) dead = true;
            }
            if (!dead) map_add_to(acc, term, Scalar(Rational(1)));
        }
        g.coefs_[i] = std::move(acc);
    }
    return g;
}

std::string TruncSeries::str() const {
    std::ostringstream os;
    os << "series[m=" << m_ << ",n=" << n_ << ",K=" << order_ << "]";
    for (int c = 0; c < n_; ++c) {
        os << " F" << (c + 1) << ":";
        bool first = true;
        for (const auto& [a, s] : coefs_[c]) {
            if (!first) os << " +";
            first = false;
            os << " (" << s.str() << ")h^" << mi_str(a);
        }
        if (first) os << " 0";
    }
    return os.str();
}

} // namespace jc
