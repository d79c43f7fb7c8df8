#include "jetcalc/bisection.hpp"

#include "jetcalc/errors.hpp"
#include "jetcalc/qlinalg.hpp"

namespace jc {

RatFunc mpoly_eval_rf(const MPoly& p, const std::vector<RatFunc>& args) {
    if (static_cast<int>(args.size()) != p.arity()) throw ShapeError("mpoly_eval_rf arity");
    int out_arity = args.empty() ? 0 : args[0].arity();
    RatFunc acc(out_arity);
    std::vector<std::vector<RatFunc>> pows(args.size());
    for (const auto& [a, c] : p.terms()) {
        RatFunc term(out_arity, c);
        for (size_t i = 0; i < args.size(); ++i) {
            int e = a[static_cast<int>(i)];
            if (e == 0) continue;
            auto& pw = pows[i];
            if (pw.empty()) pw.push_back(args[i]);
            while (static_cast<int>(pw.size()) < e) pw.push_back(pw.back() * args[i]);
            term *= pw[e - 1];
        }
        acc += term;
    }
    return acc;
}

RatFunc ratfunc_eval_rf(const RatFunc& f, const std::vector<RatFunc>& args) {
    RatFunc n = mpoly_eval_rf(f.num(), args);
    if (f.den().is_constant()) {
        Rational d = f.den().constant_value();
        return n * RatFunc(n.arity(), rat_inv(d));
    }
    RatFunc d = mpoly_eval_rf(f.den(), args);
    if (d.is_zero()) throw NotInvertible("denominator vanishes under substitution");
    return n / d;
}

std::vector<RatFunc> BisectionField::full_map() const {
    std::vector<RatFunc> out = w;
    for (int i = 0; i < m; ++i) out.push_back(RatFunc::variable(i, m));
    return out;
}

std::vector<RatFunc> BisectionField::target_map(const GroupoidModel& G) const {
    std::vector<RatFunc> point = full_map();
    std::vector<RatFunc> out;
    out.reserve(m);
    for (const auto& t : G.target) out.push_back(mpoly_eval_rf(t, point));
    return out;
}

BisectionField unit_bisection(const GroupoidModel& G) {
    BisectionField b;
    b.m = G.m;
    b.q = G.q;
    for (const auto& u : G.unit_w) b.w.push_back(RatFunc(u));
    for (int i = 0; i < G.m; ++i) b.target_inverse.push_back(MPoly::variable(i, G.m));
    return b;
}

static bool is_identity_map(const std::vector<RatFunc>& fs, int m) {
    for (int i = 0; i < m; ++i)
        if (fs[i] != RatFunc::variable(i, m)) return false;
    return true;
}

BisectionField random_bisection(const GroupoidModel& G, std::mt19937_64& rng, int deg) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        BisectionField b;
        b.m = G.m;
        b.q = G.q;
        for (const auto& u : G.unit_w) b.w.push_back(RatFunc(u) + random_poly(G.m, rng, deg));
        std::vector<RatFunc> f = b.target_map(G);
        MatX<RatFunc> J(G.m, G.m);
        for (int i = 0; i < G.m; ++i)
            for (int j = 0; j < G.m; ++j) J(i, j) = f[i].derivative(j);
        if (!is_invertible(J)) continue;
        if (is_identity_map(f, G.m))
            for (int i = 0; i < G.m; ++i) b.target_inverse.push_back(MPoly::variable(i, G.m));
        return b;
    }
    throw ValidationError("no invertible bisection found");
}

BisectionField bisection_compose(const GroupoidModel& G, const BisectionField& a,
                                 const BisectionField& b) {
    BisectionField out;
    out.m = G.m;
    out.q = G.q;
    std::vector<RatFunc> fb = b.target_map(G);
    std::vector<RatFunc> a_pt;
    for (const auto& wl : a.w) a_pt.push_back(ratfunc_eval_rf(wl, fb));
    for (const auto& fi : fb) a_pt.push_back(fi);
    std::vector<RatFunc> pair = a_pt;
    for (const auto& v : b.full_map()) pair.push_back(v);
    for (const auto& cw : G.comp_w) out.w.push_back(mpoly_eval_rf(cw, pair));
    if (a.has_target_inverse() && b.has_target_inverse()) {
        // (f_a o f_b)^{-1} = f_b^{-1} o f_a^{-1}
        for (const auto& gi : b.target_inverse)
            out.target_inverse.push_back(gi.subst(a.target_inverse));
    }
    return out;
}

BisectionField bisection_invert(const GroupoidModel& G, const BisectionField& b) {
    if (!b.has_target_inverse())
        throw NotInvertible("bisection has no recorded target inverse");
    BisectionField out;
    out.m = G.m;
    out.q = G.q;
    std::vector<RatFunc> finv;
    for (const auto& gi : b.target_inverse) finv.push_back(RatFunc(gi));
    std::vector<RatFunc> pt;
    for (const auto& wl : b.w) pt.push_back(ratfunc_eval_rf(wl, finv));
    for (const auto& gi : finv) pt.push_back(gi);
    for (const auto& iw : G.inv_w) out.w.push_back(mpoly_eval_rf(iw, pt));
    // the inverse flows by f itself; record it when polynomial
    std::vector<RatFunc> f = b.target_map(G);
    bool poly = true;
    for (const auto& fi : f) poly = poly && fi.is_poly();
    if (poly)
        for (const auto& fi : f) {
            Rational d = fi.den().constant_value();
            out.target_inverse.push_back(fi.num().scaled(rat_inv(d)));
        }
    return out;
}

static Scalar shape_zero(const std::vector<Scalar>& v) {
    Scalar z(Rational(0));
    for (const auto& s : v) z = z + (s - s);
    return z;
}

TruncSeries series_of_map(const std::vector<RatFunc>& fs, const std::vector<Scalar>& base,
                          int order) {
    const int n = static_cast<int>(fs.size());
    if (n == 0) throw ShapeError("series of an empty map");
    const int m = fs[0].arity();
    if (static_cast<int>(base.size()) != m) throw ShapeError("series base arity");
    Scalar zero = shape_zero(base);
    TruncSeries out(m, n, order, base);
    const auto& idx = enumerate_leq(m, order);
    for (int c = 0; c < n; ++c) {
        // chained partial derivatives of fs[c] along the grlex order
        std::vector<RatFunc> der(idx.size());
        for (size_t gi = 0; gi < idx.size(); ++gi) {
            const MultiIndex& gamma = idx[gi];
            if (gamma.degree() == 0) {
                der[gi] = fs[c];
            } else {
                int i = 0;
                while (gamma[i] == 0) ++i;
                der[gi] = der[index_of(gamma.plus_unit(i, -1), m, order)].derivative(i);
            }
            Rational inv_fact = Rational(1) / mi_factorial(gamma);
            Scalar coef = der[gi].eval(base, zero) * Scalar(inv_fact);
            out.set_coef(c, gamma, coef);
        }
    }
    return out;
}

TruncSeries bisection_jet(const GroupoidModel& G, const BisectionField& sigma,
                          const std::vector<Scalar>& base, int k) {
    if (sigma.m != G.m || sigma.q != G.q) throw ShapeError("bisection belongs to another model");
    return series_of_map(sigma.full_map(), base, k);
}

TruncSeries unit_jet(const GroupoidModel& G, const std::vector<Scalar>& base, int k) {
    return series_of_map(unit_bisection(G).full_map(), base, k);
}

TruncSeries target_series(const GroupoidModel& G, const TruncSeries& sj) {
    if (sj.out_arity() != G.dim()) throw ShapeError("jet does not live in this model");
    return sj.apply_poly_map(G.target);
}

// vertical stack of two series with the same input arity and base
static TruncSeries stack2(const TruncSeries& top, const TruncSeries& bot) {
    if (top.in_arity() != bot.in_arity() || !(top.base() == bot.base()))
        throw ComposeError("stacked series must share the base");
    int ord = std::min(top.order(), bot.order());
    TruncSeries t2 = top.truncated(ord), b2 = bot.truncated(ord);
    TruncSeries out(top.in_arity(), top.out_arity() + bot.out_arity(), ord, top.base());
    for (int c = 0; c < top.out_arity(); ++c)
        for (const auto& [a, s] : t2.comp(c)) out.set_coef(c, a, s);
    for (int c = 0; c < bot.out_arity(); ++c)
        for (const auto& [a, s] : b2.comp(c)) out.set_coef(top.out_arity() + c, a, s);
    return out;
}

TruncSeries gk_compose(const GroupoidModel& G, const TruncSeries& a, const TruncSeries& b) {
    if (a.out_arity() != G.dim() || b.out_arity() != G.dim())
        throw ShapeError("jet does not live in this model");
    TruncSeries fb = target_series(G, b);
    TruncSeries a_along = a.after(fb);
    return stack2(a_along, b).apply_poly_map(G.full_compose());
}

TruncSeries gk_invert(const GroupoidModel& G, const TruncSeries& a) {
    if (a.out_arity() != G.dim()) throw ShapeError("jet does not live in this model");
    TruncSeries fa = target_series(G, a);
    TruncSeries finv = fa.inverted();
    return a.after(finv).apply_poly_map(G.full_inverse());
}

} // namespace jc
