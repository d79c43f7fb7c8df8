#include "jetcalc/spencer_nl.hpp"

#include "jetcalc/errors.hpp"

namespace jc {

namespace {

Scalar shape_zero(const std::vector<Scalar>& v) {
    Scalar z(Rational(0));
    for (const auto& s : v) z = z + (s - s);
    return z;
}

// Taylor table of a tuple of functions: table[c][gi] = d^gamma f_c / gamma!
std::vector<std::vector<RatFunc>> field_taylor(const std::vector<RatFunc>& fs, int m, int k) {
    const auto& idx = enumerate_leq(m, k);
    std::vector<std::vector<RatFunc>> out(fs.size());
    for (size_t c = 0; c < fs.size(); ++c) {
        std::vector<RatFunc> der(idx.size());
        out[c].resize(idx.size());
        for (size_t gi = 0; gi < idx.size(); ++gi) {
            const MultiIndex& gamma = idx[gi];
            if (gamma.degree() == 0) {
                der[gi] = fs[c];
            } else {
                int i = 0;
                while (gamma[i] == 0) ++i;
                der[gi] = der[index_of(gamma.plus_unit(i, -1), m, k)].derivative(i);
            }
            out[c][gi] = der[gi] * RatFunc(m, Rational(1) / mi_factorial(gamma));
        }
    }
    return out;
}

Rational rational_value(const RatFunc& f, const std::vector<Rational>& x0) {
    return f.eval_rat(x0);
}

} // namespace

SigmaField sigma_of_bisection(const GroupoidModel& G, const BisectionField& b, int k) {
    if (b.m != G.m || b.q != G.q) throw ShapeError("bisection belongs to another model");
    if (k < 0) throw OrderError("sigma field order must be >= 0");
    SigmaField s;
    s.m = G.m;
    s.q = G.q;
    s.k = k;
    s.w = field_taylor(b.w, G.m, k);
    s.target_inverse = b.target_inverse;
    return s;
}

SigmaField unit_sigma(const GroupoidModel& G, int k) {
    return sigma_of_bisection(G, unit_bisection(G), k);
}

SigmaField random_sigma(const GroupoidModel& G, int k, std::mt19937_64& rng, int deg,
                        bool vertical) {
    BisectionField b0 = vertical ? unit_bisection(G) : random_bisection(G, rng, deg);
    SigmaField s = sigma_of_bisection(G, b0, k);
    const auto& idx = enumerate_leq(G.m, k);
    // resample draws whose target flow degenerates: a field must take values
    // in invertible jets
    for (int tries = 0; tries < 64; ++tries) {
        for (int c = 0; c < G.q; ++c)
            for (size_t ai = 1; ai < idx.size(); ++ai) s.w[c][ai] = random_poly(G.m, rng, deg);
        if (k == 0) return s;
        try {
            gk_invert(G, sigma_jet(G, s, generic_point(G.m), 1));
            return s;
        } catch (const NotInvertible&) {
        }
    }
    throw NotInvertible("random field sampling failed to reach an invertible jet");
}

bool sigma_is_holonomic(const SigmaField& s) {
    const auto& idx = enumerate_leq(s.m, s.k);
    for (int c = 0; c < s.q; ++c)
        for (size_t ai = 0; ai < idx.size(); ++ai) {
            const MultiIndex& a = idx[ai];
            if (a.degree() >= s.k) continue;
            for (int i = 0; i < s.m; ++i) {
                long bi = index_of(a.plus_unit(i, 1), s.m, s.k);
                RatFunc lhs = s.w[c][bi] * RatFunc(s.m, Rational(a[i] + 1));
                if (lhs != s.w[c][ai].derivative(i)) return false;
            }
        }
    return true;
}

SigmaField sigma_truncated(const SigmaField& s, int j) {
    if (j < 0 || j > s.k) throw OrderError("sigma_truncated order");
    SigmaField out;
    out.m = s.m;
    out.q = s.q;
    out.k = j;
    long n = count_leq(s.m, j);
    out.w.resize(s.q);
    for (int c = 0; c < s.q; ++c)
        out.w[c] = std::vector<RatFunc>(s.w[c].begin(), s.w[c].begin() + n);
    out.target_inverse = s.target_inverse;
    return out;
}

std::vector<RatFunc> sigma_target(const GroupoidModel& G, const SigmaField& s) {
    std::vector<RatFunc> point;
    point.reserve(G.dim());
    for (int c = 0; c < s.q; ++c) point.push_back(s.w[c][0]);
    for (int i = 0; i < s.m; ++i) point.push_back(RatFunc::variable(i, s.m));
    std::vector<RatFunc> out;
    out.reserve(G.m);
    for (const auto& t : G.target) out.push_back(mpoly_eval_rf(t, point));
    return out;
}

TruncSeries sigma_jet(const GroupoidModel& G, const SigmaField& s,
                      const std::vector<Scalar>& base, int j) {
    if (s.m != G.m || s.q != G.q) throw ShapeError("field belongs to another model");
    if (j < 0 || j > s.k) throw OrderError("sigma_jet order");
    if (static_cast<int>(base.size()) != s.m) throw ShapeError("sigma_jet base arity");
    Scalar zero = shape_zero(base);
    TruncSeries out(s.m, G.dim(), j, base);
    const auto& idx = enumerate_leq(s.m, j);
    for (int c = 0; c < s.q; ++c)
        for (size_t ai = 0; ai < idx.size(); ++ai)
            out.set_coef(c, idx[ai], s.w[c][ai].eval(base, zero));
    for (int i = 0; i < s.m; ++i) {
        out.set_coef(s.q + i, MultiIndex(s.m), base[i]);
        if (j >= 1)
            out.set_coef(s.q + i, MultiIndex(s.m).plus_unit(i), zero + Scalar(Rational(1)));
    }
    return out;
}

SigmaField sigma_compose(const GroupoidModel& G, const SigmaField& a, const SigmaField& b) {
    if (a.m != G.m || b.m != G.m || a.q != G.q || b.q != G.q)
        throw ShapeError("field belongs to another model");
    int k = std::min(a.k, b.k);
    auto xg = generic_point(G.m);
    Scalar zero = shape_zero(xg);
    TruncSeries B = sigma_jet(G, b, xg, k);
    std::vector<RatFunc> fb = sigma_target(G, b);
    std::vector<Scalar> fx;
    fx.reserve(G.m);
    for (const auto& f : fb) fx.push_back(f.eval(xg, zero));
    TruncSeries A = sigma_jet(G, a, fx, k);
    TruncSeries C = gk_compose(G, A, B);
    SigmaField out;
    out.m = G.m;
    out.q = G.q;
    out.k = k;
    const auto& idx = enumerate_leq(G.m, k);
    out.w.resize(G.q);
    for (int c = 0; c < G.q; ++c) {
        out.w[c].resize(idx.size());
        for (size_t ai = 0; ai < idx.size(); ++ai)
            out.w[c][ai] = (C.coef(c, idx[ai]) + Scalar(RatFunc(G.m))).base();
    }
    if (a.has_target_inverse() && b.has_target_inverse())
        for (const auto& gi : b.target_inverse)
            out.target_inverse.push_back(gi.subst(a.target_inverse));
    return out;
}

SigmaField sigma_invert(const GroupoidModel& G, const SigmaField& s) {
    if (!s.has_target_inverse()) throw NotInvertible("field has no recorded target inverse");
    auto xg = generic_point(G.m);
    TruncSeries S = sigma_jet(G, s, xg, s.k);
    TruncSeries Sinv = gk_invert(G, S);
    std::vector<RatFunc> finv;
    finv.reserve(G.m);
    for (const auto& gi : s.target_inverse) finv.push_back(RatFunc(gi));
    SigmaField out;
    out.m = G.m;
    out.q = G.q;
    out.k = s.k;
    const auto& idx = enumerate_leq(G.m, s.k);
    out.w.resize(G.q);
    for (int c = 0; c < G.q; ++c) {
        out.w[c].resize(idx.size());
        for (size_t ai = 0; ai < idx.size(); ++ai)
            out.w[c][ai] =
                ratfunc_eval_rf((Sinv.coef(c, idx[ai]) + Scalar(RatFunc(G.m))).base(), finv);
    }
    // the inverse field flows by f itself; record it when polynomial
    std::vector<RatFunc> f = sigma_target(G, s);
    bool poly = true;
    for (const auto& fi : f) poly = poly && fi.is_poly();
    if (poly)
        for (const auto& fi : f) {
            Rational d = fi.den().constant_value();
            out.target_inverse.push_back(fi.num().scaled(rat_inv(d)));
        }
    return out;
}

std::vector<std::vector<RatFunc>> embed_jet(const JetSection& xi) {
    const auto& idx = enumerate_leq(xi.m(), xi.order());
    std::vector<std::vector<RatFunc>> dev(xi.r());
    for (int c = 0; c < xi.r(); ++c) {
        dev[c].resize(idx.size());
        for (size_t ai = 0; ai < idx.size(); ++ai)
            dev[c][ai] = xi.at(ai, c) * RatFunc(xi.m(), Rational(1) / mi_factorial(idx[ai]));
    }
    return dev;
}

JetSection extract_jet(int m, int r, int k, const std::vector<std::vector<RatFunc>>& dev) {
    JetSection u(m, r, k);
    if (k < 0) return u;
    const auto& idx = enumerate_leq(m, k);
    for (int c = 0; c < r; ++c)
        for (size_t ai = 0; ai < idx.size(); ++ai)
            u.at(ai, c) = dev[c][ai] * RatFunc(m, Rational(mi_factorial(idx[ai])));
    return u;
}

NonlinearSpencer::NonlinearSpencer(const GroupoidModel& G)
    : g_(G), alg_(extract_algebroid(G)), db_(alg_) {
    if (g_.q != alg_.r) throw ShapeError("fiber and algebroid ranks disagree");
}

FormJet NonlinearSpencer::curve_form(
    const std::function<TruncSeries(const std::vector<Scalar>&, int)>& jet_at, int kk, bool bar,
    int slot) const {
    if (kk < 1) throw OrderError("nonlinear Spencer operator needs a field of order >= 1");
    const int m = g_.m, q = g_.q, k = kk - 1;
    FormJet out(m, q, k, 1);
    auto xg = generic_point(m);
    TruncSeries S = jet_at(xg, kk);
    TruncSeries Sinv = gk_invert(g_, S);
    std::vector<Scalar> fx = target_series(g_, S).value();
    const auto& idx = enumerate_leq(m, k);
    for (int i = 0; i < m; ++i) {
        std::vector<Scalar> xe = xg;
        xe[i] = xe[i] + Scalar::eps1(m);
        TruncSeries Ie = unit_jet(g_, xe, k);
        TruncSeries ge = [&] {
            if (!bar) {
                TruncSeries B = jet_at(xe, k);
                std::vector<Scalar> fe = target_series(g_, B).value();
                std::vector<Scalar> delta;
                delta.reserve(m);
                for (int j = 0; j < m; ++j) delta.push_back(fe[j] - fx[j]);
                return gk_compose(g_, Sinv.rebased(delta).truncated(k), B);
            }
            std::vector<Scalar> shift(m, shape_zero(xg));
            shift[i] = shift[i] + Scalar::eps1(m);
            TruncSeries At = S.rebased(shift).truncated(k);
            // the inverse field is differentiated along the target curve of
            // the continuation; find the flow point over it
            std::vector<Scalar> ye = target_series(g_, At).value();
            MatX<Scalar> Jf(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) Jf(a, b) = fx[a].derivative(b);
            VecX<Scalar> rhsv(m);
            for (int a = 0; a < m; ++a) rhsv(a) = ye[a] - fx[a];
            auto dx = solve_linear(Jf, rhsv);
            if (!dx) throw ValidationError("target flow of the field is singular at the point");
            std::vector<Scalar> xh = xg;
            for (int a = 0; a < m; ++a) xh[a] = xh[a] + (*dx)(a);
            TruncSeries Binv = gk_invert(g_, jet_at(xh, std::max(k, 1))).truncated(k);
            return gk_compose(g_, Binv, At);
        }();
        std::vector<std::vector<RatFunc>> dev(q);
        for (int c = 0; c < q; ++c) {
            dev[c].resize(idx.size());
            for (size_t ai = 0; ai < idx.size(); ++ai) {
                Scalar d = bar ? Ie.coef(c, idx[ai]) - ge.coef(c, idx[ai]) + Scalar(RatFunc(m))
                               : ge.coef(c, idx[ai]) - Ie.coef(c, idx[ai]) + Scalar(RatFunc(m));
                if (!d.base().is_zero())
                    throw ValidationError("deviation curve does not pass through the unit");
                dev[c][ai] = slot == 3 ? d.part_eps12() : d.part_eps1();
            }
        }
        JetSection val = extract_jet(m, q, k, dev);
        if (bar && slot == 1) {
            // the tangent part induced by the tilde lift must be the target
            // motion of the deviation curve
            std::vector<Scalar> tv = target_series(g_, ge).value();
            std::vector<RatFunc> an = anchor_apply(alg_, val.base_part());
            for (int j = 0; j < m; ++j)
                if (an[j] != (xe[j] - tv[j]).part_eps1())
                    throw ValidationError("second operator value is not a tilde element");
        }
        out.comp(std::vector<int>{i}) = val;
    }
    return out;
}

FormJet NonlinearSpencer::nonlinear_D(const SigmaField& s) const {
    if (s.m != g_.m || s.q != g_.q) throw ShapeError("field belongs to another model");
    auto jet_at = [&](const std::vector<Scalar>& base, int j) { return sigma_jet(g_, s, base, j); };
    return curve_form(jet_at, s.k, false, 1);
}

FormJet NonlinearSpencer::nonlinear_Dbar(const SigmaField& s) const {
    if (s.m != g_.m || s.q != g_.q) throw ShapeError("field belongs to another model");
    auto jet_at = [&](const std::vector<Scalar>& base, int j) { return sigma_jet(g_, s, base, j); };
    return curve_form(jet_at, s.k, true, 1);
}

FormJet NonlinearSpencer::mc_residual(const FormJet& u) const {
    if (u.deg() != 1) throw ShapeError("mc_residual expects a 1-form");
    if (u.order() < 1) throw OrderError("mc_residual needs values of order >= 1");
    FormJet Du = spencer_D(u);
    FormJet P(u.m(), u.r(), u.order() - 1, 2);
    for (const auto& J : combinations(u.m(), 2))
        P.comp(J) = db_.correction(u.comp(std::vector<int>{J[0]}), u.comp(std::vector<int>{J[1]}));
    return Du - P;
}

FormJet NonlinearSpencer::mc_residual_tilde(const FormJet& u) const {
    if (u.deg() != 1) throw ShapeError("mc_residual_tilde expects a 1-form");
    if (u.order() < 1) throw OrderError("mc_residual_tilde needs values of order >= 1");
    const int m = u.m(), k = u.order();
    FormJet Du = spencer_D(u);
    // the half-bracket of a tilde form against itself: the value bracket plus
    // the insertion terms coming from the twisted coframe (tilde values
    // annihilate it, so only curvature of the anchor coefficients survives)
    std::vector<JetSection> ui;
    std::vector<TildeJet> ti;
    std::vector<std::vector<RatFunc>> ai;
    std::vector<FormJet> Di;
    for (int i = 0; i < m; ++i) {
        ui.push_back(u.comp(std::vector<int>{i}));
        ti.push_back(tilde_lift(alg_, ui.back()));
        ai.push_back(anchor_apply(alg_, ui.back().base_part()));
        Di.push_back(spencer_D(ui.back()));
    }
    FormJet P(m, u.r(), k - 1, 2);
    for (const auto& J : combinations(m, 2)) {
        const int p = J[0], q = J[1];
        JetSection val = db_.first(ti[p].val, ti[q].val).xi;
        std::vector<RatFunc> bqp = anchor_apply(alg_, Di[p].comp(std::vector<int>{q}).base_part());
        std::vector<RatFunc> bpq = anchor_apply(alg_, Di[q].comp(std::vector<int>{p}).base_part());
        JetSection ins(m, u.r(), k);
        for (int j = 0; j < m; ++j) {
            RatFunc w = ai[p][j].derivative(q) - ai[q][j].derivative(p) - bqp[j] + bpq[j];
            ins = ins + ui[j].scaled_pointwise(w);
        }
        P.comp(J) = val + ins.truncated(k - 1);
    }
    return Du - P;
}

JetSection NonlinearSpencer::adjoint_inv(const SigmaField& s, const JetSection& xi) const {
    if (s.m != g_.m || s.q != g_.q) throw ShapeError("field belongs to another model");
    if (xi.m() != g_.m || xi.r() != g_.q) throw ShapeError("jet belongs to another chart");
    const int k = xi.order();
    if (k < 0) throw OrderError("adjoint transport needs order >= 0");
    if (s.k < k + 1) throw OrderError("adjoint transport needs a field one order above the jet");
    const int m = g_.m, q = g_.q;
    auto xg = generic_point(m);
    TruncSeries S = sigma_jet(g_, s, xg, k + 1);
    TruncSeries Sinv = gk_invert(g_, S);
    std::vector<Scalar> fx = target_series(g_, S).value();
    Scalar zero = shape_zero(fx);
    Scalar eps = Scalar::eps1(m);
    TruncSeries E = unit_jet(g_, fx, k);
    const auto& idx = enumerate_leq(m, k);
    for (int c = 0; c < q; ++c)
        for (size_t ai = 0; ai < idx.size(); ++ai) {
            Scalar add = eps * xi.at(ai, c).eval(fx, zero) *
                         Scalar(Rational(1) / mi_factorial(idx[ai]));
            E.set_coef(c, idx[ai], E.coef(c, idx[ai]) + add);
        }
    std::vector<Scalar> te = target_series(g_, E).value();
    std::vector<Scalar> delta;
    delta.reserve(m);
    for (int j = 0; j < m; ++j) delta.push_back(te[j] - fx[j]);
    TruncSeries A = Sinv.rebased(delta).truncated(k);
    TruncSeries C = gk_compose(g_, A, gk_compose(g_, E, S.truncated(k)));
    TruncSeries I0 = unit_jet(g_, xg, k);
    std::vector<std::vector<RatFunc>> dev(q);
    for (int c = 0; c < q; ++c) {
        dev[c].resize(idx.size());
        for (size_t ai = 0; ai < idx.size(); ++ai) {
            Scalar d = C.coef(c, idx[ai]) - I0.coef(c, idx[ai]) + Scalar(RatFunc(m));
            if (!d.base().is_zero())
                throw ValidationError("adjoint curve does not pass through the unit");
            dev[c][ai] = d.part_eps1();
        }
    }
    return extract_jet(m, q, k, dev);
}

FormJet NonlinearSpencer::pullback(const SigmaField& s, const FormJet& u) const {
    if (u.deg() == 0) {
        FormJet out(u.m(), u.r(), u.order(), 0);
        out.comp(0L) = adjoint_inv(s, u.comp(0L));
        return out;
    }
    if (u.deg() != 1) throw ShapeError("pullback implemented for degrees 0 and 1");
    const int m = g_.m;
    std::vector<JetSection> ad;
    ad.reserve(m);
    for (int j = 0; j < m; ++j) ad.push_back(adjoint_inv(s, u.comp(std::vector<int>{j})));
    std::vector<RatFunc> f = sigma_target(g_, s);
    FormJet out(u.m(), u.r(), u.order(), 1);
    for (int i = 0; i < m; ++i) {
        JetSection acc(u.m(), u.r(), u.order());
        for (int j = 0; j < m; ++j) acc = acc + ad[j].scaled_pointwise(f[j].derivative(i));
        out.comp(std::vector<int>{i}) = acc;
    }
    return out;
}

FormJet NonlinearSpencer::nonlinear_D_linearized(const JetSection& xi) const {
    if (xi.m() != g_.m || xi.r() != g_.q) throw ShapeError("jet belongs to another chart");
    if (xi.order() < 1) throw OrderError("linearized operator needs order >= 1");
    const int m = g_.m, q = g_.q;
    auto jet_at = [&](const std::vector<Scalar>& base, int j) {
        TruncSeries E = unit_jet(g_, base, j);
        Scalar zero = shape_zero(base);
        Scalar e2 = Scalar::eps2(m);
        const auto& idx = enumerate_leq(m, j);
        for (int c = 0; c < q; ++c)
            for (size_t ai = 0; ai < idx.size(); ++ai) {
                Scalar add = e2 * xi.at(ai, c).eval(base, zero) *
                             Scalar(Rational(1) / mi_factorial(idx[ai]));
                E.set_coef(c, idx[ai], E.coef(c, idx[ai]) + add);
            }
        return E;
    };
    return curve_form(jet_at, xi.order(), false, 3);
}

FormJet NonlinearSpencer::nonlinear_Dbar_linearized(const JetSection& xi) const {
    if (xi.m() != g_.m || xi.r() != g_.q) throw ShapeError("jet belongs to another chart");
    if (xi.order() < 1) throw OrderError("linearized operator needs order >= 1");
    const int m = g_.m, q = g_.q;
    auto jet_at = [&](const std::vector<Scalar>& base, int j) {
        TruncSeries E = unit_jet(g_, base, j);
        Scalar zero = shape_zero(base);
        Scalar e2 = Scalar::eps2(m);
        const auto& idx = enumerate_leq(m, j);
        for (int c = 0; c < q; ++c)
            for (size_t ai = 0; ai < idx.size(); ++ai) {
                Scalar add = e2 * xi.at(ai, c).eval(base, zero) *
                             Scalar(Rational(1) / mi_factorial(idx[ai]));
                E.set_coef(c, idx[ai], E.coef(c, idx[ai]) + add);
            }
        return E;
    };
    return curve_form(jet_at, xi.order(), true, 3);
}

JetSection NonlinearSpencer::jet_iota(const JetSection& xi) const {
    if (xi.m() != g_.m || xi.r() != g_.q) throw ShapeError("jet belongs to another chart");
    const int k = xi.order();
    if (k < 0) throw OrderError("inversion transport needs order >= 0");
    const int m = g_.m, q = g_.q;
    auto xg = generic_point(m);
    Scalar eps = Scalar::eps1(m);
    TruncSeries E = unit_jet(g_, xg, std::max(k, 1));
    const auto& idx = enumerate_leq(m, k);
    for (int c = 0; c < q; ++c)
        for (size_t ai = 0; ai < idx.size(); ++ai) {
            Scalar add = eps * Scalar(xi.at(ai, c) * RatFunc(m, Rational(1) / mi_factorial(idx[ai])));
            E.set_coef(c, idx[ai], E.coef(c, idx[ai]) + add);
        }
    TruncSeries J = gk_invert(g_, E).truncated(k);
    std::vector<Scalar> xs = target_series(g_, E).value();
    TruncSeries I2 = unit_jet(g_, xs, k);
    std::vector<std::vector<RatFunc>> dev(q);
    for (int c = 0; c < q; ++c) {
        dev[c].resize(idx.size());
        for (size_t ai = 0; ai < idx.size(); ++ai) {
            Scalar d = J.coef(c, idx[ai]) - I2.coef(c, idx[ai]) + Scalar(RatFunc(m));
            if (!d.base().is_zero())
                throw ValidationError("inversion curve does not pass through the unit");
            dev[c][ai] = d.part_eps1();
        }
    }
    return extract_jet(m, q, k, dev);
}

bool NonlinearSpencer::b_membership(const FormJet& X, const std::vector<Rational>& x0) const {
    if (X.deg() != 1 || X.m() != g_.m || X.r() != g_.q) throw ShapeError("b_membership shape");
    if (X.order() < 0) throw OrderError("b_membership order");
    const int m = g_.m;
    MatX<Rational> M(m, m);
    for (int j = 0; j < m; ++j) {
        std::vector<RatFunc> va = anchor_apply(alg_, X.comp(std::vector<int>{j}).base_part());
        for (int i = 0; i < m; ++i)
            M(i, j) = (i == j ? Rational(1) : Rational(0)) + rational_value(va[i], x0);
    }
    return is_invertible(M);
}

bool NonlinearSpencer::btilde_membership(const FormJet& X, const std::vector<Rational>& x0) const {
    if (X.deg() != 1 || X.m() != g_.m || X.r() != g_.q)
        throw ShapeError("btilde_membership shape");
    if (X.order() < 0) throw OrderError("btilde_membership order");
    const int m = g_.m;
    MatX<Rational> M(m, m);
    for (int j = 0; j < m; ++j) {
        std::vector<RatFunc> va = anchor_apply(alg_, X.comp(std::vector<int>{j}).base_part());
        for (int i = 0; i < m; ++i)
            M(i, j) = (i == j ? Rational(1) : Rational(0)) - rational_value(va[i], x0);
    }
    return is_invertible(M);
}

SigmaField NonlinearSpencer::solve_field(const FormJet& X, const std::vector<Rational>& x0,
                                         bool bar) const {
    bool ok = bar ? btilde_membership(X, x0) : b_membership(X, x0);
    if (!ok) throw ValidationError("solvability matrix is singular at the point");
    const int m = g_.m, q = g_.q, kk = X.order() + 1;
    SigmaField s = unit_sigma(g_, kk);
    s.target_inverse.clear();
    const auto& idx = enumerate_leq(m, kk);
    // for the second complex the prescribed values mix through the inverse of
    // the solvability matrix; the constructed flow regenerates it exactly
    MatX<Rational> tr = identity_mat(m, Rational(1));
    if (bar) {
        MatX<Rational> M(m, m);
        for (int j = 0; j < m; ++j) {
            std::vector<RatFunc> va = anchor_apply(alg_, X.comp(std::vector<int>{j}).base_part());
            for (int i = 0; i < m; ++i)
                M(i, j) = (i == j ? Rational(1) : Rational(0)) - rational_value(va[i], x0);
        }
        tr = inverse_mat(M);
    }
    for (int j = 0; j < m; ++j) {
        JetSection Zj(m, q, X.order());
        for (int i = 0; i < m; ++i) {
            Rational wgt = bar ? tr(i, j) : (i == j ? Rational(1) : Rational(0));
            if (wgt != 0) Zj = Zj + X.comp(std::vector<int>{i}).scaled(wgt);
        }
        JetSection Y = Zj.lifted_zero(kk);
        RatFunc dx = RatFunc::variable(j, m) - RatFunc(m, x0[j]);
        for (int c = 0; c < q; ++c)
            for (size_t ai = 0; ai < idx.size(); ++ai)
                s.w[c][ai] += dx * Y.at(ai, c) * RatFunc(m, Rational(1) / mi_factorial(idx[ai]));
    }
    return s;
}

SigmaField NonlinearSpencer::b_solve(const FormJet& X, const std::vector<Rational>& x0) const {
    return solve_field(X, x0, false);
}

SigmaField NonlinearSpencer::btilde_solve(const FormJet& X, const std::vector<Rational>& x0) const {
    return solve_field(X, x0, true);
}

} // namespace jc
