#include "jetcalc/algebroid.hpp"

#include "jetcalc/errors.hpp"

namespace jc {

AlgebroidChart AlgebroidChart::zero(int m, int r) {
    AlgebroidChart g;
    g.m = m;
    g.r = r;
    g.anchor.assign(m, std::vector<MPoly>(r, MPoly(m)));
    g.c.assign(r, std::vector<std::vector<MPoly>>(r, std::vector<MPoly>(r, MPoly(m))));
    g.name = "zero";
    return g;
}

AlgSection AlgSection::frame(const AlgebroidChart& g, int l) {
    AlgSection s(g.m, g.r);
    s.comp[l] = RatFunc(g.m, Rational(1));
    return s;
}

bool AlgSection::is_zero() const {
    for (const auto& f : comp)
        if (!f.is_zero()) return false;
    return true;
}

AlgSection AlgSection::operator+(const AlgSection& o) const {
    AlgSection s(m, r);
    for (int l = 0; l < r; ++l) s.comp[l] = comp[l] + o.comp[l];
    return s;
}

AlgSection AlgSection::operator-(const AlgSection& o) const {
    AlgSection s(m, r);
    for (int l = 0; l < r; ++l) s.comp[l] = comp[l] - o.comp[l];
    return s;
}

AlgSection AlgSection::scaled(const RatFunc& f) const {
    AlgSection s(m, r);
    for (int l = 0; l < r; ++l) s.comp[l] = comp[l] * f;
    return s;
}

bool AlgSection::operator==(const AlgSection& o) const {
    if (m != o.m || r != o.r) return false;
    for (int l = 0; l < r; ++l)
        if (comp[l] != o.comp[l]) return false;
    return true;
}

namespace {

std::string first_monomial_witness(const MPoly& p) {
    const auto& [a, coef] = *p.terms().begin();
    return "monomial x^" + mi_str(a) + " has coefficient " + coef.get_str();
}

} // namespace

AlgValidation algebroid_validate(const AlgebroidChart& g) {
    AlgValidation v;
    const int m = g.m, r = g.r;
    // antisymmetry c^n_{lp} = -c^n_{pl}
    for (int n = 0; n < r; ++n)
        for (int l = 0; l < r; ++l)
            for (int p = l; p < r; ++p) {
                MPoly s = g.cf(n, l, p) + g.cf(n, p, l);
                if (!s.is_zero()) {
                    v.ok = false;
                    v.witness = "antisymmetry fails at c^" + std::to_string(n + 1) + "_{" +
                                std::to_string(l + 1) + std::to_string(p + 1) + "}: " +
                                first_monomial_witness(s);
                    return v;
                }
            }
    // anchor morphism on frame pairs: the bracket of constant frames is
    // sum_n c^n_{lp} e_n, so the condition anchor([e_l,e_p]) = [a_l, a_p]
    // reads sum_n c^n_{lp} a^i_n = sum_j (a^j_l d_j a^i_p - a^j_p d_j a^i_l)
    for (int l = 0; l < r; ++l)
        for (int p = l + 1; p < r; ++p)
            for (int i = 0; i < m; ++i) {
                MPoly lhs(m);
                for (int n = 0; n < r; ++n) lhs += g.cf(n, l, p) * g.a(i, n);
                MPoly comm(m);
                for (int j = 0; j < m; ++j) {
                    comm += g.a(j, l) * g.a(i, p).derivative(j);
                    comm -= g.a(j, p) * g.a(i, l).derivative(j);
                }
                MPoly dd = lhs - comm;
                if (!dd.is_zero()) {
                    v.ok = false;
                    v.witness = "anchor morphism fails on frames (" + std::to_string(l + 1) +
                                "," + std::to_string(p + 1) + ") component " +
                                std::to_string(i + 1) + ": " + first_monomial_witness(dd);
                    return v;
                }
            }
    // frame Jacobi: cyclic sum of [e_l, [e_p, e_q]] vanishes
    for (int l = 0; l < r; ++l)
        for (int p = l + 1; p < r; ++p)
            for (int q = p + 1; q < r; ++q) {
                std::vector<MPoly> acc(r, MPoly(m));
                int tri[3][3] = {{l, p, q}, {p, q, l}, {q, l, p}};
                for (auto& t : tri) {
                    int A = t[0], B = t[1], C = t[2];
                    // [e_B, e_C] = sum_n c^n_{BC} e_n, then [e_A, sum_n f_n e_n]
                    for (int n = 0; n < r; ++n) {
                        const MPoly& f = g.cf(n, B, C);
                        for (int s = 0; s < r; ++s) acc[s] += f * g.cf(s, A, n);
                        for (int j = 0; j < m; ++j) acc[n] += g.a(j, A) * f.derivative(j);
                    }
                }
                for (int s = 0; s < r; ++s)
                    if (!acc[s].is_zero()) {
                        v.ok = false;
                        v.witness = "Jacobi fails on frames (" + std::to_string(l + 1) + "," +
                                    std::to_string(p + 1) + "," + std::to_string(q + 1) +
                                    ") component " + std::to_string(s + 1) + ": " +
                                    first_monomial_witness(acc[s]);
                        return v;
                    }
            }
    // Leibniz on frames with each coordinate function:
    //   [e_l, x_i e_p] - x_i [e_l, e_p] - a^i_l e_p = 0
    for (int l = 0; l < r && v.ok; ++l)
        for (int p = 0; p < r && v.ok; ++p)
            for (int i = 0; i < m && v.ok; ++i) {
                AlgSection el = AlgSection::frame(g, l);
                AlgSection ep = AlgSection::frame(g, p);
                RatFunc xi_coord = RatFunc::variable(i, m);
                AlgSection lhs = bracket(g, el, ep.scaled(xi_coord));
                AlgSection rhs = bracket(g, el, ep).scaled(xi_coord);
                rhs = rhs + ep.scaled(RatFunc(g.a(i, l)));
                AlgSection d = lhs - rhs;
                if (!d.is_zero()) {
                    v.ok = false;
                    v.witness = "Leibniz fails for f = x" + std::to_string(i + 1) +
                                " on frames (" + std::to_string(l + 1) + "," +
                                std::to_string(p + 1) + ")";
                }
            }
    return v;
}

AlgSection bracket(const AlgebroidChart& g, const AlgSection& xi, const AlgSection& eta) {
    if (xi.m != g.m || xi.r != g.r || eta.m != g.m || eta.r != g.r)
        throw ShapeError("bracket section shape");
    AlgSection out(g.m, g.r);
    for (int n = 0; n < g.r; ++n) {
        RatFunc acc(g.m);
        for (int l = 0; l < g.r; ++l) {
            if (xi.comp[l].is_zero()) continue;
            for (int p = 0; p < g.r; ++p) {
                const MPoly& cf = g.cf(n, l, p);
                if (cf.is_zero() || eta.comp[p].is_zero()) continue;
                acc += xi.comp[l] * eta.comp[p] * RatFunc(cf);
            }
        }
        for (int i = 0; i < g.m; ++i) {
            for (int l = 0; l < g.r; ++l) {
                if (g.a(i, l).is_zero()) continue;
                RatFunc ai(g.a(i, l));
                if (!xi.comp[l].is_zero()) acc += ai * xi.comp[l] * eta.comp[n].derivative(i);
                if (!eta.comp[l].is_zero()) acc -= ai * eta.comp[l] * xi.comp[n].derivative(i);
            }
        }
        out.comp[n] = acc;
    }
    return out;
}

std::vector<RatFunc> anchor_apply(const AlgebroidChart& g, const AlgSection& xi) {
    std::vector<RatFunc> v(g.m, RatFunc(g.m));
    for (int i = 0; i < g.m; ++i)
        for (int l = 0; l < g.r; ++l)
            if (!g.a(i, l).is_zero() && !xi.comp[l].is_zero())
                v[i] += RatFunc(g.a(i, l)) * xi.comp[l];
    return v;
}

std::vector<RatFunc> vf_commutator(int m, const std::vector<RatFunc>& v,
                                   const std::vector<RatFunc>& w) {
    std::vector<RatFunc> out(m, RatFunc(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (!v[j].is_zero()) out[i] += v[j] * w[i].derivative(j);
            if (!w[j].is_zero()) out[i] -= w[j] * v[i].derivative(j);
        }
    return out;
}

std::pair<std::vector<RatFunc>, AlgSection> iota_pushforward(const AlgebroidChart& g,
                                                             const AlgSection& xi) {
    AlgSection neg(g.m, g.r);
    for (int l = 0; l < g.r; ++l) neg.comp[l] = -xi.comp[l];
    return {anchor_apply(g, xi), neg};
}

RatFunc random_poly(int m, std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> cdist(-3, 3);
    MPoly p(m);
    for (const auto& a : enumerate_leq(m, deg)) {
        if (coin(rng) == 0) continue; // keep polynomials sparse
        int c = cdist(rng);
        if (c) p.set_coeff(a, Rational(c));
    }
    return RatFunc(p);
}

AlgSection random_section(const AlgebroidChart& g, std::mt19937_64& rng, int deg) {
    AlgSection s(g.m, g.r);
    for (int l = 0; l < g.r; ++l) s.comp[l] = random_poly(g.m, rng, deg);
    return s;
}

std::vector<RatFunc> random_vector_field(int m, std::mt19937_64& rng, int deg) {
    std::vector<RatFunc> v;
    v.reserve(m);
    for (int i = 0; i < m; ++i) v.push_back(random_poly(m, rng, deg));
    return v;
}

} // namespace jc
