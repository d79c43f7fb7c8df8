#include "jetcalc/models.hpp"

#include "jetcalc/errors.hpp"

#include <sstream>

namespace jc {

namespace {

std::vector<MPoly> vars_block(int arity, int offset, int count) {
    std::vector<MPoly> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(MPoly::variable(offset + i, arity));
    return out;
}

std::vector<MPoly> subst_all(const std::vector<MPoly>& fs, const std::vector<MPoly>& subs) {
    std::vector<MPoly> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(f.subst(subs));
    return out;
}

std::vector<MPoly> concat(std::vector<MPoly> a, const std::vector<MPoly>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string first_diff(const std::vector<MPoly>& got, const std::vector<MPoly>& want,
                       const std::string& what) {
    for (size_t i = 0; i < got.size(); ++i) {
        MPoly d = got[i] - want[i];
        if (d.is_zero()) continue;
        const auto& [a, c] = *d.terms().begin();
        std::ostringstream os;
        os << what << " fails in component " << i + 1 << ": monomial x^" << mi_str(a)
           << " has coefficient " << rat_str(c);
        return os.str();
    }
    return {};
}

} // namespace

PolyGroup PolyGroup::abelian(int q) {
    PolyGroup H;
    H.name = "abelian" + std::to_string(q);
    H.q = q;
    for (int i = 0; i < q; ++i)
        H.mul.push_back(MPoly::variable(i, 2 * q) + MPoly::variable(q + i, 2 * q));
    for (int i = 0; i < q; ++i) H.inv.push_back(-MPoly::variable(i, q));
    return H;
}

PolyGroup PolyGroup::heisenberg() {
    PolyGroup H;
    H.name = "heisenberg";
    H.q = 3;
    auto v = [](int i) { return MPoly::variable(i, 6); };
    H.mul = {v(0) + v(3), v(1) + v(4), v(2) + v(5) + v(0) * v(4)};
    auto u = [](int i) { return MPoly::variable(i, 3); };
    H.inv = {-u(0), -u(1), -u(2) + u(0) * u(1)};
    return H;
}

ModelValidation group_validate(const PolyGroup& H) {
    ModelValidation v;
    const int q = H.q;
    auto fail = [&](const std::string& w) {
        v.ok = false;
        v.witness = w;
        return v;
    };
    std::vector<MPoly> h = vars_block(q, 0, q);
    std::vector<MPoly> zero(q, MPoly(q));
    // unit laws
    std::vector<MPoly> left = subst_all(H.mul, concat(h, zero));
    std::vector<MPoly> right = subst_all(H.mul, concat(zero, h));
    std::string w = first_diff(left, h, "right unit");
    if (!w.empty()) return fail(w);
    w = first_diff(right, h, "left unit");
    if (!w.empty()) return fail(w);
    // inverses
    std::vector<MPoly> inv_h = H.inv;
    w = first_diff(subst_all(H.mul, concat(h, inv_h)), zero, "right inverse");
    if (!w.empty()) return fail(w);
    w = first_diff(subst_all(H.mul, concat(inv_h, h)), zero, "left inverse");
    if (!w.empty()) return fail(w);
    // associativity over three free factors
    std::vector<MPoly> a = vars_block(3 * q, 0, q), b = vars_block(3 * q, q, q),
                       c = vars_block(3 * q, 2 * q, q);
    std::vector<MPoly> ab = subst_all(H.mul, concat(a, b));
    std::vector<MPoly> bc = subst_all(H.mul, concat(b, c));
    w = first_diff(subst_all(H.mul, concat(ab, c)), subst_all(H.mul, concat(a, bc)),
                   "associativity");
    if (!w.empty()) return fail(w);
    return v;
}

std::vector<MPoly> GroupoidModel::full_unit() const {
    return concat(unit_w, vars_block(m, 0, m));
}

std::vector<MPoly> GroupoidModel::full_compose() const {
    const int n = dim();
    return concat(comp_w, vars_block(2 * n, n + q, m)); // x-part of p1
}

std::vector<MPoly> GroupoidModel::full_inverse() const {
    return concat(inv_w, target);
}

GroupoidModel pair_model(int m) {
    GroupoidModel G;
    G.name = "pair" + std::to_string(m);
    G.m = m;
    G.q = m;
    const int n = 2 * m;
    G.target = vars_block(n, 0, m);                // t(z, x) = z
    G.unit_w = vars_block(m, 0, m);                // 1_x = (x, x)
    G.comp_w = vars_block(2 * n, 0, m);            // (z, y)(y, x) = (z, x)
    G.inv_w = vars_block(n, m, m);                 // (z, x)^{-1} = (x, z)
    return G;
}

GroupoidModel group_bundle_model(int m, const PolyGroup& H) {
    GroupoidModel G;
    G.name = "groupbundle_" + H.name + "_m" + std::to_string(m);
    G.m = m;
    G.q = H.q;
    const int n = G.dim();
    G.target = vars_block(n, G.q, m); // t(h, x) = x
    G.unit_w.assign(G.q, MPoly(m));
    // substitute h2 = w2 slot, h1 = w1 slot into the group law
    std::vector<MPoly> subs = concat(vars_block(2 * n, 0, G.q), vars_block(2 * n, n, G.q));
    G.comp_w = subst_all(H.mul, subs);
    G.inv_w = subst_all(H.inv, vars_block(n, 0, G.q));
    return G;
}

GroupoidModel gauge_model(int m, const PolyGroup& H) {
    GroupoidModel G;
    G.name = "gauge_" + H.name + "_m" + std::to_string(m);
    G.m = m;
    G.q = m + H.q;
    const int n = G.dim();
    G.target = vars_block(n, 0, m);                        // t(z, h, x) = z
    G.unit_w = concat(vars_block(m, 0, m), std::vector<MPoly>(H.q, MPoly(m)));
    // w-part of (z2, h2, x2)(z1, h1, x1): z2 and h2 h1
    std::vector<MPoly> subs =
        concat(vars_block(2 * n, m, H.q), vars_block(2 * n, n + m, H.q));
    G.comp_w = concat(vars_block(2 * n, 0, m), subst_all(H.mul, subs));
    G.inv_w = concat(vars_block(n, G.q, m), subst_all(H.inv, vars_block(n, m, H.q)));
    return G;
}

GroupoidModel action_model(const PolyGroup& H, int m, const std::vector<MPoly>& act,
                           const std::string& name) {
    if (static_cast<int>(act.size()) != m) throw ShapeError("action component count");
    GroupoidModel G;
    G.name = name + "_" + H.name + "_m" + std::to_string(m);
    G.m = m;
    G.q = H.q;
    const int n = G.dim();
    for (const auto& f : act)
        if (f.arity() != n) throw ShapeError("action arity");
    G.target = act;
    G.unit_w.assign(G.q, MPoly(m));
    std::vector<MPoly> subs = concat(vars_block(2 * n, 0, G.q), vars_block(2 * n, n, G.q));
    G.comp_w = subst_all(H.mul, subs);
    G.inv_w = subst_all(H.inv, vars_block(n, 0, G.q));
    return G;
}

std::vector<MPoly> shear_action() {
    auto v = [](int i) { return MPoly::variable(i, 3); }; // (h, x1, x2)
    return {v(1) + v(0) * v(2), v(2)};
}

ModelValidation model_validate(const GroupoidModel& G) {
    ModelValidation v;
    auto fail = [&](const std::string& w) {
        v.ok = false;
        v.witness = w;
        return v;
    };
    const int m = G.m, q = G.q, n = G.dim();

    // t(1_x) = x
    std::vector<MPoly> x_in_m = vars_block(m, 0, m);
    std::string w = first_diff(subst_all(G.target, G.full_unit()), x_in_m, "t after unit");
    if (!w.empty()) return fail(w);

    // unit laws on a free point p = (w, x)
    std::vector<MPoly> p = vars_block(n, 0, n);
    std::vector<MPoly> wv = vars_block(n, 0, q), xv = vars_block(n, q, m);
    std::vector<MPoly> t_p = G.target;
    std::vector<MPoly> unit_at_x = subst_all(G.full_unit(), xv);
    std::vector<MPoly> unit_at_t = subst_all(G.full_unit(), t_p);
    w = first_diff(subst_all(G.comp_w, concat(p, unit_at_x)), wv, "right unit law");
    if (!w.empty()) return fail(w);
    w = first_diff(subst_all(G.comp_w, concat(unit_at_t, p)), wv, "left unit law");
    if (!w.empty()) return fail(w);

    // t(p2 p1) = t(p2) on composable pairs, free (w2, w1, x1)
    {
        const int a = 2 * q + m;
        std::vector<MPoly> w2 = vars_block(a, 0, q), w1 = vars_block(a, q, q),
                           x1 = vars_block(a, 2 * q, m);
        std::vector<MPoly> p1 = concat(w1, x1);
        std::vector<MPoly> x2 = subst_all(G.target, p1); // composability
        std::vector<MPoly> pair = concat(concat(w2, x2), p1);
        std::vector<MPoly> prod = concat(subst_all(G.comp_w, pair), x1);
        w = first_diff(subst_all(G.target, prod), subst_all(G.target, concat(w2, x2)),
                       "target of a product");
        if (!w.empty()) return fail(w);
    }

    // associativity on composable triples, free (w3, w2, w1, x1)
    {
        const int a = 3 * q + m;
        std::vector<MPoly> w3 = vars_block(a, 0, q), w2 = vars_block(a, q, q),
                           w1 = vars_block(a, 2 * q, q), x1 = vars_block(a, 3 * q, m);
        std::vector<MPoly> p1 = concat(w1, x1);
        std::vector<MPoly> x2 = subst_all(G.target, p1);
        std::vector<MPoly> p2 = concat(w2, x2);
        std::vector<MPoly> x3 = subst_all(G.target, p2);
        std::vector<MPoly> p3 = concat(w3, x3);
        std::vector<MPoly> c21 = concat(subst_all(G.comp_w, concat(p2, p1)), x1);
        std::vector<MPoly> c32 = concat(subst_all(G.comp_w, concat(p3, p2)), x2);
        w = first_diff(subst_all(G.comp_w, concat(p3, c21)),
                       subst_all(G.comp_w, concat(c32, p1)), "associativity");
        if (!w.empty()) return fail(w);
    }

    // inverse laws on a free point
    {
        std::vector<MPoly> ip = subst_all(G.full_inverse(), p); // identity subst, kept explicit
        w = first_diff(subst_all(G.target, ip), xv, "target of the inverse");
        if (!w.empty()) return fail(w);
        std::vector<MPoly> unit_at_s = subst_all(G.unit_w, xv);
        std::vector<MPoly> unit_at_tw = subst_all(G.unit_w, t_p);
        w = first_diff(subst_all(G.comp_w, concat(ip, p)), unit_at_s, "left inverse law");
        if (!w.empty()) return fail(w);
        w = first_diff(subst_all(G.comp_w, concat(p, ip)), unit_at_tw, "right inverse law");
        if (!w.empty()) return fail(w);
    }
    return v;
}

std::vector<std::vector<MPoly>> right_invariant_frames(const GroupoidModel& G) {
    const int m = G.m, q = G.q, n = G.dim();
    // substitution sending (w2, x2, w1, x1) to (1_{t(p)}, p) for p = (w, x)
    std::vector<MPoly> p = vars_block(n, 0, n);
    std::vector<MPoly> t_p = G.target;
    std::vector<MPoly> at_unit = concat(concat(subst_all(G.unit_w, t_p), t_p), p);
    std::vector<std::vector<MPoly>> frames(q);
    for (int l = 0; l < q; ++l) {
        frames[l].reserve(n);
        for (int nn = 0; nn < q; ++nn)
            frames[l].push_back(G.comp_w[nn].derivative(l).subst(at_unit));
        for (int i = 0; i < m; ++i) frames[l].push_back(MPoly(n));
    }
    return frames;
}

AlgebroidChart extract_algebroid(const GroupoidModel& G) {
    const int m = G.m, q = G.q, n = G.dim();
    AlgebroidChart chart = AlgebroidChart::zero(m, q);
    chart.name = G.name;
    // along units: substitute (w, x) = (1_x, x)
    std::vector<MPoly> along_units = concat(G.unit_w, vars_block(m, 0, m));
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < q; ++l)
            chart.anchor[i][l] = G.target[i].derivative(l).subst(along_units);
    auto frames = right_invariant_frames(G);
    for (int l = 0; l < q; ++l)
        for (int pp = l + 1; pp < q; ++pp) {
            for (int nn = 0; nn < q; ++nn) {
                MPoly comm(n);
                for (int j = 0; j < n; ++j) {
                    comm += frames[l][j] * frames[pp][nn].derivative(j);
                    comm -= frames[pp][j] * frames[l][nn].derivative(j);
                }
                MPoly c = comm.subst(along_units);
                chart.c[nn][l][pp] = c;
                chart.c[nn][pp][l] = -c;
            }
        }
    return chart;
}

} // namespace jc
