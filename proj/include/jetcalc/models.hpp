#pragma once

#include "jetcalc/algebroid.hpp"
#include "jetcalc/mpoly.hpp"

#include <string>
#include <vector>

namespace jc {

// Group law on R^q given by polynomials, with the unit at the origin.
// `mul` takes the left factor in the first q variables and the right factor
// in the next q.
struct PolyGroup {
    std::string name;
    int q = 0;
    std::vector<MPoly> mul; // q polys in 2q vars
    std::vector<MPoly> inv; // q polys in q vars

    static PolyGroup abelian(int q);
    static PolyGroup heisenberg(); // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
};

struct ModelValidation {
    bool ok = true;
    std::string witness;
};

ModelValidation group_validate(const PolyGroup& H);

// Groupoid in a chart where points are (w, x): w in R^q is the fiber slot, x
// in R^m the base slot, and the source map is the projection to x. Only the
// w-parts of unit, compose and inverse are stored; the x-parts are forced by
// s(ab) = s(b), s(a^{-1}) = t(a), s(1_x) = x, which keeps the source map a
// coordinate projection by construction.
//
// compose(p2, p1) applies p1 first; it is defined on pairs with s(p2) = t(p1).
struct GroupoidModel {
    std::string name;
    int m = 0, q = 0;
    std::vector<MPoly> target; // m polys in (w, x)
    std::vector<MPoly> unit_w; // q polys in x
    std::vector<MPoly> comp_w; // q polys in (w2, x2, w1, x1)
    std::vector<MPoly> inv_w;  // q polys in (w, x)

    int dim() const { return q + m; }

    std::vector<MPoly> full_unit() const;    // dim() polys in m vars
    std::vector<MPoly> full_compose() const; // dim() polys in 2 dim() vars
    std::vector<MPoly> full_inverse() const; // dim() polys in dim() vars
};

// pairs (z, x) with t = z and (z, y)(y, x) = (z, x)
GroupoidModel pair_model(int m);
// bundle of groups M x H, s = t = x, fiberwise multiplication
GroupoidModel group_bundle_model(int m, const PolyGroup& H);
// M x H x M with s = x, t = z, (z, h2, y)(y, h1, x) = (z, h2 h1, x)
GroupoidModel gauge_model(int m, const PolyGroup& H);
// H x M with s(h, x) = x, t(h, x) = act(h, x); act: m polys in (h, x)
GroupoidModel action_model(const PolyGroup& H, int m, const std::vector<MPoly>& act,
                           const std::string& name = "action");
// the one-parameter shear h . (x1, x2) = (x1 + h x2, x2)
std::vector<MPoly> shear_action();

// All groupoid axioms as exact polynomial identities, with composability
// imposed by substituting x2 = t(p1) etc. before comparing.
ModelValidation model_validate(const GroupoidModel& G);

// Right-invariant frame fields on the total space: R_l(p) is the derivative
// at the unit of composing fiber-direction curves through 1_{t(p)} with p.
// Components are polynomials in (w, x); the x-components vanish identically.
std::vector<std::vector<MPoly>> right_invariant_frames(const GroupoidModel& G);

// Anchor and structure functions along the units: a^i_l = d t^i / d w_l at
// 1_x, and c^n_{lp}(x) = w_n-component of [R_l, R_p] at 1_x.
AlgebroidChart extract_algebroid(const GroupoidModel& G);

} // namespace jc
