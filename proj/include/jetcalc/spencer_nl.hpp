#pragma once

#include "jetcalc/bisection.hpp"
#include "jetcalc/checkjet.hpp"
#include "jetcalc/jets.hpp"

#include <functional>
#include <random>
#include <vector>

namespace jc {

// Field of k-jets of bisections with coefficients in Q(x): at every base
// point the w-part is the truncated series sum_a w[c][a](x) h^a (Taylor
// convention, a over |a| <= k) and the x-part is the identity chart map.
// Holonomic fields are jets of actual bisection fields; a general field
// carries independent coefficient functions in every slot.
struct SigmaField {
    int m = 0, q = 0, k = 0;
    std::vector<std::vector<RatFunc>> w;    // [c][ai], ai indexing enumerate_leq(m, k)
    std::vector<MPoly> target_inverse;      // inverse of the point-part flow, when known

    bool has_target_inverse() const { return !target_inverse.empty(); }
};

// holonomic field: w[c][a] = d^a b_c / a!
SigmaField sigma_of_bisection(const GroupoidModel& G, const BisectionField& b, int k);
SigmaField unit_sigma(const GroupoidModel& G, int k);
// point part from random_bisection (or the unit field when vertical) with
// independent random polynomial coefficients in every higher slot
SigmaField random_sigma(const GroupoidModel& G, int k, std::mt19937_64& rng, int deg,
                        bool vertical = false);
bool sigma_is_holonomic(const SigmaField& s);
SigmaField sigma_truncated(const SigmaField& s, int j);
// point-part flow f = t(w_0(x), x)
std::vector<RatFunc> sigma_target(const GroupoidModel& G, const SigmaField& s);
// jet of order j <= s.k at a scalar base point; full-map layout (w then x)
TruncSeries sigma_jet(const GroupoidModel& G, const SigmaField& s,
                      const std::vector<Scalar>& base, int j);
// (a o b)(x) = a(f_b(x)) b(x)
SigmaField sigma_compose(const GroupoidModel& G, const SigmaField& a, const SigmaField& b);
// pointwise jet inverse, reparametrized by the flow; needs a recorded
// target inverse of the point part
SigmaField sigma_invert(const GroupoidModel& G, const SigmaField& s);

// Coefficientwise identification of J^k g with vertical jet deviations along
// the unit field: composing with a unit on the right is the identity, so the
// right-invariant frames agree with the fiber coordinate directions there and
// the deviation tables need only a factorial reindexing.
std::vector<std::vector<RatFunc>> embed_jet(const JetSection& xi);
JetSection extract_jet(int m, int r, int k, const std::vector<std::vector<RatFunc>>& dev);

// The two nonlinear Spencer operators on jet-bisection fields and the
// pointwise solvability theory around them. Owns the extracted algebroid
// chart and the bracket engine.
class NonlinearSpencer {
  public:
    explicit NonlinearSpencer(const GroupoidModel& G);
    NonlinearSpencer(const NonlinearSpencer&) = delete;
    NonlinearSpencer& operator=(const NonlinearSpencer&) = delete;

    const GroupoidModel& model() const { return g_; }
    const AlgebroidChart& chart() const { return alg_; }
    const DiagonalBrackets& brackets() const { return db_; }

    // first operator: a field of order k+1 gives a 1-form with values in
    // J^k g, direction i measuring the vertical deviation of
    // sigma(x)^{-1} sigma(x_eps) from the unit jet
    FormJet nonlinear_D(const SigmaField& s) const;

    // second operator: jet parts of the right-translated variant, built from
    // sigma_k(x_eps)^{-1} composed with the holonomic continuation of
    // sigma_{k+1}(x); values tilde-lift, and the induced tangent part equals
    // the target motion of the deviation (checked, ValidationError)
    FormJet nonlinear_Dbar(const SigmaField& s) const;

    // Du - (1/2)[u, u] on 1-forms with the jet-jet bracket correction;
    // OrderError below order 1
    FormJet mc_residual(const FormJet& u) const;
    // same with the full bracket of the tilde lifts of the values
    FormJet mc_residual_tilde(const FormJet& u) const;

    // value of sigma(x)^{-1} exp(eps xi)|_{f(x)} sigma(x): adjoint transport
    // of a jet over the target chart back to the source chart
    JetSection adjoint_inv(const SigmaField& s, const JetSection& xi) const;
    // pullback of a 0- or 1-form cochain over the target chart: adjoint on
    // values and the flow Jacobian on covectors
    FormJet pullback(const SigmaField& s, const FormJet& u) const;

    // d/du nonlinear_D(exp(u xi)) at u = 0, via the second nilpotent slot
    FormJet nonlinear_D_linearized(const JetSection& xi) const;
    FormJet nonlinear_Dbar_linearized(const JetSection& xi) const;

    // groupoid-inversion transport on jets (an involution)
    JetSection jet_iota(const JetSection& xi) const;

    // pointwise solvability matrices: v  |->  t_*(X(v) + v)  resp.
    // v |-> t_*(v - nu(X(v))) as m x m rational matrices at x0
    bool b_membership(const FormJet& X, const std::vector<Rational>& x0) const;
    bool btilde_membership(const FormJet& X, const std::vector<Rational>& x0) const;

    // field of order k+1 through the unit jet at x0 whose operator value at
    // x0 is X, from zero-padded lifts of the components; ValidationError
    // when the membership matrix is singular
    SigmaField b_solve(const FormJet& X, const std::vector<Rational>& x0) const;
    SigmaField btilde_solve(const FormJet& X, const std::vector<Rational>& x0) const;

  private:
    GroupoidModel g_;
    AlgebroidChart alg_;
    DiagonalBrackets db_;

    // shared epsilon-curve core; the provider yields the field jet at any
    // scalar base so one-parameter families can ride the second slot
    FormJet curve_form(const std::function<TruncSeries(const std::vector<Scalar>&, int)>& jet_at,
                       int kk, bool bar, int slot) const;
    SigmaField solve_field(const FormJet& X, const std::vector<Rational>& x0, bool bar) const;
};

} // namespace jc
