#pragma once

#include "jetcalc/models.hpp"
#include "jetcalc/series.hpp"

#include <random>
#include <vector>

namespace jc {

// evaluation at rational-function arguments
RatFunc mpoly_eval_rf(const MPoly& p, const std::vector<RatFunc>& args);
RatFunc ratfunc_eval_rf(const RatFunc& f, const std::vector<RatFunc>& args);

// Bisection in a model chart: sigma(x) = (W(x), x), a section of the source
// projection. Its target flow is f = t o sigma, which must have an invertible
// Jacobian wherever jets are taken. `target_inverse` optionally records a
// global polynomial inverse of f, used only by field-level pushforwards;
// pointwise jet operations never touch it.
struct BisectionField {
    int m = 0, q = 0;
    std::vector<RatFunc> w;
    std::vector<MPoly> target_inverse;

    std::vector<RatFunc> full_map() const; // (W, id), q + m components
    std::vector<RatFunc> target_map(const GroupoidModel& G) const;
    bool has_target_inverse() const { return !target_inverse.empty(); }
};

BisectionField unit_bisection(const GroupoidModel& G);
// unit plus a random polynomial perturbation, redrawn until the target
// Jacobian is invertible at the generic point
BisectionField random_bisection(const GroupoidModel& G, std::mt19937_64& rng, int deg);

// pointwise operations on bisections: (a b)(x) = a(f_b(x)) b(x), and the
// groupoid inverse b^{-1}(y) = (b(f_b^{-1}(y)))^{-1}, which needs the stored
// target inverse
BisectionField bisection_compose(const GroupoidModel& G, const BisectionField& a,
                                 const BisectionField& b);
BisectionField bisection_invert(const GroupoidModel& G, const BisectionField& b);

// Taylor series of a rational map around a Scalar base point
TruncSeries series_of_map(const std::vector<RatFunc>& fs, const std::vector<Scalar>& base,
                          int order);

// k-jet of a bisection at `base` (rational, generic, or nilpotent-shifted)
TruncSeries bisection_jet(const GroupoidModel& G, const BisectionField& sigma,
                          const std::vector<Scalar>& base, int k);
TruncSeries unit_jet(const GroupoidModel& G, const std::vector<Scalar>& base, int k);

// series of the target flow f = t o sigma of a bisection jet
TruncSeries target_series(const GroupoidModel& G, const TruncSeries& sj);

// composition and inversion of bisection jets; gk_compose(a, b) requires a
// to be based at the target value of b, and both stay sections of the source
// projection by construction
TruncSeries gk_compose(const GroupoidModel& G, const TruncSeries& a, const TruncSeries& b);
TruncSeries gk_invert(const GroupoidModel& G, const TruncSeries& a);

} // namespace jc
