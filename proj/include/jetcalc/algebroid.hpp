#pragma once

#include "jetcalc/qlinalg.hpp"
#include "jetcalc/ratfunc.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace jc {

// Anchored bracket structure on a trivialized bundle over a polynomial chart:
// m base coordinates, rank r, anchor columns a^i_l and structure functions
// c^n_{lp} (antisymmetric in l, p), all polynomial.
//
// The bracket of sections xi, eta (components in Q(x)) is
//   [xi, eta]^n = sum_{l,p} xi^l eta^p c^n_{lp}
//               + sum_{i,l} a^i_l xi^l d_i eta^n - sum_{i,p} a^i_p eta^p d_i xi^n.
struct AlgebroidChart {
    int m = 0;
    int r = 0;
    std::vector<std::vector<MPoly>> anchor; // anchor[i][l], i < m, l < r
    std::vector<std::vector<std::vector<MPoly>>> c; // c[n][l][p]
    std::string name;

    const MPoly& a(int i, int l) const { return anchor[i][l]; }
    const MPoly& cf(int n, int l, int p) const { return c[n][l][p]; }

    static AlgebroidChart zero(int m, int r); // abelian, zero anchor
};

// Section of the bundle: r components in Q(x).
struct AlgSection {
    int m = 0;
    int r = 0;
    std::vector<RatFunc> comp;

    AlgSection() = default;
    AlgSection(int m_, int r_) : m(m_), r(r_), comp(r_, RatFunc(m_)) {}

    static AlgSection frame(const AlgebroidChart& g, int l);
    bool is_zero() const;
    AlgSection operator+(const AlgSection& o) const;
    AlgSection operator-(const AlgSection& o) const;
    AlgSection scaled(const RatFunc& f) const;
    bool operator==(const AlgSection& o) const;
};

struct AlgValidation {
    bool ok = true;
    std::string witness; // first failing identity with a witness monomial
};

// Antisymmetry, frame Jacobi, anchor morphism onto vector-field commutators,
// and the Leibniz rule, all as exact polynomial identities.
AlgValidation algebroid_validate(const AlgebroidChart& g);

AlgSection bracket(const AlgebroidChart& g, const AlgSection& xi, const AlgSection& eta);

// anchor applied to a section: vector field components (t_* xi)^i
std::vector<RatFunc> anchor_apply(const AlgebroidChart& g, const AlgSection& xi);

// vector field commutator [v, w]^i = sum_j v^j d_j w^i - w^j d_j v^i
std::vector<RatFunc> vf_commutator(int m, const std::vector<RatFunc>& v,
                                   const std::vector<RatFunc>& w);

// groupoid-inversion differential along units: xi |-> (anchor xi, -xi)
std::pair<std::vector<RatFunc>, AlgSection> iota_pushforward(const AlgebroidChart& g,
                                                             const AlgSection& xi);

// deterministic random section: polynomial components, degree <= deg,
// coefficients in [-3, 3]
AlgSection random_section(const AlgebroidChart& g, std::mt19937_64& rng, int deg);
RatFunc random_poly(int m, std::mt19937_64& rng, int deg);
std::vector<RatFunc> random_vector_field(int m, std::mt19937_64& rng, int deg);

} // namespace jc
