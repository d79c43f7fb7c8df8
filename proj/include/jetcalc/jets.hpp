#pragma once

#include "jetcalc/algebroid.hpp"
#include "jetcalc/multi_index.hpp"
#include "jetcalc/qlinalg.hpp"

#include <random>
#include <string>
#include <vector>

namespace jc {

// k-jet of a section in coordinates: coefficients u_{alpha,l} in Q(x) for
// |alpha| <= k, l < r. The coefficient u_{alpha,l} stands for the alpha-th
// partial derivative itself, not the Taylor coefficient; no factorials enter
// here. Order k = -1 is allowed and denotes the zero space (no coefficients).
class JetSection {
  public:
    JetSection() = default;
    JetSection(int m, int r, int k);

    int m() const { return m_; }
    int r() const { return r_; }
    int order() const { return k_; }
    long ncoef() const { return count_leq(m_, k_); }

    const RatFunc& coef(const MultiIndex& alpha, int l) const;
    void set_coef(const MultiIndex& alpha, int l, const RatFunc& v);
    const RatFunc& at(long ai, int l) const { return c_[ai * r_ + l]; }
    RatFunc& at(long ai, int l) { return c_[ai * r_ + l]; }

    bool is_zero() const;
    JetSection operator+(const JetSection& o) const;
    JetSection operator-(const JetSection& o) const;
    JetSection operator-() const;
    JetSection scaled(const Rational& q) const;
    // multiply every coefficient by f pointwise (fiberwise scaling; this is
    // not the jet-module product, see module_mult)
    JetSection scaled_pointwise(const RatFunc& f) const;
    bool operator==(const JetSection& o) const;
    bool operator!=(const JetSection& o) const { return !(*this == o); }

    JetSection truncated(int j) const;   // j <= order, drop high coefficients
    JetSection lifted_zero(int j) const; // j >= order, pad with zeros
    AlgSection base_part() const;        // the u_{0,l} slot as a section

    // all coefficients evaluated at a rational point, dense (ai, l) order
    std::vector<Rational> values_at(const std::vector<Rational>& x) const;

    std::string str() const;

  private:
    int m_ = 0, r_ = 0, k_ = -1;
    std::vector<RatFunc> c_;
};

// u_{alpha,l} = d^alpha s_l: the holonomic k-jet of a section
JetSection prolong(const AlgSection& s, int k);

// jet of the module product: (f u)_{alpha,l} = sum_{beta <= alpha}
// C(alpha,beta) d^{alpha-beta} f  u_{beta,l}
JetSection module_mult(const RatFunc& f, const JetSection& u);

// strictly increasing p-tuples from {0..m-1}, lexicographically sorted;
// cached per (m, p)
const std::vector<std::vector<int>>& combinations(int m, int p);
long comb_index(const std::vector<int>& J, int m);

// Exterior p-form on the base with k-jet values: one JetSection per
// increasing p-tuple of base covectors.
class FormJet {
  public:
    FormJet() = default;
    FormJet(int m, int r, int k, int deg);

    int m() const { return m_; }
    int r() const { return r_; }
    int order() const { return k_; }
    int deg() const { return deg_; }
    long ncomp() const { return static_cast<long>(comps_.size()); }

    JetSection& comp(long ci) { return comps_[ci]; }
    const JetSection& comp(long ci) const { return comps_[ci]; }
    JetSection& comp(const std::vector<int>& J);
    const JetSection& comp(const std::vector<int>& J) const;

    bool is_zero() const;
    FormJet operator+(const FormJet& o) const;
    FormJet operator-(const FormJet& o) const;
    bool operator==(const FormJet& o) const;
    bool operator!=(const FormJet& o) const { return !(*this == o); }

  private:
    int m_ = 0, r_ = 0, k_ = -1, deg_ = 0;
    std::vector<JetSection> comps_;
};

// The Spencer operator
//   (D u)_{i; alpha, l} = d_i u_{alpha, l} - u_{alpha + e_i, l},  |alpha| <= k-1,
// and its extension to p-forms,
//   (D Phi)_{J} = sum_{t} (-1)^t (d_{J[t]} Phi_{J minus t} - shift_{J[t]} Phi_{J minus t}),
// a (p+1)-form with (k-1)-jet values. shift_j moves the coefficient at
// alpha + e_j down to alpha.
FormJet spencer_D(const JetSection& u);
FormJet spencer_D(const FormJet& phi);

// interior product with a vector field; degree drops by one
FormJet contract(const std::vector<RatFunc>& v, const FormJet& phi);

// ---- homogeneous symbols and the algebraic one-step complex ----

// Element of wedge^p T* tensor gamma^j where gamma^j has entries s_{alpha,l}
// over Q with |alpha| = j exactly. dim gamma^j = C(m+j-1, j) r.
struct SymbolForm {
    int m = 0, r = 0, p = 0, j = 0;
    std::vector<Rational> c; // ((ci * neq + ai) * r + l), ai in enumerate_eq(m, j)

    SymbolForm() = default;
    SymbolForm(int m_, int r_, int p_, int j_);

    long nsym() const { return count_eq(m, j); }
    long dim() const { return static_cast<long>(c.size()); }
    Rational& coef(long ci, long ai, int l) { return c[(ci * nsym() + ai) * r + l]; }
    const Rational& coef(long ci, long ai, int l) const { return c[(ci * nsym() + ai) * r + l]; }
    bool is_zero() const;
};

// (delta s)_{J; alpha, l} = sum_t (-1)^t ( -s_{J minus t; alpha + e_{J[t]}, l} ):
// the shift part of the Spencer operator on constant symbols, mapping
// wedge^p (x) gamma^j to wedge^{p+1} (x) gamma^{j-1}
SymbolForm delta(const SymbolForm& s);

// matrix of delta over the dense bases above (columns = domain basis)
QMat delta_matrix(int m, int r, int p, int j);

long symbol_dim(int m, int r, int j);

struct DeltaPosition {
    int p = 0, j = 0;
    long dim = 0;
    long rank_in = 0;
    long rank_out = 0;
    bool exact = false;
};

struct DeltaReport {
    bool ok = false;
    std::vector<DeltaPosition> positions;
    std::string detail;
};

// rank bookkeeping for 0 -> gamma^{j0} -> T* (x) gamma^{j0-1} -> ... -> 0,
// exactness asserted at every position (j0 >= 1)
DeltaReport delta_sequence_report(int m, int r, int j0);

// deterministic random data for property tests
JetSection random_jet_section(int m, int r, int k, std::mt19937_64& rng, int deg);
FormJet random_form_jet(int m, int r, int k, int p, std::mt19937_64& rng, int deg);

} // namespace jc
