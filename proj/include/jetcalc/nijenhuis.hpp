#pragma once

#include "jetcalc/spencer_nl.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace jc {

// Forms over the check space T + J^k in the fiber frame of a chart.
//
// Covector ids index the dual frame of T + J^k: ids 0..m-1 are the base
// covectors e^i (dual to the tangent slots), and id m + ai*r + l is the jet
// covector reading coefficient (alpha_ai, l) of the jet part, ai indexing
// enumerate_leq(m, k). Grlex enumeration makes the id of a jet slot
// independent of k, so expressions written at one order read unchanged at
// any higher order; an id is evaluable against a check element exactly when
// the element's jet order reaches the depth |alpha_ai| (OrderError below).

int covector_count(int m, int r, int k);
int covector_depth(int id, int m, int r); // 0 for base ids

// pairing of one frame covector with a check element
RatFunc covector_pair(int id, int m, int r, const CheckJet& u);

// constant frame section dual to covector_pair: <e^c, frame_section(d)> = delta
CheckJet frame_section(int id, int m, int r, int k);

// Scalar-valued alternating form: sum of coefficient * covector word, words
// strictly increasing. Degree 0 holds a single function at the empty word.
class ScalarForm {
  public:
    ScalarForm() = default;
    ScalarForm(int m, int r, int k, int deg);

    static ScalarForm function(int m, int r, int k, const RatFunc& f);
    static ScalarForm covector(int m, int r, int k, int id);

    int m() const { return m_; }
    int r() const { return r_; }
    int order() const { return k_; }
    int deg() const { return deg_; }

    // deepest jet id used; base covectors count 0
    int min_jet_order() const;

    const std::map<std::vector<int>, RatFunc>& terms() const { return terms_; }
    RatFunc coeff(const std::vector<int>& word) const;
    void add_term(const std::vector<int>& word, const RatFunc& c); // sorts, signs, merges

    bool is_zero() const { return terms_.empty(); }
    ScalarForm operator+(const ScalarForm& o) const;
    ScalarForm operator-(const ScalarForm& o) const;
    ScalarForm operator-() const;
    ScalarForm scaled(const RatFunc& f) const;
    bool operator==(const ScalarForm& o) const;
    bool operator!=(const ScalarForm& o) const { return !(*this == o); }

    ScalarForm wedge(const ScalarForm& o) const;

    // determinant pairing against deg() check elements
    RatFunc eval(const std::vector<CheckJet>& args) const;

  private:
    int m_ = 0, r_ = 0, k_ = -1, deg_ = 0;
    std::map<std::vector<int>, RatFunc> terms_;
};

// Form with values in T + J^k: covector words tensor check elements. The
// frame order k bounds usable covector depth; values carry their own jet
// order val_k <= k (brackets lower it, the frame stays).
class NijForm {
  public:
    NijForm() = default;
    NijForm(int m, int r, int k, int deg, int val_k);

    static NijForm term(const ScalarForm& w, const CheckJet& val);

    int m() const { return m_; }
    int r() const { return r_; }
    int order() const { return k_; }
    int deg() const { return deg_; }
    int val_order() const { return val_k_; }

    const std::map<std::vector<int>, CheckJet>& terms() const { return terms_; }
    CheckJet value(const std::vector<int>& word) const;
    void add_term(const std::vector<int>& word, const CheckJet& val);

    bool is_zero() const;
    NijForm operator+(const NijForm& o) const;
    NijForm operator-(const NijForm& o) const;
    NijForm operator-() const;
    bool operator==(const NijForm& o) const;
    bool operator!=(const NijForm& o) const { return !(*this == o); }

    // contraction of all covector slots: deg() arguments
    CheckJet eval(const std::vector<CheckJet>& args) const;

  private:
    int m_ = 0, r_ = 0, k_ = -1, deg_ = 0, val_k_ = -1;
    std::map<std::vector<int>, CheckJet> terms_;
};

// insertion of a check element into the leading slot
ScalarForm contract_check(const CheckJet& u, const ScalarForm& t);

// The graded calculus of check-space forms over one model: exterior
// differential from the first bracket of constant frame sections, insertion
// and Lie derivative, the graded bracket, the fundamental projection forms,
// and the bisection-field action. Owns the nonlinear Spencer engine; the
// frame bracket tables are cached per order behind a mutex.
class NijAlgebra {
  public:
    explicit NijAlgebra(const GroupoidModel& G);
    NijAlgebra(const NijAlgebra&) = delete;
    NijAlgebra& operator=(const NijAlgebra&) = delete;

    const GroupoidModel& model() const { return ns_.model(); }
    const AlgebroidChart& chart() const { return ns_.chart(); }
    const DiagonalBrackets& brackets() const { return ns_.brackets(); }
    const NonlinearSpencer& spencer() const { return ns_; }

    // exterior differential at the frame order of the form; the coboundary
    // of a covector needs one order of jet headroom (OrderError)
    ScalarForm nij_d(const ScalarForm& w) const;

    // derivations of degree deg(u)-1 and deg(u)
    ScalarForm nij_i(const NijForm& u, const ScalarForm& t) const;
    ScalarForm nij_lie(const NijForm& u, const ScalarForm& t) const;

    // graded bracket; value order drops by one below the smaller input value
    // order. Jet covectors in the words spend jet budget of the opposite
    // values through the derivative terms, so deep words with shallow values
    // raise OrderError; match the frame order to the value order for those.
    NijForm nij_bracket(const NijForm& u, const NijForm& v) const;

    // projection onto T parallel to J^k resp. parallel to the tilde subspace
    NijForm chi(int k) const;
    NijForm chibar(int k) const;

    // e^i - sum_l a^i_l E^{0,l}, vanishing on tilde elements' complement
    ScalarForm tilde_covector(int k, int i) const;
    // base-covector words rewritten in the tilde frame, coefficients kept
    ScalarForm tilde_substitute(const ScalarForm& w) const;

    // base forms with jet values as check-space forms: pullback words with
    // pure jet values, resp. tilde words with tilde-lifted values
    NijForm embed(const FormJet& u, int k) const;
    NijForm embed_tilde(const FormJet& u, int k) const;

    // action of an invertible field of order one above the data
    CheckJet sigma_star_check(const SigmaField& s, const CheckJet& u) const;
    NijForm sigma_star_form(const SigmaField& s, const NijForm& u) const;

  private:
    struct Frame {
        // first brackets of frame section pairs (A < B), order k inputs
        std::map<std::pair<int, int>, CheckJet> pairs;
    };

    NonlinearSpencer ns_;
    mutable std::map<int, Frame> frames_;
    mutable std::mutex mu_;

    const CheckJet& pair_bracket(int k, int A, int B) const;
    ScalarForm d_covector(int k, int id) const;
    CheckJet transport(const SigmaField& s, const SigmaField& sinv, const FormJet& ds,
                       const CheckJet& u) const;
};

} // namespace jc
