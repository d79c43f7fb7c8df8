#pragma once

#include "jetcalc/jets.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace jc {

// Element of T + J^k over the chart: a tangent field plus a jet section.
// Jet order -1 means the jet summand is the zero space (pure tangent data).
struct CheckJet {
    std::vector<RatFunc> v;
    JetSection xi;

    CheckJet() = default;
    CheckJet(std::vector<RatFunc> v_in, JetSection xi_in);

    static CheckJet from_tangent(std::vector<RatFunc> v, int r, int k);
    static CheckJet from_jet(JetSection xi);

    int m() const { return xi.m(); }
    int r() const { return xi.r(); }
    int order() const { return xi.order(); }

    CheckJet operator+(const CheckJet& o) const;
    CheckJet operator-(const CheckJet& o) const;
    CheckJet operator-() const;
    bool operator==(const CheckJet& o) const;
    bool operator!=(const CheckJet& o) const { return !(*this == o); }

    // drop jet coefficients above order j; tangent part unchanged
    CheckJet truncated(int j) const { return CheckJet(v, xi.truncated(j)); }
};

// function times check element: sections of T + J^k form a module over chart
// functions with pointwise scaling on both parts
CheckJet module_scale(const RatFunc& f, const CheckJet& u);

// target differential T + J^k -> T: v plus the anchor of the base coefficient
std::vector<RatFunc> t_star(const AlgebroidChart& g, const CheckJet& u);

// CheckJet constrained to have tangent part = anchor(base coefficient of xi);
// such elements are parametrized by their jet part alone
struct TildeJet {
    CheckJet val;

    int m() const { return val.m(); }
    int r() const { return val.r(); }
    int order() const { return val.order(); }

    // truncation preserves the base coefficient, hence stays tilde
    TildeJet truncated(int j) const { return TildeJet{CheckJet(val.v, val.xi.truncated(j))}; }
};

TildeJet tilde_lift(const AlgebroidChart& g, const JetSection& xi);
// inverse of tilde_lift: forget the (determined) tangent part
inline const JetSection& nu(const TildeJet& t) { return t.val.xi; }
bool is_tilde(const AlgebroidChart& g, const CheckJet& u);
TildeJet as_tilde(const AlgebroidChart& g, CheckJet u); // ValidationError if not

// The three brackets over a fixed chart.
//
// The jet-jet part of the first bracket is O-bilinear and is computed by
// expanding both jets pointwise in the holonomic family {j^k(x^beta e_l)}:
// the matrix M_{alpha,beta} = d^alpha x^beta is grlex-triangular with
// constant diagonal alpha!, hence invertible over Q(x); its inversion below
// doubles as the runtime spanning check. The expansion replays the algebroid
// bracket of the family sections through j^{k-1}.
//
// Cached spanning data per jet order; the cache is guarded by a mutex, all
// visible state is immutable.
class DiagonalBrackets {
  public:
    explicit DiagonalBrackets(const AlgebroidChart& g) : g_(&g) {}

    const AlgebroidChart& chart() const { return *g_; }

    // pointwise expansion coefficients of u in the order-k family, index
    // bi * r + l over |beta| <= k
    std::vector<RatFunc> spanning_coefficients(const JetSection& u) const;

    // O-bilinear jet-jet part P_k; order drops by one
    JetSection correction(const JetSection& xi, const JetSection& eta) const;

    // [v+xi, w+eta]_k = [v,w] + i(v)D eta - i(w)D xi + P_k(xi, eta);
    // output order k-1 (pure tangent for k = 0)
    CheckJet first(const CheckJet& a, const CheckJet& b) const;

    // bracket on jet sections at constant order, through one-order lifts:
    // i(anchor pi0 xi) D eta' - i(anchor pi0 eta) D xi' + P_{k+1}(xi', eta')
    // with xi', eta' any lifts (zero-padded by default; lift-independent)
    JetSection jet_bracket(const JetSection& xi, const JetSection& eta) const;
    JetSection jet_bracket_lifted(const JetSection& xi_lift, const JetSection& eta_lift) const;

    // order-preserving bracket on tilde elements
    TildeJet second(const TildeJet& a, const TildeJet& b) const;

    // mixed bracket: a of order k+1 against b of order k, output order k,
    // evaluated as a first bracket against a lift of b (lift-independent)
    CheckJet third(const TildeJet& a, const CheckJet& b) const;
    CheckJet third_lifted(const TildeJet& a, const CheckJet& b_lift) const;

  private:
    struct Span {
        MatX<RatFunc> minv;
        std::map<std::pair<long, long>, JetSection> pair_jets; // key A < B
    };

    const AlgebroidChart* g_;
    mutable std::map<int, Span> span_;
    mutable std::mutex mu_;

    Span& span(int k) const;
    const JetSection& pair_jet(Span& s, int k, long A, long B) const;
};

CheckJet random_check_jet(const AlgebroidChart& g, int k, std::mt19937_64& rng, int deg);

} // namespace jc
