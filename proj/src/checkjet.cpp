#include "jetcalc/checkjet.hpp"

namespace jc {

CheckJet::CheckJet(std::vector<RatFunc> v_in, JetSection xi_in) : v(std::move(v_in)), xi(std::move(xi_in)) {
    if (static_cast<int>(v.size()) != xi.m()) throw ShapeError("CheckJet tangent size");
}

CheckJet CheckJet::from_tangent(std::vector<RatFunc> v, int r, int k) {
    int m = static_cast<int>(v.size());
    return CheckJet(std::move(v), JetSection(m, r, k));
}

CheckJet CheckJet::from_jet(JetSection xi) {
    std::vector<RatFunc> v(xi.m(), RatFunc(xi.m()));
    return CheckJet(std::move(v), std::move(xi));
}

CheckJet CheckJet::operator+(const CheckJet& o) const {
    if (v.size() != o.v.size()) throw ShapeError("CheckJet + tangent size");
    CheckJet s = *this;
    for (size_t i = 0; i < v.size(); ++i) s.v[i] = v[i] + o.v[i];
    s.xi = xi + o.xi;
    return s;
}

CheckJet CheckJet::operator-(const CheckJet& o) const { return *this + (-o); }

CheckJet CheckJet::operator-() const {
    CheckJet s = *this;
    for (auto& c : s.v) c = -c;
    s.xi = -xi;
    return s;
}

bool CheckJet::operator==(const CheckJet& o) const { return v == o.v && xi == o.xi; }

CheckJet module_scale(const RatFunc& f, const CheckJet& u) {
    CheckJet s = u;
    for (auto& c : s.v) c = f * c;
    s.xi = u.xi.scaled_pointwise(f);
    return s;
}

std::vector<RatFunc> t_star(const AlgebroidChart& g, const CheckJet& u) {
    std::vector<RatFunc> out = u.v;
    if (u.order() >= 0) {
        std::vector<RatFunc> av = anchor_apply(g, u.xi.base_part());
        for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + av[i];
    }
    return out;
}

TildeJet tilde_lift(const AlgebroidChart& g, const JetSection& xi) {
    std::vector<RatFunc> v(xi.m(), RatFunc(xi.m()));
    if (xi.order() >= 0) v = anchor_apply(g, xi.base_part());
    return TildeJet{CheckJet(std::move(v), xi)};
}

bool is_tilde(const AlgebroidChart& g, const CheckJet& u) {
    return u == tilde_lift(g, u.xi).val;
}

TildeJet as_tilde(const AlgebroidChart& g, CheckJet u) {
    if (!is_tilde(g, u)) throw ValidationError("tangent part is not the anchor of the base coefficient");
    return TildeJet{std::move(u)};
}

// ---- DiagonalBrackets ----

namespace {

// d^alpha x^beta as a polynomial: falling-factorial coefficient on x^{beta-alpha}
RatFunc monomial_derivative(const MultiIndex& alpha, const MultiIndex& beta, int m) {
    if (!alpha.divides(beta)) return RatFunc(m);
    Rational c(1);
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < alpha[j]; ++t) c *= Rational(beta[j] - t);
    return RatFunc(MPoly::monomial(beta.minus(alpha), c));
}

std::vector<RatFunc> coeffs_from(const MatX<RatFunc>& minv, const JetSection& u) {
    const int r = u.r();
    const long n = u.ncoef();
    std::vector<RatFunc> f(static_cast<size_t>(n) * r, RatFunc(u.m()));
    for (long bi = 0; bi < n; ++bi)
        for (int l = 0; l < r; ++l) {
            RatFunc acc(u.m());
            for (long ai = 0; ai < n; ++ai) {
                const RatFunc& e = minv(bi, ai);
                if (!e.is_zero()) acc += e * u.at(ai, l);
            }
            f[static_cast<size_t>(bi) * r + l] = acc;
        }
    return f;
}

} // namespace

DiagonalBrackets::Span& DiagonalBrackets::span(int k) const {
    auto it = span_.find(k);
    if (it != span_.end()) return it->second;
    const int m = g_->m;
    const long n = count_leq(m, k);
    const auto& idx = enumerate_leq(m, k);
    MatX<RatFunc> mat(n, n);
    for (long ai = 0; ai < n; ++ai)
        for (long bi = 0; bi < n; ++bi) mat(ai, bi) = monomial_derivative(idx[ai], idx[bi], m);
    Span s;
    s.minv = inverse_mat<RatFunc>(mat); // throws NotInvertible if the family fails to span
    return span_.emplace(k, std::move(s)).first->second;
}

const JetSection& DiagonalBrackets::pair_jet(Span& s, int k, long A, long B) const {
    auto key = std::make_pair(A, B);
    auto it = s.pair_jets.find(key);
    if (it != s.pair_jets.end()) return it->second;
    const int m = g_->m, r = g_->r;
    const auto& idx = enumerate_leq(m, k);
    AlgSection sa(m, r), sb(m, r);
    sa.comp[static_cast<int>(A % r)] = RatFunc(MPoly::monomial(idx[A / r], Rational(1)));
    sb.comp[static_cast<int>(B % r)] = RatFunc(MPoly::monomial(idx[B / r], Rational(1)));
    JetSection j = prolong(bracket(*g_, sa, sb), k - 1);
    return s.pair_jets.emplace(key, std::move(j)).first->second;
}

std::vector<RatFunc> DiagonalBrackets::spanning_coefficients(const JetSection& u) const {
    if (u.m() != g_->m || u.r() != g_->r) throw ShapeError("spanning_coefficients chart mismatch");
    if (u.order() < 0) return {};
    std::lock_guard<std::mutex> lock(mu_);
    return coeffs_from(span(u.order()).minv, u);
}

JetSection DiagonalBrackets::correction(const JetSection& xi, const JetSection& eta) const {
    if (xi.m() != g_->m || xi.r() != g_->r) throw ShapeError("correction chart mismatch");
    if (xi.order() != eta.order()) throw ShapeError("correction order mismatch");
    const int m = g_->m, r = g_->r, k = xi.order();
    if (k <= 0) return JetSection(m, r, -1);
    std::lock_guard<std::mutex> lock(mu_);
    Span& s = span(k);
    std::vector<RatFunc> f = coeffs_from(s.minv, xi);
    std::vector<RatFunc> h = coeffs_from(s.minv, eta);
    JetSection out(m, r, k - 1);
    const long na = count_leq(m, k) * r;
    for (long A = 0; A < na; ++A)
        for (long B = A + 1; B < na; ++B) {
            RatFunc c = f[A] * h[B] - f[B] * h[A];
            if (c.is_zero()) continue;
            out = out + pair_jet(s, k, A, B).scaled_pointwise(c);
        }
    return out;
}

CheckJet DiagonalBrackets::first(const CheckJet& a, const CheckJet& b) const {
    if (a.m() != g_->m || a.r() != g_->r) throw ShapeError("first bracket chart mismatch");
    if (a.order() != b.order() || a.m() != b.m() || a.r() != b.r())
        throw ShapeError("first bracket operand mismatch");
    const int k = a.order();
    std::vector<RatFunc> t = vf_commutator(a.m(), a.v, b.v);
    if (k <= 0) return CheckJet(std::move(t), JetSection(a.m(), a.r(), -1));
    JetSection jet = contract(a.v, spencer_D(b.xi)).comp(0) - contract(b.v, spencer_D(a.xi)).comp(0) +
                     correction(a.xi, b.xi);
    return CheckJet(std::move(t), std::move(jet));
}

JetSection DiagonalBrackets::jet_bracket(const JetSection& xi, const JetSection& eta) const {
    if (xi.order() < 0) throw OrderError("jet_bracket needs order >= 0");
    return jet_bracket_lifted(xi.lifted_zero(xi.order() + 1), eta.lifted_zero(eta.order() + 1));
}

JetSection DiagonalBrackets::jet_bracket_lifted(const JetSection& xi_lift, const JetSection& eta_lift) const {
    if (xi_lift.order() != eta_lift.order() || xi_lift.order() < 1)
        throw OrderError("jet_bracket_lifted needs two lifts of equal order >= 1");
    std::vector<RatFunc> vx = anchor_apply(*g_, xi_lift.base_part());
    std::vector<RatFunc> ve = anchor_apply(*g_, eta_lift.base_part());
    return contract(vx, spencer_D(eta_lift)).comp(0) - contract(ve, spencer_D(xi_lift)).comp(0) +
           correction(xi_lift, eta_lift);
}

TildeJet DiagonalBrackets::second(const TildeJet& a, const TildeJet& b) const {
    return tilde_lift(*g_, jet_bracket(nu(a), nu(b)));
}

CheckJet DiagonalBrackets::third(const TildeJet& a, const CheckJet& b) const {
    if (a.order() != b.order() + 1) throw OrderError("third bracket needs orders k+1, k");
    CheckJet bl(b.v, b.xi.lifted_zero(b.order() + 1));
    return first(a.val, bl);
}

CheckJet DiagonalBrackets::third_lifted(const TildeJet& a, const CheckJet& b_lift) const {
    if (a.order() != b_lift.order()) throw OrderError("third_lifted needs equal orders");
    return first(a.val, b_lift);
}

CheckJet random_check_jet(const AlgebroidChart& g, int k, std::mt19937_64& rng, int deg) {
    return CheckJet(random_vector_field(g.m, rng, deg), random_jet_section(g.m, g.r, k, rng, deg));
}

} // namespace jc
