#include "jetcalc/jets.hpp"

#include "jetcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace jc {

JetSection::JetSection(int m, int r, int k) : m_(m), r_(r), k_(k < -1 ? -1 : k) {
    c_.assign(static_cast<size_t>(count_leq(m_, k_)) * r_, RatFunc(m_));
}

const RatFunc& JetSection::coef(const MultiIndex& alpha, int l) const {
    long ai = index_of(alpha, m_, k_);
    if (ai < 0) throw OrderError("jet coefficient outside order " + std::to_string(k_));
    return c_[ai * r_ + l];
}

void JetSection::set_coef(const MultiIndex& alpha, int l, const RatFunc& v) {
    long ai = index_of(alpha, m_, k_);
    if (ai < 0) throw OrderError("jet coefficient outside order " + std::to_string(k_));
    c_[ai * r_ + l] = v;
}

bool JetSection::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

static void jet_shape_check(const JetSection& a, const JetSection& b) {
    if (a.m() != b.m() || a.r() != b.r() || a.order() != b.order())
        throw ShapeError("jet shape mismatch");
}

JetSection JetSection::operator+(const JetSection& o) const {
    jet_shape_check(*this, o);
    JetSection out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
    return out;
}

JetSection JetSection::operator-(const JetSection& o) const {
    jet_shape_check(*this, o);
    JetSection out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] -= o.c_[i];
    return out;
}

JetSection JetSection::operator-() const {
    JetSection out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

JetSection JetSection::scaled(const Rational& q) const {
    return scaled_pointwise(RatFunc(m_, q));
}

JetSection JetSection::scaled_pointwise(const RatFunc& f) const {
    JetSection out = *this;
    for (auto& v : out.c_) v *= f;
    return out;
}

bool JetSection::operator==(const JetSection& o) const {
    return m_ == o.m_ && r_ == o.r_ && k_ == o.k_ && c_ == o.c_;
}

JetSection JetSection::truncated(int j) const {
    if (j > k_) throw OrderError("truncated() cannot raise the order");
    JetSection out(m_, r_, j);
    std::copy(c_.begin(), c_.begin() + out.c_.size(), out.c_.begin());
    return out;
}

JetSection JetSection::lifted_zero(int j) const {
    if (j < k_) throw OrderError("lifted_zero() cannot lower the order");
    JetSection out(m_, r_, j);
    std::copy(c_.begin(), c_.end(), out.c_.begin());
    return out;
}

AlgSection JetSection::base_part() const {
    AlgSection s(m_, r_);
    if (k_ >= 0)
        for (int l = 0; l < r_; ++l) s.comp[l] = at(0, l);
    return s;
}

std::vector<Rational> JetSection::values_at(const std::vector<Rational>& x) const {
    std::vector<Rational> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(v.eval_rat(x));
    return out;
}

std::string JetSection::str() const {
    const auto& idx = enumerate_leq(m_, k_);
    std::ostringstream os;
    os << "jet[k=" << k_ << "]{";
    bool first = true;
    for (size_t ai = 0; ai < idx.size(); ++ai)
        for (int l = 0; l < r_; ++l) {
            const RatFunc& v = at(ai, l);
            if (v.is_zero()) continue;
            if (!first) os << ", ";
            first = false;
            os << mi_str(idx[ai]) << ";" << l << ": " << v.str();
        }
    os << "}";
    return os.str();
}

JetSection prolong(const AlgSection& s, int k) {
    JetSection out(s.m, s.r, k);
    if (k < 0) return out;
    const auto& idx = enumerate_leq(s.m, k);
    for (size_t ai = 0; ai < idx.size(); ++ai) {
        const MultiIndex& alpha = idx[ai];
        if (alpha.degree() == 0) {
            for (int l = 0; l < s.r; ++l) out.at(ai, l) = s.comp[l];
            continue;
        }
        int i = 0;
        while (alpha[i] == 0) ++i;
        long pi = index_of(alpha.plus_unit(i, -1), s.m, k);
        for (int l = 0; l < s.r; ++l) out.at(ai, l) = out.at(pi, l).derivative(i);
    }
    return out;
}

JetSection module_mult(const RatFunc& f, const JetSection& u) {
    int m = u.m(), k = u.order();
    JetSection out(m, u.r(), k);
    if (k < 0) return out;
    const auto& idx = enumerate_leq(m, k);
    // d^gamma f, chained along parents
    std::vector<RatFunc> fd(idx.size());
    for (size_t gi = 0; gi < idx.size(); ++gi) {
        const MultiIndex& gamma = idx[gi];
        if (gamma.degree() == 0) {
            fd[gi] = f;
            continue;
        }
        int i = 0;
        while (gamma[i] == 0) ++i;
        fd[gi] = fd[index_of(gamma.plus_unit(i, -1), m, k)].derivative(i);
    }
    for (size_t ai = 0; ai < idx.size(); ++ai) {
        const MultiIndex& alpha = idx[ai];
        for (size_t bi = 0; bi <= ai; ++bi) {
            const MultiIndex& beta = idx[bi];
            if (!beta.divides(alpha)) continue;
            Rational bin = mi_binomial(alpha, beta);
            const RatFunc& df = fd[index_of(alpha.minus(beta), m, k)];
            for (int l = 0; l < u.r(); ++l)
                out.at(ai, l) += df * u.at(bi, l) * RatFunc(m, bin);
        }
    }
    return out;
}

const std::vector<std::vector<int>>& combinations(int m, int p) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, p);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (p >= 0 && p <= m) {
        std::vector<int> cur(p);
        for (int i = 0; i < p; ++i) cur[i] = i;
        while (true) {
            out.push_back(cur);
            if (p == 0) break;
            int t = p - 1;
            while (t >= 0 && cur[t] == m - p + t) --t;
            if (t < 0) break;
            ++cur[t];
            for (int s = t + 1; s < p; ++s) cur[s] = cur[s - 1] + 1;
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

long comb_index(const std::vector<int>& J, int m) {
    const auto& all = combinations(m, static_cast<int>(J.size()));
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == J) return static_cast<long>(i);
    throw ShapeError("not an increasing index tuple");
}

FormJet::FormJet(int m, int r, int k, int deg) : m_(m), r_(r), k_(k < -1 ? -1 : k), deg_(deg) {
    comps_.assign(combinations(m, deg).size(), JetSection(m_, r_, k_));
}

JetSection& FormJet::comp(const std::vector<int>& J) { return comps_[comb_index(J, m_)]; }
const JetSection& FormJet::comp(const std::vector<int>& J) const {
    return comps_[comb_index(J, m_)];
}

bool FormJet::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

static void form_shape_check(const FormJet& a, const FormJet& b) {
    if (a.m() != b.m() || a.r() != b.r() || a.order() != b.order() || a.deg() != b.deg())
        throw ShapeError("form shape mismatch");
}

FormJet FormJet::operator+(const FormJet& o) const {
    form_shape_check(*this, o);
    FormJet out = *this;
    for (long i = 0; i < ncomp(); ++i) out.comps_[i] = out.comps_[i] + o.comps_[i];
    return out;
}

FormJet FormJet::operator-(const FormJet& o) const {
    form_shape_check(*this, o);
    FormJet out = *this;
    for (long i = 0; i < ncomp(); ++i) out.comps_[i] = out.comps_[i] - o.comps_[i];
    return out;
}

bool FormJet::operator==(const FormJet& o) const {
    return m_ == o.m_ && r_ == o.r_ && k_ == o.k_ && deg_ == o.deg_ && comps_ == o.comps_;
}

// d_j of every coefficient, restricted to order k-1
static JetSection coef_derivative(const JetSection& u, int j, int newk) {
    JetSection out(u.m(), u.r(), newk);
    const auto& idx = enumerate_leq(u.m(), newk);
    for (size_t ai = 0; ai < idx.size(); ++ai)
        for (int l = 0; l < u.r(); ++l) out.at(ai, l) = u.at(ai, l).derivative(j);
    return out;
}

// (shift_j u)_alpha = u_{alpha + e_j}, defined up to order k-1
static JetSection coef_shift(const JetSection& u, int j, int newk) {
    JetSection out(u.m(), u.r(), newk);
    const auto& idx = enumerate_leq(u.m(), newk);
    for (size_t ai = 0; ai < idx.size(); ++ai) {
        long src = index_of(idx[ai].plus_unit(j), u.m(), u.order());
        for (int l = 0; l < u.r(); ++l) out.at(ai, l) = u.at(src, l);
    }
    return out;
}

FormJet spencer_D(const FormJet& phi) {
    int m = phi.m(), k = phi.order(), p = phi.deg();
    int newk = k >= 0 ? k - 1 : -1;
    FormJet out(m, phi.r(), newk, p + 1);
    if (k < 0) return out;
    const auto& target = combinations(m, p + 1);
    for (size_t ci = 0; ci < target.size(); ++ci) {
        const auto& J2 = target[ci];
        JetSection acc(m, phi.r(), newk);
        for (int t = 0; t <= p; ++t) {
            std::vector<int> J1 = J2;
            J1.erase(J1.begin() + t);
            const JetSection& src = phi.comp(J1);
            JetSection term = coef_derivative(src, J2[t], newk) - coef_shift(src, J2[t], newk);
            acc = (t % 2 == 0) ? acc + term : acc - term;
        }
        out.comp(static_cast<long>(ci)) = acc;
    }
    return out;
}

FormJet spencer_D(const JetSection& u) {
    FormJet phi(u.m(), u.r(), u.order(), 0);
    phi.comp(0) = u;
    return spencer_D(phi);
}

FormJet contract(const std::vector<RatFunc>& v, const FormJet& phi) {
    int m = phi.m(), p = phi.deg();
    if (p == 0) throw ShapeError("cannot contract a 0-form");
    if (static_cast<int>(v.size()) != m) throw ShapeError("vector field arity mismatch");
    FormJet out(m, phi.r(), phi.order(), p - 1);
    const auto& target = combinations(m, p - 1);
    for (size_t ci = 0; ci < target.size(); ++ci) {
        const auto& J1 = target[ci];
        JetSection acc(m, phi.r(), phi.order());
        for (int j = 0; j < m; ++j) {
            if (std::find(J1.begin(), J1.end(), j) != J1.end()) continue;
            std::vector<int> Jfull = J1;
            size_t pos = 0;
            while (pos < Jfull.size() && Jfull[pos] < j) ++pos;
            Jfull.insert(Jfull.begin() + pos, j);
            JetSection term = phi.comp(Jfull).scaled_pointwise(v[j]);
            acc = (pos % 2 == 0) ? acc + term : acc - term;
        }
        out.comp(static_cast<long>(ci)) = acc;
    }
    return out;
}

SymbolForm::SymbolForm(int m_, int r_, int p_, int j_) : m(m_), r(r_), p(p_), j(j_) {
    long ncomb = static_cast<long>(combinations(m, p).size());
    c.assign(static_cast<size_t>(ncomb * count_eq(m, j)) * r, Rational(0));
}

bool SymbolForm::is_zero() const {
    for (const auto& q : c)
        if (q != 0) return false;
    return true;
}

long symbol_dim(int m, int r, int j) { return count_eq(m, j) * r; }

// position of alpha (|alpha| = j) inside enumerate_eq(m, j)
static long eq_index(const MultiIndex& alpha, int m, int j) {
    return index_of(alpha, m, j) - count_leq(m, j - 1);
}

SymbolForm delta(const SymbolForm& s) {
    SymbolForm out(s.m, s.r, s.p + 1, s.j - 1);
    if (s.j - 1 < 0) return out;
    const auto& target = combinations(s.m, s.p + 1);
    const auto& lower = enumerate_eq(s.m, s.j - 1);
    for (size_t ci = 0; ci < target.size(); ++ci) {
        const auto& J2 = target[ci];
        for (int t = 0; t <= s.p; ++t) {
            std::vector<int> J1 = J2;
            J1.erase(J1.begin() + t);
            long si = comb_index(J1, s.m);
            Rational sign = (t % 2 == 0) ? -1 : 1; // includes the minus of the shift
            for (size_t ai = 0; ai < lower.size(); ++ai) {
                long src = eq_index(lower[ai].plus_unit(J2[t]), s.m, s.j);
                for (int l = 0; l < s.r; ++l)
                    out.coef(static_cast<long>(ci), static_cast<long>(ai), l) +=
                        sign * s.coef(si, src, l);
            }
        }
    }
    return out;
}

QMat delta_matrix(int m, int r, int p, int j) {
    SymbolForm probe(m, r, p, j);
    SymbolForm image = delta(probe);
    QMat M(image.dim(), probe.dim());
    M.setZero();
    for (long col = 0; col < probe.dim(); ++col) {
        SymbolForm b(m, r, p, j);
        b.c[col] = 1;
        SymbolForm db = delta(b);
        for (long row = 0; row < db.dim(); ++row) M(row, col) = db.c[row];
    }
    return M;
}

DeltaReport delta_sequence_report(int m, int r, int j0) {
    DeltaReport rep;
    int N = std::min(m, j0);
    std::vector<long> dims(N + 1), ranks(N, 0);
    for (int p = 0; p <= N; ++p)
        dims[p] = static_cast<long>(combinations(m, p).size()) * symbol_dim(m, r, j0 - p);
    for (int p = 0; p < N; ++p) ranks[p] = rank_of<Rational>(delta_matrix(m, r, p, j0 - p));
    rep.ok = true;
    std::ostringstream detail;
    for (int p = 0; p <= N; ++p) {
        DeltaPosition pos;
        pos.p = p;
        pos.j = j0 - p;
        pos.dim = dims[p];
        pos.rank_in = (p > 0) ? ranks[p - 1] : 0;
        pos.rank_out = (p < N) ? ranks[p] : 0;
        long ker = pos.dim - pos.rank_out; // rank-nullity for the outgoing map
        pos.exact = (ker == pos.rank_in);
        if (!pos.exact) {
            rep.ok = false;
            detail << "position p=" << p << ": dim " << pos.dim << ", ker " << ker << ", im "
                   << pos.rank_in << "; ";
        }
        rep.positions.push_back(pos);
    }
    rep.detail = detail.str();
    return rep;
}

JetSection random_jet_section(int m, int r, int k, std::mt19937_64& rng, int deg) {
    JetSection out(m, r, k);
    for (long ai = 0; ai < out.ncoef(); ++ai)
        for (int l = 0; l < r; ++l) out.at(ai, l) = random_poly(m, rng, deg);
    return out;
}

FormJet random_form_jet(int m, int r, int k, int p, std::mt19937_64& rng, int deg) {
    FormJet out(m, r, k, p);
    for (long ci = 0; ci < out.ncomp(); ++ci) out.comp(ci) = random_jet_section(m, r, k, rng, deg);
    return out;
}

} // namespace jc
