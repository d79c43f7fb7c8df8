#include "jetcalc/nijenhuis.hpp"

#include "jetcalc/errors.hpp"

#include <algorithm>

namespace jc {

namespace {

// sorts in place; returns the permutation sign, or 0 on a repeated id
int sort_word(std::vector<int>& w) {
    int sign = 1;
    for (size_t i = 1; i < w.size(); ++i)
        for (size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
            std::swap(w[j], w[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return 0;
    return sign;
}

bool cj_zero(const CheckJet& u) {
    for (const auto& f : u.v)
        if (!f.is_zero()) return false;
    return u.xi.is_zero();
}

CheckJet cj_shape(int m, int r, int k) {
    return CheckJet(std::vector<RatFunc>(m, RatFunc(m)), JetSection(m, r, k));
}

RatFunc det_minor(const std::vector<int>& word, const std::vector<CheckJet>& args, int m, int r,
                  size_t row, unsigned used) {
    if (row == word.size()) return RatFunc(m, Rational(1));
    RatFunc acc(m);
    int skipped = 0;
    for (size_t b = 0; b < args.size(); ++b) {
        if (used & (1u << b)) {
            ++skipped;
            continue;
        }
        size_t pos = b - skipped; // position among the remaining columns
        RatFunc c = covector_pair(word[row], m, r, args[b]);
        if (!c.is_zero()) {
            RatFunc t = c * det_minor(word, args, m, r, row + 1, used | (1u << b));
            acc = (pos % 2) ? acc - t : acc + t;
        }
    }
    return acc;
}

RatFunc word_pair(const std::vector<int>& word, const std::vector<CheckJet>& args, int m, int r) {
    if (word.size() != args.size()) throw ShapeError("form degree and argument count differ");
    if (args.size() > 16) throw ShapeError("form degree too large");
    return det_minor(word, args, m, r, 0, 0u);
}

} // namespace

int covector_count(int m, int r, int k) {
    return m + r * static_cast<int>(count_leq(m, k));
}

int covector_depth(int id, int m, int r) {
    if (id < m) return 0;
    long ai = (id - m) / r;
    int d = 0;
    while (count_leq(m, d) <= ai) ++d;
    return d;
}

RatFunc covector_pair(int id, int m, int r, const CheckJet& u) {
    if (id < 0 || id >= covector_count(m, r, std::max(u.order(), covector_depth(id, m, r))))
        throw ShapeError("covector id out of range");
    if (id < m) return u.v[id];
    long ai = (id - m) / r;
    int l = (id - m) % r;
    if (ai >= u.xi.ncoef())
        throw OrderError("covector reads beyond the jet order of its argument");
    return u.xi.at(ai, l);
}

CheckJet frame_section(int id, int m, int r, int k) {
    if (id < 0 || id >= covector_count(m, r, k)) throw ShapeError("covector id out of range");
    if (id < m) {
        std::vector<RatFunc> v(m, RatFunc(m));
        v[id] = RatFunc(m, Rational(1));
        return CheckJet::from_tangent(v, r, k);
    }
    JetSection xi(m, r, k);
    xi.at((id - m) / r, (id - m) % r) = RatFunc(m, Rational(1));
    return CheckJet::from_jet(xi);
}

ScalarForm::ScalarForm(int m, int r, int k, int deg) : m_(m), r_(r), k_(k), deg_(deg) {
    if (deg < 0) throw ShapeError("form degree must be >= 0");
}

ScalarForm ScalarForm::function(int m, int r, int k, const RatFunc& f) {
    ScalarForm w(m, r, k, 0);
    w.add_term({}, f);
    return w;
}

ScalarForm ScalarForm::covector(int m, int r, int k, int id) {
    if (id < 0 || id >= covector_count(m, r, k)) throw ShapeError("covector id out of range");
    ScalarForm w(m, r, k, 1);
    w.add_term({id}, RatFunc(m, Rational(1)));
    return w;
}

int ScalarForm::min_jet_order() const {
    int d = 0;
    for (const auto& [w, c] : terms_)
        for (int id : w) d = std::max(d, covector_depth(id, m_, r_));
    return d;
}

RatFunc ScalarForm::coeff(const std::vector<int>& word) const {
    auto it = terms_.find(word);
    return it == terms_.end() ? RatFunc(m_) : it->second;
}

void ScalarForm::add_term(const std::vector<int>& word, const RatFunc& c) {
    if (static_cast<int>(word.size()) != deg_) throw ShapeError("word length is not the degree");
    if (c.is_zero()) return;
    std::vector<int> w = word;
    int sign = sort_word(w);
    if (sign == 0) return;
    for (int id : w)
        if (id < 0 || id >= covector_count(m_, r_, std::max(k_, covector_depth(id, m_, r_))))
            throw ShapeError("covector id out of range");
    RatFunc add = sign > 0 ? c : -c;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(std::move(w), add);
    } else {
        it->second += add;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ScalarForm ScalarForm::operator+(const ScalarForm& o) const {
    if (m_ != o.m_ || r_ != o.r_ || deg_ != o.deg_) throw ShapeError("form shapes differ");
    ScalarForm out(m_, r_, std::max(k_, o.k_), deg_);
    out.terms_ = terms_;
    for (const auto& [w, c] : o.terms_) {
        auto it = out.terms_.find(w);
        if (it == out.terms_.end()) {
            out.terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

ScalarForm ScalarForm::operator-(const ScalarForm& o) const { return *this + (-o); }

ScalarForm ScalarForm::operator-() const {
    ScalarForm out(m_, r_, k_, deg_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

ScalarForm ScalarForm::scaled(const RatFunc& f) const {
    ScalarForm out(m_, r_, k_, deg_);
    if (f.is_zero()) return out;
    for (const auto& [w, c] : terms_) {
        RatFunc p = c * f;
        if (!p.is_zero()) out.terms_.emplace(w, p);
    }
    return out;
}

bool ScalarForm::operator==(const ScalarForm& o) const {
    return m_ == o.m_ && r_ == o.r_ && deg_ == o.deg_ && terms_ == o.terms_;
}

ScalarForm ScalarForm::wedge(const ScalarForm& o) const {
    if (m_ != o.m_ || r_ != o.r_) throw ShapeError("form shapes differ");
    ScalarForm out(m_, r_, std::max(k_, o.k_), deg_ + o.deg_);
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) {
            std::vector<int> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    return out;
}

RatFunc ScalarForm::eval(const std::vector<CheckJet>& args) const {
    if (static_cast<int>(args.size()) != deg_)
        throw ShapeError("form degree and argument count differ");
    RatFunc acc(m_);
    for (const auto& [w, c] : terms_) acc += c * word_pair(w, args, m_, r_);
    return acc;
}

NijForm::NijForm(int m, int r, int k, int deg, int val_k)
    : m_(m), r_(r), k_(k), deg_(deg), val_k_(val_k) {
    if (deg < 0) throw ShapeError("form degree must be >= 0");
}

NijForm NijForm::term(const ScalarForm& w, const CheckJet& val) {
    if (w.m() != val.m() || w.r() != val.r()) throw ShapeError("form and value shapes differ");
    NijForm out(w.m(), w.r(), w.order(), w.deg(), val.order());
    for (const auto& [word, c] : w.terms()) out.add_term(word, module_scale(c, val));
    return out;
}

CheckJet NijForm::value(const std::vector<int>& word) const {
    auto it = terms_.find(word);
    return it == terms_.end() ? cj_shape(m_, r_, val_k_) : it->second;
}

void NijForm::add_term(const std::vector<int>& word, const CheckJet& val) {
    if (static_cast<int>(word.size()) != deg_) throw ShapeError("word length is not the degree");
    if (val.m() != m_ || val.r() != r_ || val.order() != val_k_)
        throw ShapeError("value shape differs from the form");
    if (cj_zero(val)) return;
    std::vector<int> w = word;
    int sign = sort_word(w);
    if (sign == 0) return;
    CheckJet add = sign > 0 ? val : -val;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(std::move(w), add);
    } else {
        it->second = it->second + add;
        if (cj_zero(it->second)) terms_.erase(it);
    }
}

bool NijForm::is_zero() const { return terms_.empty(); }

NijForm NijForm::operator+(const NijForm& o) const {
    if (m_ != o.m_ || r_ != o.r_ || deg_ != o.deg_ || val_k_ != o.val_k_)
        throw ShapeError("form shapes differ");
    NijForm out(m_, r_, std::max(k_, o.k_), deg_, val_k_);
    out.terms_ = terms_;
    for (const auto& [w, c] : o.terms_) {
        auto it = out.terms_.find(w);
        if (it == out.terms_.end()) {
            out.terms_.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (cj_zero(it->second)) out.terms_.erase(it);
        }
    }
    return out;
}

NijForm NijForm::operator-(const NijForm& o) const { return *this + (-o); }

NijForm NijForm::operator-() const {
    NijForm out(m_, r_, k_, deg_, val_k_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

bool NijForm::operator==(const NijForm& o) const {
    return m_ == o.m_ && r_ == o.r_ && deg_ == o.deg_ && val_k_ == o.val_k_ &&
           terms_ == o.terms_;
}

CheckJet NijForm::eval(const std::vector<CheckJet>& args) const {
    CheckJet acc = cj_shape(m_, r_, val_k_);
    for (const auto& [w, c] : terms_) acc = acc + module_scale(word_pair(w, args, m_, r_), c);
    return acc;
}

ScalarForm contract_check(const CheckJet& u, const ScalarForm& t) {
    if (t.deg() == 0) return ScalarForm(t.m(), t.r(), t.order(), 0);
    ScalarForm out(t.m(), t.r(), t.order(), t.deg() - 1);
    for (const auto& [w, c] : t.terms())
        for (size_t j = 0; j < w.size(); ++j) {
            RatFunc p = covector_pair(w[j], t.m(), t.r(), u);
            if (p.is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(w.size() - 1);
            for (size_t a = 0; a < w.size(); ++a)
                if (a != j) rest.push_back(w[a]);
            out.add_term(rest, (j % 2) ? -(c * p) : c * p);
        }
    return out;
}

NijAlgebra::NijAlgebra(const GroupoidModel& G) : ns_(G) {}

const CheckJet& NijAlgebra::pair_bracket(int k, int A, int B) const {
    std::lock_guard<std::mutex> lk(mu_);
    Frame& f = frames_[k];
    auto key = std::make_pair(A, B);
    auto it = f.pairs.find(key);
    if (it != f.pairs.end()) return it->second;
    const int m = model().m, r = chart().r;
    CheckJet g = brackets().first(frame_section(A, m, r, k), frame_section(B, m, r, k));
    return f.pairs.emplace(key, std::move(g)).first->second;
}

// d of a frame covector: the Koszul formula on constant frame sections has
// vanishing derivative terms, leaving -<e^id, [b_A, b_B]> on each pair; the
// pair brackets drop to order k-1, so jet covectors need one order of
// headroom while base covectors read tangent parts at any order
ScalarForm NijAlgebra::d_covector(int k, int id) const {
    const int m = model().m, r = chart().r;
    if (id >= m && covector_depth(id, m, r) > k - 1)
        throw OrderError("differential of a covector at the top jet order");
    const int n = covector_count(m, r, k);
    ScalarForm out(m, r, k, 2);
    for (int A = 0; A < n; ++A)
        for (int B = A + 1; B < n; ++B) {
            RatFunc c = covector_pair(id, m, r, pair_bracket(k, A, B));
            if (!c.is_zero()) out.add_term({A, B}, -c);
        }
    return out;
}

ScalarForm NijAlgebra::nij_d(const ScalarForm& w) const {
    const int m = model().m, r = chart().r;
    if (w.m() != m || w.r() != r) throw ShapeError("form belongs to another chart");
    const int k = w.order();
    ScalarForm out(m, r, k, w.deg() + 1);
    for (const auto& [word, f] : w.terms()) {
        for (int i = 0; i < m; ++i) {
            RatFunc df = f.derivative(i);
            if (df.is_zero()) continue;
            std::vector<int> v;
            v.reserve(word.size() + 1);
            v.push_back(i);
            v.insert(v.end(), word.begin(), word.end());
            out.add_term(v, df);
        }
        for (size_t j = 0; j < word.size(); ++j) {
            ScalarForm dc = d_covector(k, word[j]);
            for (const auto& [w2, g] : dc.terms()) {
                std::vector<int> v;
                v.reserve(word.size() + 1);
                v.insert(v.end(), word.begin(), word.begin() + j);
                v.insert(v.end(), w2.begin(), w2.end());
                v.insert(v.end(), word.begin() + j + 1, word.end());
                out.add_term(v, (j % 2) ? -(f * g) : f * g);
            }
        }
    }
    return out;
}

ScalarForm NijAlgebra::nij_i(const NijForm& u, const ScalarForm& t) const {
    if (u.m() != t.m() || u.r() != t.r()) throw ShapeError("form shapes differ");
    int k = std::max(u.order(), t.order());
    if (t.deg() == 0) return ScalarForm(t.m(), t.r(), k, std::max(u.deg() - 1, 0));
    ScalarForm out(t.m(), t.r(), k, u.deg() + t.deg() - 1);
    for (const auto& [wu, val] : u.terms()) {
        ScalarForm ins = contract_check(val, t);
        for (const auto& [wi, c] : ins.terms()) {
            std::vector<int> v = wu;
            v.insert(v.end(), wi.begin(), wi.end());
            out.add_term(v, c);
        }
    }
    return out;
}

ScalarForm NijAlgebra::nij_lie(const NijForm& u, const ScalarForm& t) const {
    ScalarForm a = nij_i(u, nij_d(t));
    ScalarForm b = nij_d(nij_i(u, t));
    // reassemble at the true degree: either part may be an empty form whose
    // nominal degree collapsed through a zero insertion
    ScalarForm out(t.m(), t.r(), std::max(a.order(), b.order()), u.deg() + t.deg());
    for (const auto& [w, c] : a.terms()) out.add_term(w, c);
    const bool neg = u.deg() % 2;
    for (const auto& [w, c] : b.terms()) out.add_term(w, neg ? -c : c);
    return out;
}

NijForm NijAlgebra::nij_bracket(const NijForm& u, const NijForm& v) const {
    const int m = model().m, r = chart().r;
    if (u.m() != m || u.r() != r || v.m() != m || v.r() != r)
        throw ShapeError("form belongs to another chart");
    const int k = std::max(u.order(), v.order());
    const int kb = std::min(u.val_order(), v.val_order());
    if (kb < 0) throw OrderError("bracket value order exhausted");
    const int outv = kb - 1;
    NijForm out(m, r, k, u.deg() + v.deg(), outv);
    const int rs = u.deg() * v.deg();
    for (const auto& [wu, a] : u.terms())
        for (const auto& [wv, b] : v.terms()) {
            // value bracket against the wedge of the words
            CheckJet g = brackets().first(a.truncated(kb), b.truncated(kb));
            std::vector<int> w = wu;
            w.insert(w.end(), wv.begin(), wv.end());
            out.add_term(w, g);
            // Lie derivative of each word against the opposite term
            ScalarForm tu(m, r, k, static_cast<int>(wu.size()));
            tu.add_term(wu, RatFunc(m, Rational(1)));
            ScalarForm tv(m, r, k, static_cast<int>(wv.size()));
            tv.add_term(wv, RatFunc(m, Rational(1)));
            NijForm uterm(m, r, k, u.deg(), u.val_order());
            uterm.add_term(wu, a);
            NijForm vterm(m, r, k, v.deg(), v.val_order());
            vterm.add_term(wv, b);
            ScalarForm lu = nij_lie(uterm, tv);
            for (const auto& [w2, c] : lu.terms())
                out.add_term(w2, module_scale(c, b).truncated(outv));
            ScalarForm lv = nij_lie(vterm, tu);
            for (const auto& [w2, c] : lv.terms()) {
                CheckJet add = module_scale(c, a).truncated(outv);
                out.add_term(w2, (rs % 2) ? add : -add);
            }
        }
    return out;
}

NijForm NijAlgebra::chi(int k) const {
    const int m = model().m, r = chart().r;
    if (k < 0) throw OrderError("fundamental form order must be >= 0");
    NijForm out(m, r, k, 1, k);
    for (int i = 0; i < m; ++i) out.add_term({i}, frame_section(i, m, r, k));
    return out;
}

NijForm NijAlgebra::chibar(int k) const {
    const int m = model().m, r = chart().r;
    NijForm out = chi(k);
    for (int l = 0; l < r; ++l) {
        std::vector<RatFunc> v(m, RatFunc(m));
        for (int i = 0; i < m; ++i) v[i] = -RatFunc(chart().a(i, l));
        out.add_term({m + l}, CheckJet::from_tangent(v, r, k));
    }
    return out;
}

ScalarForm NijAlgebra::tilde_covector(int k, int i) const {
    const int m = model().m, r = chart().r;
    if (i < 0 || i >= m) throw ShapeError("base covector index out of range");
    ScalarForm out = ScalarForm::covector(m, r, k, i);
    for (int l = 0; l < r; ++l) out.add_term({m + l}, -RatFunc(chart().a(i, l)));
    return out;
}

ScalarForm NijAlgebra::tilde_substitute(const ScalarForm& w) const {
    const int m = model().m, r = chart().r;
    if (w.m() != m || w.r() != r) throw ShapeError("form belongs to another chart");
    ScalarForm out(m, r, w.order(), w.deg());
    for (const auto& [word, c] : w.terms()) {
        ScalarForm acc = ScalarForm::function(m, r, w.order(), c);
        for (int id : word) {
            if (id >= m) throw ShapeError("tilde substitution expects base covector words");
            acc = acc.wedge(tilde_covector(w.order(), id));
        }
        out = out + acc;
    }
    return out;
}

NijForm NijAlgebra::embed(const FormJet& u, int k) const {
    const int m = model().m, r = chart().r;
    if (u.m() != m || u.r() != r) throw ShapeError("form belongs to another chart");
    if (u.order() > k) throw OrderError("frame order below the value order");
    NijForm out(m, r, k, u.deg(), u.order());
    const auto& words = combinations(m, u.deg());
    for (long ci = 0; ci < u.ncomp(); ++ci)
        out.add_term(words[ci], CheckJet::from_jet(u.comp(ci)));
    return out;
}

NijForm NijAlgebra::embed_tilde(const FormJet& u, int k) const {
    const int m = model().m, r = chart().r;
    if (u.m() != m || u.r() != r) throw ShapeError("form belongs to another chart");
    if (u.order() > k) throw OrderError("frame order below the value order");
    NijForm out(m, r, k, u.deg(), u.order());
    const auto& words = combinations(m, u.deg());
    for (long ci = 0; ci < u.ncomp(); ++ci) {
        ScalarForm w = ScalarForm::function(m, r, k, RatFunc(m, Rational(1)));
        for (int i : words[ci]) w = w.wedge(tilde_covector(k, i));
        out = out + NijForm::term(w, tilde_lift(chart(), u.comp(ci)).val);
    }
    return out;
}

CheckJet NijAlgebra::transport(const SigmaField& s, const SigmaField& sinv, const FormJet& ds,
                               const CheckJet& u) const {
    const int m = model().m, r = chart().r;
    const int j = u.order();
    if (s.k < j + 1) throw OrderError("field action needs one order above the data");
    std::vector<RatFunc> f = sigma_target(model(), s);
    std::vector<RatFunc> finv;
    finv.reserve(m);
    for (const auto& gi : s.target_inverse) finv.push_back(RatFunc(gi));
    std::vector<RatFunc> fv(m, RatFunc(m));
    for (int i = 0; i < m; ++i) {
        RatFunc w(m);
        for (int t = 0; t < m; ++t) w += f[i].derivative(t) * u.v[t];
        if (!w.is_zero()) w = ratfunc_eval_rf(w, finv);
        fv[i] = w;
    }
    if (j < 0) return CheckJet(fv, JetSection(m, r, -1));
    JetSection xi = u.xi;
    for (int t = 0; t < m; ++t)
        xi = xi + ds.comp(std::vector<int>{t}).scaled_pointwise(u.v[t]).truncated(j);
    return CheckJet(fv, ns_.adjoint_inv(sinv, xi));
}

CheckJet NijAlgebra::sigma_star_check(const SigmaField& s, const CheckJet& u) const {
    if (u.m() != model().m || u.r() != chart().r) throw ShapeError("element of another chart");
    if (!s.has_target_inverse()) throw NotInvertible("field has no recorded target inverse");
    SigmaField sinv = sigma_invert(model(), s);
    return transport(s, sinv, ns_.nonlinear_D(s), u);
}

NijForm NijAlgebra::sigma_star_form(const SigmaField& s, const NijForm& u) const {
    const int m = model().m, r = chart().r;
    if (u.m() != m || u.r() != r) throw ShapeError("form belongs to another chart");
    if (!s.has_target_inverse()) throw NotInvertible("field has no recorded target inverse");
    const int k = u.order();
    if (s.k < k + 1) throw OrderError("field action needs one order above the frame");
    SigmaField sinv = sigma_invert(model(), s);
    if (!sinv.has_target_inverse())
        throw NotInvertible("inverse field has no recorded target inverse");
    FormJet dsF = ns_.nonlinear_D(s);
    FormJet dsI = ns_.nonlinear_D(sinv);
    std::vector<RatFunc> finv;
    finv.reserve(m);
    for (const auto& gi : s.target_inverse) finv.push_back(RatFunc(gi));
    // matrix of the covector action on the order-k frame: the pairing of
    // e^c with the inverse transport of each frame section, read at the
    // inverse flow point so the result is argumentwise tensorial
    const int n = covector_count(m, r, k);
    std::vector<CheckJet> col;
    col.reserve(n);
    for (int d = 0; d < n; ++d) col.push_back(transport(sinv, s, dsI, frame_section(d, m, r, k)));
    std::vector<ScalarForm> cov;
    cov.reserve(n);
    for (int c = 0; c < n; ++c) {
        ScalarForm w(m, r, k, 1);
        for (int d = 0; d < n; ++d) {
            RatFunc p = covector_pair(c, m, r, col[d]);
            if (!p.is_zero()) w.add_term({d}, ratfunc_eval_rf(p, finv));
        }
        cov.push_back(std::move(w));
    }
    NijForm out(m, r, k, u.deg(), u.val_order());
    for (const auto& [word, val] : u.terms()) {
        ScalarForm w = ScalarForm::function(m, r, k, RatFunc(m, Rational(1)));
        for (int id : word) w = w.wedge(cov[id]);
        out = out + NijForm::term(w, transport(s, sinv, dsF, val));
    }
    return out;
}

} // namespace jc
