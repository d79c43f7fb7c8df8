#include "jetcalc/qlinalg.hpp"

namespace jc {

QuotientSpace::QuotientSpace(int n, const QMat& w_span) : n_(n) {
    if (w_span.rows() != n && w_span.size() != 0) throw ShapeError("QuotientSpace span rows");
    // clean basis of W from the rref of w_span^T; its pivot columns mark the
    // coordinates that W can normalize away
    QMat wt = w_span.transpose();
    std::vector<int> pivots;
    if (wt.size() != 0) pivots = rref_in_place(wt);
    int w = static_cast<int>(pivots.size());
    wbasis_ = QMat(n, w);
    for (int j = 0; j < w; ++j)
        for (int i = 0; i < n; ++i) wbasis_(i, j) = wt(j, i);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) comp_.push_back(c);

    // M = [W | U] with U the complementary unit vectors; for x = Wa + Ub the
    // projection returns Ub, so P = U * (rows of M^{-1} below the W block)
    QMat m(n, n);
    for (int j = 0; j < w; ++j) m.col(j) = wbasis_.col(j);
    for (size_t t = 0; t < comp_.size(); ++t) {
        for (int i = 0; i < n; ++i) m(i, w + static_cast<int>(t)) = 0;
        m(comp_[t], w + static_cast<int>(t)) = 1;
    }
    QMat minv = inverse_mat<Rational>(m);
    proj_ = QMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) proj_(i, j) = 0;
    for (size_t t = 0; t < comp_.size(); ++t)
        for (int j = 0; j < n; ++j) proj_(comp_[t], j) = minv(w + static_cast<int>(t), j);
}

QVec QuotientSpace::project(const QVec& v) const {
    if (v.size() != n_) throw ShapeError("QuotientSpace::project size");
    return proj_ * v;
}

bool QuotientSpace::equal_mod(const QVec& u, const QVec& v) const {
    QVec d = project(u) - project(v);
    for (int i = 0; i < d.size(); ++i)
        if (d(i) != 0) return false;
    return true;
}

QVec QuotientSpace::repr_coords(const QVec& v) const {
    QVec p = project(v);
    QVec b(static_cast<int>(comp_.size()));
    for (size_t t = 0; t < comp_.size(); ++t) b(static_cast<int>(t)) = p(comp_[t]);
    return b;
}

} // namespace jc
