#pragma once

#include "jetcalc/ratfunc.hpp"
#include "jetcalc/scalar.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<jc::RatFunc> {
    using Real = jc::RatFunc;
    using NonInteger = jc::RatFunc;
    using Nested = jc::RatFunc;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 16,
        AddCost = 60,
        MulCost = 60
    };
    static inline Real epsilon() { return jc::RatFunc(); }
    static inline Real dummy_precision() { return jc::RatFunc(); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<jc::Scalar> {
    using Real = jc::Scalar;
    using NonInteger = jc::Scalar;
    using Nested = jc::Scalar;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 16,
        AddCost = 80,
        MulCost = 80
    };
    static inline Real epsilon() { return jc::Scalar(); }
    static inline Real dummy_precision() { return jc::Scalar(); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace jc {

template <class F>
using MatX = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using VecX = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using QMat = MatX<Rational>;
using QVec = VecX<Rational>;

namespace lin {
inline bool entry_is_zero(const Rational& q) { return q == 0; }
inline bool entry_is_zero(const RatFunc& f) { return f.is_zero(); }
inline bool entry_is_zero(const Scalar& s) { return s.is_zero(); }
// pivoting over nilpotent rings must pick units, not just nonzeros
inline bool entry_is_unit(const Rational& q) { return q != 0; }
inline bool entry_is_unit(const RatFunc& f) { return !f.is_zero(); }
inline bool entry_is_unit(const Scalar& s) { return !s.base().is_zero(); }
// constants shaped like an existing entry (RatFunc carries an arity, Scalar a
// tower tag; a bare F(0)/F(1) would not match)
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline RatFunc zero_like(const RatFunc& f) { return RatFunc(f.arity()); }
inline RatFunc one_like(const RatFunc& f) { return RatFunc(f.arity(), Rational(1)); }
inline Scalar zero_like(const Scalar& s) { return s.from_rational(Rational(0)); }
inline Scalar one_like(const Scalar& s) { return s.from_rational(Rational(1)); }
} // namespace lin

// In-place reduced row echelon form over an exact field (or a local ring,
// where pivots must be units). Returns the pivot column indices.
template <class F>
std::vector<int> rref_in_place(MatX<F>& a) {
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (lin::entry_is_unit(a(i, c))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r) a.row(p).swap(a.row(r));
        F inv = lin::one_like(a(r, c)) / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || lin::entry_is_zero(a(i, c))) continue;
            F f = a(i, c);
            for (int j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank_of(MatX<F> a) {
    return static_cast<int>(rref_in_place(a).size());
}

// Basis of the right kernel, one column per free variable.
template <class F>
MatX<F> kernel_basis(MatX<F> a) {
    const int cols = static_cast<int>(a.cols());
    const F shape = a.size() > 0 ? F(a(0, 0)) : F();
    std::vector<int> pivots = rref_in_place(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    MatX<F> k(cols, static_cast<int>(free_cols.size()));
    for (int j = 0; j < k.cols(); ++j)
        for (int i = 0; i < cols; ++i) k(i, j) = lin::zero_like(shape);
    for (size_t t = 0; t < free_cols.size(); ++t) {
        int fc = free_cols[t];
        k(fc, static_cast<int>(t)) = lin::one_like(shape);
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            k(pivots[pr], static_cast<int>(t)) = -a(static_cast<int>(pr), fc);
    }
    return k;
}

// Columns of `a` at the pivot positions: a basis of the column space.
template <class F>
MatX<F> image_basis(const MatX<F>& a) {
    MatX<F> cp = a;
    std::vector<int> pivots = rref_in_place(cp);
    MatX<F> img(a.rows(), static_cast<int>(pivots.size()));
    for (size_t j = 0; j < pivots.size(); ++j) img.col(j) = a.col(pivots[j]);
    return img;
}

// Solve a x = b; empty when inconsistent.
template <class F>
std::optional<VecX<F>> solve_linear(const MatX<F>& a, const VecX<F>& b) {
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    MatX<F> aug(rows, cols + 1);
    aug.leftCols(cols) = a;
    aug.col(cols) = b;
    const F shape = a.size() > 0 ? F(a(0, 0)) : (b.size() > 0 ? F(b(0)) : F());
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    VecX<F> x(cols);
    for (int i = 0; i < cols; ++i) x(i) = lin::zero_like(shape);
    for (size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(static_cast<int>(r), cols);
    return x;
}

// Identity with entries shaped like `shape` (defaults to plain F constants).
template <class F>
MatX<F> identity_mat(int n, const F& shape = F()) {
    MatX<F> id(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) id(i, j) = i == j ? lin::one_like(shape) : lin::zero_like(shape);
    return id;
}

template <class F>
MatX<F> inverse_mat(const MatX<F>& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw ShapeError("inverse of nonsquare matrix");
    const F shape = a.size() > 0 ? F(a(0, 0)) : F();
    MatX<F> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = identity_mat<F>(n, shape);
    std::vector<int> pivots = rref_in_place(aug);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1)
        throw NotInvertible("singular matrix");
    return aug.rightCols(n);
}

template <class F>
bool is_invertible(const MatX<F>& a) {
    if (a.rows() != a.cols()) return false;
    return rank_of<F>(a) == static_cast<int>(a.rows());
}

// Membership of v in the column span of basis.
template <class F>
bool in_span(const MatX<F>& basis, const VecX<F>& v) {
    return solve_linear<F>(basis, v).has_value();
}

// Finite-dimensional quotient V / W over Q, V = Q^n, W given by spanning
// columns. Stores an idempotent projection whose kernel is exactly W; class
// representatives live on the complementary unit coordinates.
class QuotientSpace {
  public:
    QuotientSpace(int n, const QMat& w_span);

    int ambient_dim() const { return n_; }
    int sub_dim() const { return static_cast<int>(wbasis_.cols()); }
    int dim() const { return n_ - sub_dim(); }
    const QMat& projection() const { return proj_; }
    const QMat& sub_basis() const { return wbasis_; }
    const std::vector<int>& complement_coords() const { return comp_; }

    QVec project(const QVec& v) const;
    bool equal_mod(const QVec& u, const QVec& v) const;
    // coordinates of the class in the complement basis (length dim())
    QVec repr_coords(const QVec& v) const;

  private:
    int n_;
    QMat wbasis_;
    QMat proj_;
    std::vector<int> comp_;
};

} // namespace jc
