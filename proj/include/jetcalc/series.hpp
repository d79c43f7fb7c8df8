#pragma once

#include "jetcalc/qlinalg.hpp"
#include "jetcalc/scalar.hpp"

#include <map>
#include <vector>

namespace jc {

// Truncated power series map F: base + h |-> (F^1, ..., F^n), stored as
// Taylor coefficients F^c(base + h) = sum_{|a| <= order} coef[c][a] h^a.
// Coefficients and base coordinates are Scalars, so nilpotent-extended and
// generic (symbolic x) base points flow through every operation.
//
// Binary operations truncate to the smaller order; order is never inflated
// silently. lifted_zero() is the one explicit way to raise order.
class TruncSeries {
  public:
    using CoefMap = std::map<MultiIndex, Scalar, GrlexLess>;

    TruncSeries() : m_(0), n_(0), order_(0) {}
    TruncSeries(int m_in, int n_out, int order, std::vector<Scalar> base);

    static TruncSeries identity(int m, int order, const std::vector<Scalar>& base);
    static TruncSeries constant(int m, int order, const std::vector<Scalar>& base,
                                const std::vector<Scalar>& value);

    int in_arity() const { return m_; }
    int out_arity() const { return n_; }
    int order() const { return order_; }
    const std::vector<Scalar>& base() const { return base_; }

    Scalar coef(int c, const MultiIndex& a) const;
    void set_coef(int c, const MultiIndex& a, const Scalar& s);
    const CoefMap& comp(int c) const { return coefs_[c]; }

    std::vector<Scalar> value() const; // coefficients at a = 0

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    bool operator==(const TruncSeries& o) const;

    TruncSeries truncated(int k) const;
    TruncSeries lifted_zero(int k) const; // explicit zero-padded order raise
    TruncSeries component_range(int from, int count) const;

    // d/dh_i, order drops by one
    TruncSeries h_derivative(int i) const;

    // sum_a c_a h^a at a concrete deviation h (finite, exact)
    std::vector<Scalar> eval_dev(const std::vector<Scalar>& h) const;

    // Taylor coefficients around base + delta (same underlying map)
    TruncSeries rebased(const std::vector<Scalar>& delta) const;

    // Apply a polynomial (or rational) map to the output components.
    TruncSeries apply_poly_map(const std::vector<MPoly>& polys) const;
    TruncSeries apply_ratfunc_map(const std::vector<RatFunc>& fs) const;

    // This series after `inner`; requires inner.value() == this->base().
    TruncSeries after(const TruncSeries& inner) const;

    // Compositional inverse for m_in == n_out; NotInvertible when the linear
    // part is singular. Result is based at this->value().
    TruncSeries inverted() const;

    // linear part as a matrix over Scalars, entry (i, j) = coefficient of h_j
    // in component i
    MatX<Scalar> linear_part() const;

    std::string str() const;

  private:
    int m_, n_, order_;
    std::vector<Scalar> base_;
    std::vector<CoefMap> coefs_;

    static CoefMap map_mul(const CoefMap& a, const CoefMap& b, int order, int m);
    static void map_add_to(CoefMap& a, const CoefMap& b, const Scalar& factor);
    friend struct SeriesOps;
};

} // namespace jc
