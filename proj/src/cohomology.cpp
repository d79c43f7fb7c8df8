#include "jetcalc/cohomology.hpp"

#include "jetcalc/errors.hpp"

#include <sstream>

namespace jc {

namespace {

// finite slice wedge^p T* (x) J^{jord} with polynomial coefficients of
// degree <= dd, flattened as ((ci * na + ai) * r + l) * nb + bi
struct Slice {
    int m = 0, r = 0, p = 0, jord = -1, dd = 0;
    long nc = 0, na = 0, nb = 0;

    long dim() const { return nc * na * r * nb; }
};

Slice make_slice(int m, int r, int k, int p, int dd) {
    Slice s;
    s.m = m;
    s.r = r;
    s.p = p;
    s.jord = k - p;
    s.dd = dd;
    s.nc = static_cast<long>(combinations(m, p).size());
    s.na = count_leq(m, s.jord);
    s.nb = count_leq(m, dd);
    return s;
}

MPoly as_poly(const RatFunc& f) {
    if (!f.is_poly()) throw ValidationError("non-polynomial coefficient in a polynomial slice");
    Rational d = f.den().constant_value();
    return f.num().scaled(rat_inv(d));
}

void decompose(const Slice& s, const FormJet& phi, QVec& out) {
    out = QVec::Zero(s.dim());
    for (long ci = 0; ci < s.nc; ++ci)
        for (long ai = 0; ai < s.na; ++ai)
            for (int l = 0; l < s.r; ++l) {
                const RatFunc& v = phi.comp(ci).at(ai, l);
                if (v.is_zero()) continue;
                MPoly pv = as_poly(v);
                for (const auto& [beta, q] : pv.terms()) {
                    long bi = index_of(beta, s.m, s.dd);
                    if (bi < 0)
                        throw ValidationError("coefficient monomial " + mi_str(beta) +
                                              " escapes the slice bound " + std::to_string(s.dd) +
                                              " (m=" + std::to_string(s.m) + ")");
                    out(((ci * s.na + ai) * s.r + l) * s.nb + bi) += q;
                }
            }
}

FormJet basis_form(const Slice& s, long idx) {
    FormJet phi(s.m, s.r, s.jord, s.p);
    long bi = idx % s.nb;
    idx /= s.nb;
    int l = static_cast<int>(idx % s.r);
    idx /= s.r;
    long ai = idx % s.na;
    long ci = idx / s.na;
    phi.comp(ci).at(ai, l) = RatFunc(MPoly::monomial(enumerate_leq(s.m, s.dd)[bi], 1));
    return phi;
}

// matrix of the Spencer operator from slice `from` into slice `to`
QMat d_matrix(const Slice& from, const Slice& to) {
    QMat M(to.dim(), from.dim());
    M.setZero();
    QVec col;
    for (long j = 0; j < from.dim(); ++j) {
        decompose(to, spencer_D(basis_form(from, j)), col);
        M.col(j) = col;
    }
    return M;
}

} // namespace

TruncCohReport spencer_truncated_report(int m, int r, int k, int d) {
    TruncCohReport rep;
    rep.m = m;
    rep.r = r;
    rep.k = k;
    rep.d = d;
    rep.window = d - k;
    if (rep.window < 0) throw ShapeError("coefficient bound below the jet order");
    const int w = rep.window;
    const int N = std::min(m, k);
    std::ostringstream detail;

    // position 0: windowed kernel of D versus jets of low-degree sections
    {
        Slice s0 = make_slice(m, r, k, 0, w);
        Slice s1 = make_slice(m, r, k, 1, w);
        QMat K = kernel_basis<Rational>(d_matrix(s0, s1));
        const auto& betas = enumerate_leq(m, w);
        QMat P(s0.dim(), static_cast<long>(betas.size()) * r);
        P.setZero();
        QVec col;
        long pc = 0;
        for (const auto& beta : betas)
            for (int l = 0; l < r; ++l) {
                AlgSection sec(m, r);
                sec.comp[l] = RatFunc(MPoly::monomial(beta, 1));
                FormJet phi(m, r, k, 0);
                phi.comp(0) = prolong(sec, k);
                decompose(s0, phi, col);
                P.col(pc++) = col;
            }
        long nk = K.cols();
        long rp = rank_of<Rational>(P);
        QMat both(s0.dim(), P.cols() + K.cols());
        both.leftCols(P.cols()) = P;
        both.rightCols(K.cols()) = K;
        long rc = rank_of<Rational>(both);
        rep.holonomic_dim = nk;
        rep.prolong_dim = rp;
        rep.position0_ok = (rp == nk && rc == nk);
        if (!rep.position0_ok)
            detail << "position 0: kernel dim " << nk << ", prolonged dim " << rp
                   << ", joint rank " << rc << "; ";
    }

    rep.ok = rep.position0_ok;
    for (int p = 1; p <= N; ++p) {
        TruncPosition pos;
        pos.p = p;
        pos.asserted = (p < N);
        Slice sw = make_slice(m, r, k, p, w);
        Slice sw_next = make_slice(m, r, k, p + 1, w);
        QMat Z = kernel_basis<Rational>(d_matrix(sw, sw_next));
        pos.dim_window = Z.cols();

        Slice sd_prev = make_slice(m, r, k, p - 1, d);
        Slice sd = make_slice(m, r, k, p, d);
        QMat B = d_matrix(sd_prev, sd);
        long rb = rank_of<Rational>(B);
        pos.dim_boundary = rb;

        // embed the windowed cycles into the degree <= d slice; monomials of
        // degree <= w sit at the same leading positions of the grlex order
        QMat Zd(sd.dim(), Z.cols());
        Zd.setZero();
        for (long ci = 0; ci < sw.nc; ++ci)
            for (long ai = 0; ai < sw.na; ++ai)
                for (int l = 0; l < r; ++l)
                    for (long bi = 0; bi < sw.nb; ++bi) {
                        long rw = ((ci * sw.na + ai) * r + l) * sw.nb + bi;
                        long rd = ((ci * sd.na + ai) * r + l) * sd.nb + bi;
                        Zd.row(rd) = Z.row(rw);
                    }
        QMat BZ(sd.dim(), B.cols() + Zd.cols());
        BZ.leftCols(B.cols()) = B;
        BZ.rightCols(Zd.cols()) = Zd;
        pos.contained = (rank_of<Rational>(BZ) == rb);
        if (pos.asserted && !pos.contained) {
            rep.ok = false;
            detail << "position " << p << ": " << pos.dim_window
                   << " windowed cycles, boundary rank " << rb << ", containment fails; ";
        }
        rep.positions.push_back(pos);
    }
    rep.detail = detail.str();
    return rep;
}

} // namespace jc
