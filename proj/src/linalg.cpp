#include "qmc/linalg.hpp"

#include <algorithm>

namespace qmc {

namespace {

// Replace columns (j, k) of w by (u*cj + v*ck, -b/g*cj + a/g*ck) style
// combinations so that w(row, k) becomes gcd and w(row, j) becomes zero.
void gcd_combine_columns(IntMat& w, IntMat* t, Eigen::Index row, Eigen::Index j, Eigen::Index k)
{
    Integer a = w(row, k), b = w(row, j);
    if (b == 0)
        return;
    if (a == 0) {
        w.col(j).swap(w.col(k));
        if (t)
            t->col(j).swap(t->col(k));
        return;
    }
    Integer u, v;
    Integer g = xgcd(a, b, u, v);
    Integer ag = a / g, bg = b / g;
    IntVec ck = w.col(k), cj = w.col(j);
    w.col(k) = u * ck + v * cj;
    w.col(j) = ag * cj - bg * ck;
    if (t) {
        IntVec tk = t->col(k), tj = t->col(j);
        t->col(k) = u * tk + v * tj;
        t->col(j) = ag * tj - bg * tk;
    }
}

} // namespace

IntMat hnf_mod(IntMat const& gens, Integer const& D)
{
    Eigen::Index const n = gens.rows();
    if (D <= 0)
        throw Error(ErrorKind::PreconditionViolation, "hnf_mod needs a positive modulus");
    std::vector<IntVec> work;
    for (Eigen::Index j = 0; j < gens.cols(); ++j) {
        IntVec c = gens.col(j);
        for (Eigen::Index i = 0; i < n; ++i)
            c(i) = mod(c(i), D);
        if (!c.isZero())
            work.push_back(std::move(c));
    }
    IntMat h = IntMat::Zero(n, n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        // gcd-combine row i of all work vectors into one
        IntVec pivot = IntVec::Zero(n);
        std::vector<IntVec> rest;
        for (auto& c : work) {
            if (c(i) == 0) {
                rest.push_back(std::move(c));
                continue;
            }
            if (pivot(i) == 0) {
                pivot = std::move(c);
                continue;
            }
            Integer u, v;
            Integer g = xgcd(pivot(i), c(i), u, v);
            Integer a = pivot(i) / g, b = c(i) / g;
            IntVec np = u * pivot + v * c;
            IntVec nc = a * c - b * pivot;
            pivot = std::move(np);
            rest.push_back(std::move(nc));
        }
        // pivot entry g' combined with D e_i
        Integer u, v;
        Integer g = xgcd(pivot(i), D, u, v);
        IntVec e = IntVec::Zero(n);
        e(i) = D;
        IntVec p = u * pivot + v * e;
        if (pivot(i) != 0)
            rest.push_back(pivot - (pivot(i) / g) * p);
        rest.push_back(e - (D / g) * p);
        for (Eigen::Index r = 0; r < i; ++r)
            p(r) = mod(p(r), D);
        p(i) = g;
        for (Eigen::Index r = i + 1; r < n; ++r)
            p(r) = 0;
        h.col(i) = p;
        work.clear();
        for (auto& c : rest) {
            for (Eigen::Index r = 0; r < i; ++r)
                c(r) = mod(c(r), D);
            c(i) = 0;
            if (!c.isZero())
                work.push_back(std::move(c));
        }
    }
    // reduce above-diagonal entries
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j - 1; i >= 0; --i) {
            Integer q = floor_div(h(i, j), h(i, i));
            if (q != 0)
                h.col(j) -= q * h.col(i);
        }
    return h;
}

ColumnEchelon column_echelon(IntMat const& a)
{
    Eigen::Index const m = a.rows(), n = a.cols();
    ColumnEchelon out;
    IntMat w = a;
    IntMat t = IntMat::Identity(n, n);
    Eigen::Index k = n - 1;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pivots; // (row, col)
    for (Eigen::Index i = m - 1; i >= 0 && k >= 0; --i) {
        for (Eigen::Index j = 0; j < k; ++j)
            gcd_combine_columns(w, &t, i, j, k);
        if (w(i, k) == 0)
            continue;
        if (w(i, k) < 0) {
            w.col(k) = -w.col(k);
            t.col(k) = -t.col(k);
        }
        for (Eigen::Index j = k + 1; j < n; ++j) {
            Integer q = floor_div(w(i, j), w(i, k));
            if (q != 0) {
                w.col(j) -= q * w.col(k);
                t.col(j) -= q * t.col(k);
            }
        }
        pivots.emplace_back(i, k);
        --k;
    }
    out.rank = n - 1 - k;
    out.h = w.rightCols(out.rank);
    out.u = t;
    return out;
}

IntMat integer_kernel(IntMat const& a)
{
    ColumnEchelon e = column_echelon(a);
    Eigen::Index const nk = a.cols() - e.rank;
    return e.u.leftCols(nk);
}

bool solve_upper_integral(IntMat const& h, IntVec const& v, IntVec& coords)
{
    Eigen::Index const n = h.rows();
    IntVec r = v;
    coords = IntVec::Zero(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        if (h(i, i) == 0)
            return false;
        Integer q, rem;
        boost::multiprecision::divide_qr(r(i), h(i, i), q, rem);
        if (rem != 0)
            return false;
        coords(i) = q;
        if (q != 0)
            r -= q * h.col(i);
    }
    return true;
}

IntVec reduce_mod_hnf(IntMat const& h, IntVec v)
{
    for (Eigen::Index i = h.rows() - 1; i >= 0; --i) {
        Integer q = floor_div(v(i), h(i, i));
        if (q != 0)
            v -= q * h.col(i);
    }
    return v;
}

SmithForm smith_normal_form(IntMat const& a)
{
    eigen_assert(a.rows() == a.cols());
    Eigen::Index const n = a.rows();
    IntMat m = a;
    IntMat u = IntMat::Identity(n, n);
    IntMat v = IntMat::Identity(n, n);
    IntMat vinv = IntMat::Identity(n, n);

    auto col_op = [&](Eigen::Index j, Eigen::Index k, Integer const& p, Integer const& q, Integer const& r,
                      Integer const& s) {
        // [cj ck] <- [cj ck] * [[p, r], [q, s]] with ps - qr = 1
        IntVec cj = m.col(j), ck = m.col(k);
        m.col(j) = p * cj + q * ck;
        m.col(k) = r * cj + s * ck;
        IntVec vj = v.col(j), vk = v.col(k);
        v.col(j) = p * vj + q * vk;
        v.col(k) = r * vj + s * vk;
        // inverse acts on rows: [[s, -r], [-q, p]] / det, det = +-1
        Integer det = p * s - q * r;
        IntVec wj = vinv.row(j).transpose(), wk = vinv.row(k).transpose();
        vinv.row(j) = (det * (s * wj - r * wk)).transpose();
        vinv.row(k) = (det * (-q * wj + p * wk)).transpose();
    };
    auto row_op = [&](Eigen::Index j, Eigen::Index k, Integer const& p, Integer const& q, Integer const& r,
                      Integer const& s) {
        IntVec rj = m.row(j).transpose(), rk = m.row(k).transpose();
        m.row(j) = (p * rj + q * rk).transpose();
        m.row(k) = (r * rj + s * rk).transpose();
        IntVec uj = u.row(j).transpose(), uk = u.row(k).transpose();
        u.row(j) = (p * uj + q * uk).transpose();
        u.row(k) = (r * uj + s * uk).transpose();
    };

    for (Eigen::Index t = 0; t < n; ++t) {
        // bring a nonzero entry of minimal size to (t, t)
        for (;;) {
            Eigen::Index bi = -1, bj = -1;
            for (Eigen::Index i = t; i < n; ++i)
                for (Eigen::Index j = t; j < n; ++j)
                    if (m(i, j) != 0 && (bi < 0 || abs(m(i, j)) < abs(m(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0)
                throw Error(ErrorKind::PreconditionViolation, "smith_normal_form: singular matrix");
            if (bi != t)
                row_op(t, bi, 0, 1, 1, 0);
            if (bj != t)
                col_op(t, bj, 0, 1, 1, 0);
            bool done = true;
            for (Eigen::Index i = t + 1; i < n; ++i) {
                if (m(i, t) == 0)
                    continue;
                if (m(i, t) % m(t, t) == 0) {
                    row_op(t, i, 1, 0, -(m(i, t) / m(t, t)), 1);
                    continue;
                }
                Integer g, x, y;
                g = xgcd(m(t, t), m(i, t), x, y);
                Integer a1 = m(t, t) / g, b1 = m(i, t) / g;
                row_op(t, i, x, y, -b1, a1);
                done = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                if (m(t, j) == 0)
                    continue;
                if (m(t, j) % m(t, t) == 0) {
                    col_op(t, j, 1, 0, -(m(t, j) / m(t, t)), 1);
                    continue;
                }
                Integer g, x, y;
                g = xgcd(m(t, t), m(t, j), x, y);
                Integer a1 = m(t, t) / g, b1 = m(t, j) / g;
                col_op(t, j, x, y, -b1, a1);
                done = false;
            }
            if (!done)
                continue;
            // divisibility condition for the remaining block
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < n && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0)
                break;
            row_op(t, bad, 1, 1, 0, 1); // row t += row bad
        }
        if (m(t, t) < 0) {
            m.row(t) = -m.row(t);
            u.row(t) = -u.row(t);
        }
    }
    SmithForm out;
    for (Eigen::Index i = 0; i < n; ++i)
        out.diagonal.push_back(m(i, i));
    out.u = u;
    out.v = v;
    out.v_inv = vinv;
    return out;
}

int compare_lex(IntMat const& a, IntMat const& b)
{
    if (a.rows() != b.rows())
        return a.rows() < b.rows() ? -1 : 1;
    if (a.cols() != b.cols())
        return a.cols() < b.cols() ? -1 : 1;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j))
                return a(i, j) < b(i, j) ? -1 : 1;
    return 0;
}

} // namespace qmc
