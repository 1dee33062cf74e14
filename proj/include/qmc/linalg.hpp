#ifndef QMC_LINALG_HPP
#define QMC_LINALG_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "qmc/arith.hpp"
#include "qmc/errors.hpp"

namespace qmc {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMat = Mat<Integer>;
using IntVec = Vec<Integer>;
using RatMat = Mat<Rational>;
using RatVec = Vec<Rational>;

template <class To, class From>
Mat<To> cast_matrix(Mat<From> const& m)
{
    Mat<To> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = To(m(i, j));
    return out;
}

template <class To, class From>
Vec<To> cast_vector(Vec<From> const& v)
{
    Vec<To> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = To(v(i));
    return out;
}

/// Fraction-free (Bareiss) determinant; exact for Integer, also valid for Rational.
template <class Scalar>
Scalar determinant(Mat<Scalar> m)
{
    eigen_assert(m.rows() == m.cols());
    Eigen::Index const n = m.rows();
    if (n == 0)
        return Scalar(1);
    Scalar sign(1), prev(1);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            Eigen::Index swap = k + 1;
            while (swap < n && m(swap, k) == 0)
                ++swap;
            if (swap == n)
                return Scalar(0);
            m.row(k).swap(m.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Gauss-Jordan inverse over an exact field scalar. Throws on singular input.
template <class Scalar>
Mat<Scalar> inverse(Mat<Scalar> const& a)
{
    eigen_assert(a.rows() == a.cols());
    Eigen::Index const n = a.rows();
    Mat<Scalar> m = a;
    Mat<Scalar> inv = Mat<Scalar>::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        while (piv < n && m(piv, c) == 0)
            ++piv;
        if (piv == n)
            throw Error(ErrorKind::PreconditionViolation, "singular matrix");
        m.row(c).swap(m.row(piv));
        inv.row(c).swap(inv.row(piv));
        Scalar f = m(c, c);
        m.row(c) /= f;
        inv.row(c) /= f;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0)
                continue;
            Scalar g = m(r, c);
            m.row(r) -= g * m.row(c);
            inv.row(r) -= g * inv.row(c);
        }
    }
    return inv;
}

/// Solution of a x = b for nonsingular a over an exact field scalar.
template <class Scalar>
Vec<Scalar> solve(Mat<Scalar> const& a, Vec<Scalar> const& b)
{
    return inverse(a) * b;
}

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `gens` together with D Z^n. Result is n x n upper triangular with positive
/// diagonal and 0 <= H(i,j) < H(i,i) for j > i.
IntMat hnf_mod(IntMat const& gens, Integer const& D);

/// Column echelon form with unimodular transform: a * u = [0 | h], h has
/// `rank` columns, upper-staircase with positive pivots.
struct ColumnEchelon {
    IntMat h;
    IntMat u;
    Eigen::Index rank = 0;
};
ColumnEchelon column_echelon(IntMat const& a);

/// Z-basis (as columns) of { x in Z^n : a x = 0 }.
IntMat integer_kernel(IntMat const& a);

/// Coordinates of v in the basis given by the columns of the upper triangular h.
/// Returns false if v is not in the Z-span.
bool solve_upper_integral(IntMat const& h, IntVec const& v, IntVec& coords);

/// Canonical representative of v modulo the lattice of the upper triangular h.
IntVec reduce_mod_hnf(IntMat const& h, IntVec v);

/// Smith normal form u * a * v = diag(s) with s_1 | s_2 | ..., for square nonsingular a.
struct SmithForm {
    std::vector<Integer> diagonal;
    IntMat u;
    IntMat v;
    IntMat v_inv;
};
SmithForm smith_normal_form(IntMat const& a);

/// Row-major lexicographic comparison.
int compare_lex(IntMat const& a, IntMat const& b);

} // namespace qmc

#endif // QMC_LINALG_HPP
