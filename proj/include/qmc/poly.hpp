#ifndef QMC_POLY_HPP
#define QMC_POLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qmc/arith.hpp"

namespace qmc {

/// Dense univariate polynomials, constant term first. The zero polynomial is
/// the empty vector; trailing zeros are always stripped.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

template <class R>
void trim(std::vector<R>& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

template <class R>
int degree(std::vector<R> const& f)
{
    return static_cast<int>(f.size()) - 1;
}

template <class R>
std::vector<R> poly_add(std::vector<R> const& a, std::vector<R> const& b)
{
    std::vector<R> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    trim(out);
    return out;
}

template <class R>
std::vector<R> poly_sub(std::vector<R> const& a, std::vector<R> const& b)
{
    std::vector<R> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    trim(out);
    return out;
}

template <class R>
std::vector<R> poly_mul(std::vector<R> const& a, std::vector<R> const& b)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<R> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

template <class R>
std::vector<R> poly_scale(std::vector<R> const& a, R const& s)
{
    std::vector<R> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * s;
    trim(out);
    return out;
}

template <class R>
std::vector<R> poly_derivative(std::vector<R> const& a)
{
    if (a.size() <= 1)
        return {};
    std::vector<R> out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        out[i - 1] = a[i] * R(static_cast<long>(i));
    trim(out);
    return out;
}

template <class R, class X>
X poly_eval(std::vector<R> const& f, X const& x)
{
    X acc(0);
    for (std::size_t i = f.size(); i-- > 0;)
        acc = acc * x + X(f[i]);
    return acc;
}

RatPoly to_rat(IntPoly const& f);

/// Division with remainder over Q.
void poly_divmod(RatPoly const& a, RatPoly const& b, RatPoly& q, RatPoly& r);
RatPoly poly_gcd(RatPoly a, RatPoly b);

/// Exact division over Z by a monic divisor; returns false if not divisible.
bool poly_exact_div(IntPoly const& a, IntPoly const& b, IntPoly& q);

Integer resultant(IntPoly const& f, IntPoly const& g);
Integer discriminant(IntPoly const& f);

bool is_squarefree(IntPoly const& f);

/// Number of distinct real roots (Sturm sequence).
int count_real_roots(IntPoly const& f);

/// Irreducibility over Q of a monic integer polynomial. Zassenhaus: Hensel
/// lift a mod-p factorization and try factor subsets.
bool is_irreducible(IntPoly const& f);

/// The m-th cyclotomic polynomial.
IntPoly cyclotomic_polynomial(std::uint64_t m);

/// Minimal polynomial of 2 cos(2 pi / m) over Q.
IntPoly real_cyclotomic_polynomial(std::uint64_t m);

std::string poly_to_string(IntPoly const& f);

// -------------------------------------------------------------------------
// polynomials over F_p; all inputs are assumed reduced mod p

using FpPoly = std::vector<Integer>;

FpPoly fp_reduce(IntPoly const& f, Integer const& p);
FpPoly fp_reduce(RatPoly const& f, Integer const& p);
FpPoly fp_add(FpPoly const& a, FpPoly const& b, Integer const& p);
FpPoly fp_sub(FpPoly const& a, FpPoly const& b, Integer const& p);
FpPoly fp_mul(FpPoly const& a, FpPoly const& b, Integer const& p);
FpPoly fp_scale(FpPoly const& a, Integer const& s, Integer const& p);
void fp_divmod(FpPoly const& a, FpPoly const& b, Integer const& p, FpPoly& q, FpPoly& r);
FpPoly fp_rem(FpPoly const& a, FpPoly const& b, Integer const& p);
FpPoly fp_monic(FpPoly const& a, Integer const& p);
FpPoly fp_gcd(FpPoly a, FpPoly b, Integer const& p);
/// g = s a + t b, g monic.
FpPoly fp_xgcd(FpPoly const& a, FpPoly const& b, Integer const& p, FpPoly& s, FpPoly& t);
FpPoly fp_powmod(FpPoly const& base, Integer e, FpPoly const& modulus, Integer const& p);
FpPoly fp_derivative(FpPoly const& a, Integer const& p);

struct FpFactor {
    FpPoly factor; // monic irreducible
    unsigned multiplicity;
};

/// Complete factorization of a nonzero polynomial into monic irreducibles,
/// sorted by (degree, coefficients). Deterministic.
std::vector<FpFactor> fp_factor(FpPoly const& f, Integer const& p);

bool fp_is_irreducible(FpPoly const& f, Integer const& p);

/// Compare by (degree, coefficient sequence from the top).
bool poly_less(IntPoly const& a, IntPoly const& b);

} // namespace qmc

#endif // QMC_POLY_HPP
