// Independent reference implementations used only by the tests. Nothing here
// calls into the library's algorithms; only the big integer types are shared.
#ifndef QMC_TEST_ORACLES_HPP
#define QMC_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "qmc/arith.hpp"

namespace oracle {

using qmc::Integer;

inline Integer imod(Integer const& a, Integer const& m)
{
    Integer r = a % m;
    return r < 0 ? r + m : r;
}

inline Integer ipow(Integer b, unsigned long e)
{
    Integer r = 1;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Jacobi symbol (a | n), n odd positive
inline int jacobi(Integer a, Integer n)
{
    a = imod(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Integer const r = n % 8;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            t = -t;
        a = a % n;
    }
    return n == 1 ? t : 0;
}

inline bool is_prime_naive(unsigned long n)
{
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<unsigned long> primes_below(unsigned long n)
{
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p < n; ++p)
        if (is_prime_naive(p))
            out.push_back(p);
    return out;
}

// trial division; fine for the sizes the tests use
inline std::set<Integer> prime_support(Integer n)
{
    std::set<Integer> out;
    if (n < 0)
        n = -n;
    if (n == 0)
        throw std::invalid_argument("prime_support(0)");
    for (Integer d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            out.insert(d);
            n /= d;
        }
    if (n > 1)
        out.insert(n);
    return out;
}

inline unsigned long phi(unsigned long n)
{
    unsigned long c = 0;
    for (unsigned long k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1)
            ++c;
    return c;
}

// ---------------------------------------------------------------------------
// Z[w] with w^2 = P w + Q, for the quadratic fields of the tests. Q(sqrt5) uses
// P = Q = 1 (golden ratio), Q(sqrt2) P = 0, Q = 2. Degree one fields use
// Q = P = 0 and keep b = 0.

struct Ring {
    long P = 0, Q = 0;
    bool rational = true;
    long disc() const { return P * P + 4 * Q; }
};

inline Ring rationals() { return {0, 0, true}; }
inline Ring golden() { return {1, 1, false}; }
inline Ring sqrt2() { return {0, 2, false}; }

struct Q2 {
    Integer a = 0, b = 0;
    bool operator==(Q2 const& o) const { return a == o.a && b == o.b; }
    bool operator<(Q2 const& o) const { return a != o.a ? a < o.a : b < o.b; }
};

inline Q2 add(Q2 const& x, Q2 const& y) { return {x.a + y.a, x.b + y.b}; }
inline Q2 sub(Q2 const& x, Q2 const& y) { return {x.a - y.a, x.b - y.b}; }
inline Q2 scale(Q2 const& x, Integer const& s) { return {x.a * s, x.b * s}; }
inline Q2 mul(Ring const& R, Q2 const& x, Q2 const& y)
{
    // (a + b w)(c + d w) = ac + bd Q + (ad + bc + bd P) w
    return {x.a * y.a + x.b * y.b * R.Q, x.a * y.b + x.b * y.a + x.b * y.b * R.P};
}

// sign of A + B sqrt(D), D > 0 not a square
inline int sign_surd(Integer const& A, Integer const& B, long D)
{
    int const sa = A > 0 ? 1 : (A < 0 ? -1 : 0);
    int const sb = B > 0 ? 1 : (B < 0 ? -1 : 0);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sa == 0 ? sb : sa;
    // opposite signs: compare A^2 with D B^2
    Integer const l = A * A, r = Integer(D) * B * B;
    if (l == r)
        return 0;
    return l > r ? sa : sb;
}

// 2 sigma(x) = 2a + bP +- b sqrt(disc); |sigma(x)|^2 <= M at both places
inline bool within(Ring const& R, Q2 const& x, Integer const& M)
{
    if (R.rational)
        return x.a * x.a <= M;
    // |t| <= sqrt(4M) for t = 2a + bP +- b sqrt(disc)
    Integer const A = 2 * x.a + x.b * R.P;
    for (int s : {1, -1}) {
        Integer const B = s * x.b;
        // t^2 = A^2 + disc B^2 + 2AB sqrt(disc) <= 4M
        if (sign_surd(4 * M - A * A - Integer(R.disc()) * B * B, -2 * A * B, R.disc()) < 0)
            return false;
    }
    return true;
}

// all integral x with |sigma(x)|^2 <= M everywhere, by scanning a generous box
inline std::vector<Q2> bounded(Ring const& R, Integer const& M)
{
    std::vector<Q2> out;
    Integer r = qmc::isqrt(M) + 1;
    if (R.rational) {
        for (Integer a = -r; a <= r; ++a)
            if (within(R, {a, 0}, M))
                out.push_back({a, 0});
        return out;
    }
    // b sqrt(disc) = sigma1 - sigma2, so |b| <= 2 sqrt(M) / sqrt(disc) < 2r
    Integer const rb = 2 * r, ra = 2 * r + rb * std::abs(R.P);
    for (Integer b = -rb; b <= rb; ++b)
        for (Integer a = -ra; a <= ra; ++a)
            if (within(R, {a, b}, M))
                out.push_back({a, b});
    return out;
}

// ---------------------------------------------------------------------------
// O_F[x]/(x^2 + b x + L): pairs u + v x

struct QuadRing {
    Ring R;
    Q2 b;
    Integer L;

    std::pair<Q2, Q2> mul(std::pair<Q2, Q2> const& s, std::pair<Q2, Q2> const& t) const
    {
        // x^2 = -b x - L
        Q2 const uu = oracle::mul(R, s.first, t.first);
        Q2 const uv = add(oracle::mul(R, s.first, t.second), oracle::mul(R, s.second, t.first));
        Q2 const vv = oracle::mul(R, s.second, t.second);
        return {sub(uu, scale(vv, L)), sub(uv, oracle::mul(R, vv, b))};
    }

    // beta^e + conj(beta)^e = trace of x^e = 2u - b v
    Q2 trace_of_power(unsigned long e) const
    {
        std::pair<Q2, Q2> r{{1, 0}, {0, 0}}, base{{0, 0}, {1, 0}};
        while (e) {
            if (e & 1)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return sub(scale(r.first, 2), oracle::mul(R, b, r.second));
    }
};

// ---------------------------------------------------------------------------
// [F(zeta_m):F] <= 2 by looking for a root of the minimal polynomial of
// 2cos(2 pi / m) among the integers of F with |sigma| <= 2

inline std::vector<long long> real_cyclotomic(unsigned long m)
{
    std::vector<std::complex<long double>> poly{1.0L};
    long double const pi = std::acos(-1.0L);
    for (unsigned long k = 1; 2 * k < m; ++k) {
        if (std::gcd(k, m) != 1)
            continue;
        long double const c = 2 * std::cos(2 * pi * k / m);
        std::vector<std::complex<long double>> next(poly.size() + 1, 0.0L);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= c * poly[i];
        }
        poly = next;
    }
    std::vector<long long> out;
    for (auto const& c : poly)
        out.push_back(std::llround(c.real()));
    return out; // constant term first
}

inline bool admissible(Ring const& R, unsigned long m)
{
    if (m <= 2)
        return true;
    auto const psi = real_cyclotomic(m);
    for (auto const& c : bounded(R, 4)) {
        Q2 acc{0, 0};
        for (std::size_t i = psi.size(); i-- > 0;)
            acc = add(mul(R, acc, c), Q2{Integer(psi[i]), 0});
        if (acc == Q2{0, 0})
            return true;
    }
    return false;
}

inline Integer n_lcm(Ring const& R, unsigned degree)
{
    Integer l = 1;
    for (unsigned long m = 1; m <= 200; ++m)
        if (phi(m) <= 2 * degree && admissible(R, m)) {
            Integer g = qmc::gcd(l, Integer(m));
            l = l / g * m;
        }
    return l;
}

// per-root product of N(zeta - 1) over Q: |zeta - 1|^2 for non-real zeta, 2 for -1
inline Integer n_F_rationals()
{
    long double const pi = std::acos(-1.0L);
    Integer prod = 1;
    for (unsigned long m : {2ul, 3ul, 4ul, 6ul})
        for (unsigned long k = 1; k < m; ++k) {
            if (std::gcd(k, m) != 1)
                continue;
            std::complex<long double> z = std::polar(1.0L, 2 * pi * k / m);
            if (m == 2)
                prod *= 2;
            else
                prod *= std::llround(std::norm(z - 1.0L));
        }
    return prod;
}

// ---------------------------------------------------------------------------
// binary quadratic forms of negative discriminant

struct Form {
    Integer a, b, c;
    bool operator<(Form const& o) const
    {
        if (a != o.a)
            return a < o.a;
        if (b != o.b)
            return b < o.b;
        return c < o.c;
    }
    bool operator==(Form const& o) const { return a == o.a && b == o.b && c == o.c; }
};

inline Form reduce(Form f)
{
    for (;;) {
        // b into (-a, a]
        Integer const two_a = 2 * f.a;
        Integer k = (f.a - f.b) / two_a;
        if ((f.a - f.b) < 0 && (f.a - f.b) % two_a != 0)
            k -= 1;
        if (k != 0) {
            f.c = f.a * k * k + f.b * k + f.c;
            f.b = f.b + two_a * k;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

inline Integer egcd(Integer const& a, Integer const& b, Integer& x, Integer& y)
{
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return a < 0 ? Integer(-a) : a;
    }
    Integer x1, y1;
    Integer q = a / b, r = a % b;
    Integer g = egcd(b, r, x1, y1);
    x = y1;
    y = x1 - q * y1;
    return g;
}

// Dirichlet composition through a common united form
inline Form compose(Form const& f, Form const& g, Integer const& D)
{
    // solve B = b1 mod 2a1, B = b2 mod 2a2, B^2 = D mod 4a1a2 via the standard
    // e = gcd(a1, a2, (b1+b2)/2) recipe
    Integer const s = (f.b + g.b) / 2;
    Integer x1, y1;
    Integer const d1 = egcd(f.a, g.a, x1, y1);
    Integer x2, y2;
    Integer const e = egcd(d1, s, x2, y2);
    // e = x2 d1 + y2 s = x2 x1 a1 + x2 y1 a2 + y2 s
    Integer const u = x2 * x1, v = x2 * y1, w = y2;
    Integer const a3 = f.a * g.a / (e * e);
    Integer B = (u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + D) / 2) / e;
    B = imod(B, 2 * a3);
    Integer const c3 = (B * B - D) / (4 * a3);
    return reduce(Form{a3, B, c3});
}

inline std::vector<Form> reduced_forms(Integer const& D)
{
    std::vector<Form> out;
    for (Integer a = 1; 3 * a * a <= -D; ++a)
        for (Integer b = -a + 1; b <= a; ++b) {
            Integer const num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            Integer const c = num / (4 * a);
            if (c < a)
                continue;
            if (a == c && b < 0)
                continue;
            if (qmc::gcd(qmc::gcd(a, b < 0 ? Integer(-b) : b), c) != 1)
                continue;
            out.push_back(Form{a, b, c});
        }
    return out;
}

struct FormGroup {
    Integer h, exponent;
};

inline FormGroup form_group(Integer const& D)
{
    auto forms = reduced_forms(D);
    Form const id = reduce(Form{1, D % 2 == 0 ? Integer(0) : Integer(1), D % 2 == 0 ? -D / 4 : (1 - D) / 4});
    Integer ex = 1;
    for (auto const& f : forms) {
        Form p = f;
        Integer ord = 1;
        while (!(p == id)) {
            p = compose(p, f, D);
            ++ord;
            if (ord > Integer(forms.size()))
                throw std::logic_error("form composition does not close up");
        }
        ex = ex / qmc::gcd(ex, ord) * ord;
    }
    return {Integer(forms.size()), ex};
}

} // namespace oracle

#endif
