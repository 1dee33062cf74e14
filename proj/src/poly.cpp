#include "qmc/poly.hpp"

#include <algorithm>
#include <random>

#include "qmc/errors.hpp"
#include "qmc/linalg.hpp"

namespace qmc {

RatPoly to_rat(IntPoly const& f)
{
    RatPoly out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = Rational(f[i]);
    return out;
}

void poly_divmod(RatPoly const& a, RatPoly const& b, RatPoly& q, RatPoly& r)
{
    if (b.empty())
        throw Error(ErrorKind::PreconditionViolation, "polynomial division by zero");
    r = a;
    trim(r);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    Rational const lead = b.back();
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Rational c = r.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] -= c * b[i];
        trim(r);
    }
    trim(q);
}

RatPoly poly_gcd(RatPoly a, RatPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a)
            c /= lead;
    }
    return a;
}

bool poly_exact_div(IntPoly const& a, IntPoly const& b, IntPoly& q)
{
    if (b.empty() || b.back() != 1)
        throw Error(ErrorKind::PreconditionViolation, "poly_exact_div expects a monic divisor");
    IntPoly r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Integer(0));
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Integer c = r.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] -= c * b[i];
        trim(r);
    }
    trim(q);
    return r.empty();
}

Integer resultant(IntPoly const& f, IntPoly const& g)
{
    int m = degree(f), n = degree(g);
    if (m < 0 || n < 0)
        return 0;
    if (m == 0)
        return pow(f[0], n);
    if (n == 0)
        return pow(g[0], m);
    // Sylvester matrix
    IntMat s = IntMat::Zero(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s(i, i + j) = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s(n + i, i + j) = g[n - j];
    return determinant(s);
}

Integer discriminant(IntPoly const& f)
{
    int n = degree(f);
    if (n < 1)
        throw Error(ErrorKind::PreconditionViolation, "discriminant of a constant");
    if (n == 1)
        return 1;
    Integer r = resultant(f, poly_derivative(f)) / f.back();
    return (n * (n - 1) / 2) % 2 ? Integer(-r) : r;
}

bool is_squarefree(IntPoly const& f)
{
    return degree(poly_gcd(to_rat(f), to_rat(poly_derivative(f)))) == 0;
}

int count_real_roots(IntPoly const& f_in)
{
    RatPoly f = to_rat(f_in);
    RatPoly g = poly_gcd(f, to_rat(poly_derivative(f_in)));
    if (degree(g) > 0) {
        RatPoly q, r;
        poly_divmod(f, g, q, r);
        f = q;
    }
    if (degree(f) <= 0)
        return 0;
    std::vector<RatPoly> seq{f, poly_derivative(f)};
    while (degree(seq.back()) > 0) {
        RatPoly q, r;
        poly_divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.empty())
            break;
        for (auto& c : r)
            c = -c;
        seq.push_back(r);
    }
    // sign changes at -inf and +inf from leading coefficients
    auto changes = [&](bool at_plus) {
        int count = 0, last = 0;
        for (auto const& p : seq) {
            int s = p.back() > 0 ? 1 : -1;
            if (!at_plus && degree(p) % 2 == 1)
                s = -s;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    };
    return changes(false) - changes(true);
}

IntPoly cyclotomic_polynomial(std::uint64_t m)
{
    if (m == 0)
        throw Error(ErrorKind::PreconditionViolation, "cyclotomic_polynomial(0)");
    IntPoly f(m + 1, Integer(0));
    f[0] = -1;
    f[m] = 1;
    for (std::uint64_t d : divisors(m)) {
        if (d == m)
            continue;
        IntPoly q;
        poly_exact_div(f, cyclotomic_polynomial(d), q);
        f = q;
    }
    return f;
}

IntPoly real_cyclotomic_polynomial(std::uint64_t m)
{
    if (m == 1)
        return {Integer(-2), Integer(1)};
    if (m == 2)
        return {Integer(2), Integer(1)};
    IntPoly phi = cyclotomic_polynomial(m);
    std::size_t k = phi.size() / 2; // phi has even degree 2k
    // Dickson polynomials D_j(y) = x^j + x^-j with y = x + 1/x
    std::vector<IntPoly> dick{{Integer(2)}, {Integer(0), Integer(1)}};
    for (std::size_t j = 2; j <= k; ++j)
        dick.push_back(poly_sub(poly_mul(IntPoly{Integer(0), Integer(1)}, dick[j - 1]), dick[j - 2]));
    IntPoly out{phi[k]};
    for (std::size_t j = 1; j <= k; ++j)
        out = poly_add(out, poly_scale(dick[j], phi[k + j]));
    return out;
}

std::string poly_to_string(IntPoly const& f)
{
    if (f.empty())
        return "0";
    std::string out;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] == 0)
            continue;
        Integer c = f[i];
        if (!out.empty())
            out += c < 0 ? " - " : " + ";
        else if (c < 0)
            out += "-";
        c = abs(c);
        if (i == 0 || c != 1)
            out += to_string(c);
        if (i >= 1)
            out += "x";
        if (i >= 2)
            out += "^" + std::to_string(i);
    }
    return out;
}

// -------------------------------------------------------------------------
// F_p

FpPoly fp_reduce(IntPoly const& f, Integer const& p)
{
    FpPoly out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = mod(f[i], p);
    trim(out);
    return out;
}

FpPoly fp_reduce(RatPoly const& f, Integer const& p)
{
    FpPoly out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = mod(numer(f[i]) * invmod(denom(f[i]), p), p);
    trim(out);
    return out;
}

FpPoly fp_add(FpPoly const& a, FpPoly const& b, Integer const& p)
{
    FpPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        Integer s = (i < a.size() ? a[i] : Integer(0)) + (i < b.size() ? b[i] : Integer(0));
        out[i] = s >= p ? Integer(s - p) : s;
    }
    trim(out);
    return out;
}

FpPoly fp_sub(FpPoly const& a, FpPoly const& b, Integer const& p)
{
    FpPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        Integer s = (i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0));
        out[i] = s < 0 ? Integer(s + p) : s;
    }
    trim(out);
    return out;
}

FpPoly fp_mul(FpPoly const& a, FpPoly const& b, Integer const& p)
{
    if (a.empty() || b.empty())
        return {};
    FpPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] += a[i] * b[j];
    for (auto& c : out)
        c %= p;
    trim(out);
    return out;
}

FpPoly fp_scale(FpPoly const& a, Integer const& s, Integer const& p)
{
    FpPoly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = mod(a[i] * s, p);
    trim(out);
    return out;
}

void fp_divmod(FpPoly const& a, FpPoly const& b, Integer const& p, FpPoly& q, FpPoly& r)
{
    if (b.empty())
        throw Error(ErrorKind::PreconditionViolation, "F_p polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Integer(0));
    Integer inv = invmod(b.back(), p);
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Integer c = r.back() * inv % p;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] = mod(r[shift + i] - c * b[i], p);
        trim(r);
    }
    trim(q);
}

FpPoly fp_rem(FpPoly const& a, FpPoly const& b, Integer const& p)
{
    FpPoly q, r;
    fp_divmod(a, b, p, q, r);
    return r;
}

FpPoly fp_monic(FpPoly const& a, Integer const& p)
{
    if (a.empty())
        return a;
    return fp_scale(a, invmod(a.back(), p), p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, Integer const& p)
{
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

FpPoly fp_xgcd(FpPoly const& a, FpPoly const& b, Integer const& p, FpPoly& s, FpPoly& t)
{
    FpPoly r0 = a, r1 = b, s0{Integer(1)}, s1, t0, t1{Integer(1)};
    while (!r1.empty()) {
        FpPoly q, r;
        fp_divmod(r0, r1, p, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s = s0;
        t = t0;
        return r0;
    }
    Integer inv = invmod(r0.back(), p);
    s = fp_scale(s0, inv, p);
    t = fp_scale(t0, inv, p);
    return fp_scale(r0, inv, p);
}

FpPoly fp_powmod(FpPoly const& base, Integer e, FpPoly const& modulus, Integer const& p)
{
    FpPoly result{Integer(1)};
    result = fp_rem(result, modulus, p);
    FpPoly b = fp_rem(base, modulus, p);
    while (e > 0) {
        if ((e & 1) != 0)
            result = fp_rem(fp_mul(result, b, p), modulus, p);
        e >>= 1;
        if (e > 0)
            b = fp_rem(fp_mul(b, b, p), modulus, p);
    }
    return result;
}

FpPoly fp_derivative(FpPoly const& a, Integer const& p)
{
    if (a.size() <= 1)
        return {};
    FpPoly out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        out[i - 1] = mod(a[i] * Integer(static_cast<unsigned long>(i)), p);
    trim(out);
    return out;
}

bool poly_less(IntPoly const& a, IntPoly const& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

namespace {

// square-free factorization of a monic polynomial: pairs (g, multiplicity)
std::vector<std::pair<FpPoly, unsigned>> fp_squarefree(FpPoly const& f, Integer const& p)
{
    std::vector<std::pair<FpPoly, unsigned>> out;
    if (degree(f) <= 0)
        return out;
    FpPoly d = fp_derivative(f, p);
    if (d.empty()) {
        // f = g(x^p)
        unsigned long const pp = p.convert_to<unsigned long>();
        FpPoly g;
        for (std::size_t i = 0; i < f.size(); i += pp)
            g.push_back(f[i]);
        for (auto& [h, m] : fp_squarefree(g, p))
            out.emplace_back(h, m * static_cast<unsigned>(pp));
        return out;
    }
    FpPoly c = fp_gcd(f, d, p);
    FpPoly q, r;
    fp_divmod(f, c, p, q, r);
    FpPoly w = q;
    unsigned i = 1;
    while (degree(w) > 0) {
        FpPoly y = fp_gcd(w, c, p);
        FpPoly z;
        fp_divmod(w, y, p, z, r);
        if (degree(z) > 0)
            out.emplace_back(fp_monic(z, p), i);
        w = y;
        fp_divmod(c, y, p, q, r);
        c = q;
        ++i;
    }
    if (degree(c) > 0) {
        // the rest is a p-th power
        unsigned long const pp = p.convert_to<unsigned long>();
        FpPoly g;
        for (std::size_t k = 0; k < c.size(); k += pp)
            g.push_back(c[k]);
        for (auto& [h, m] : fp_squarefree(fp_monic(g, p), p))
            out.emplace_back(h, m * static_cast<unsigned>(pp));
    }
    return out;
}

// distinct-degree factorization of a squarefree monic polynomial
std::vector<std::pair<FpPoly, int>> fp_ddf(FpPoly f, Integer const& p)
{
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly const x{Integer(0), Integer(1)};
    FpPoly h = fp_rem(x, f, p);
    int d = 0;
    while (degree(f) >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(h, p, f, p);
        FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
        if (degree(g) > 0) {
            out.emplace_back(g, d);
            FpPoly q, r;
            fp_divmod(f, g, p, q, r);
            f = q;
            h = fp_rem(h, f, p);
        }
    }
    if (degree(f) > 0)
        out.emplace_back(f, degree(f));
    return out;
}

// equal-degree splitting (Cantor-Zassenhaus), deterministic seed
void fp_edf(FpPoly const& f, int d, Integer const& p, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    int const n = degree(f);
    if (n == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    Integer const q = pow(p, static_cast<unsigned long>(d));
    for (;;) {
        FpPoly a(n);
        for (int i = 0; i < n; ++i)
            a[i] = mod(Integer(rng()), p);
        trim(a);
        if (degree(a) <= 0)
            continue;
        FpPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            FpPoly t = a, acc = a;
            for (int i = 1; i < d; ++i) {
                t = fp_rem(fp_mul(t, t, p), f, p);
                acc = fp_add(acc, t, p);
            }
            b = acc;
        } else {
            b = fp_sub(fp_powmod(a, (q - 1) / 2, f, p), FpPoly{Integer(1)}, p);
        }
        FpPoly g = fp_gcd(f, b, p);
        if (degree(g) > 0 && degree(g) < n) {
            FpPoly h, r;
            fp_divmod(f, g, p, h, r);
            fp_edf(g, d, p, rng, out);
            fp_edf(h, d, p, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<FpFactor> fp_factor(FpPoly const& f_in, Integer const& p)
{
    FpPoly f = f_in;
    trim(f);
    if (f.empty())
        throw Error(ErrorKind::ZeroInput, "cannot factor the zero polynomial");
    f = fp_monic(f, p);
    std::vector<FpFactor> out;
    std::mt19937_64 rng(0x5eed ^ p.convert_to<std::uint64_t>());
    for (auto const& [g, m] : fp_squarefree(f, p)) {
        for (auto const& [h, d] : fp_ddf(g, p)) {
            std::vector<FpPoly> parts;
            fp_edf(h, d, p, rng, parts);
            for (auto& part : parts)
                out.push_back({part, m});
        }
    }
    std::sort(out.begin(), out.end(), [](FpFactor const& a, FpFactor const& b) {
        if (poly_less(a.factor, b.factor))
            return true;
        if (poly_less(b.factor, a.factor))
            return false;
        return a.multiplicity < b.multiplicity;
    });
    // merge repeated factors (can arise from p-th power handling)
    std::vector<FpFactor> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().factor == fac.factor)
            merged.back().multiplicity += fac.multiplicity;
        else
            merged.push_back(fac);
    }
    return merged;
}

bool fp_is_irreducible(FpPoly const& f, Integer const& p)
{
    auto fac = fp_factor(f, p);
    return fac.size() == 1 && fac[0].multiplicity == 1;
}

namespace {

IntPoly symmetric_mod(IntPoly f, Integer const& m)
{
    Integer half = m / 2;
    for (auto& c : f) {
        c = mod(c, m);
        if (c > half)
            c -= m;
    }
    trim(f);
    return f;
}

IntPoly mod_poly(IntPoly f, Integer const& m)
{
    for (auto& c : f)
        c = mod(c, m);
    trim(f);
    return f;
}

// remainder of a by a monic b over Z
IntPoly int_rem_monic(IntPoly const& a, IntPoly const& b)
{
    IntPoly q;
    IntPoly r = a;
    trim(r);
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Integer c = r.back();
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] -= c * b[i];
        trim(r);
    }
    return r;
}

// lift f = g h (mod p) with monic g, h to f = g h (mod p^k)
void hensel_pair(IntPoly const& f, IntPoly& g, IntPoly& h, Integer const& p, unsigned k)
{
    FpPoly s, t;
    fp_xgcd(fp_reduce(g, p), fp_reduce(h, p), p, s, t);
    Integer pk = p;
    for (unsigned step = 1; step < k; ++step) {
        IntPoly diff = poly_sub(f, poly_mul(g, h));
        for (auto& c : diff)
            c /= pk; // exact
        FpPoly e = fp_reduce(diff, p);
        FpPoly tau = fp_rem(fp_mul(t, e, p), fp_reduce(g, p), p);
        FpPoly sigma = fp_rem(fp_mul(s, e, p), fp_reduce(h, p), p);
        g = poly_add(g, poly_scale(tau, pk));
        h = poly_add(h, poly_scale(sigma, pk));
        pk *= p;
        g = mod_poly(g, pk);
        h = mod_poly(h, pk);
    }
}

std::vector<IntPoly> hensel_lift(IntPoly const& f, std::vector<FpPoly> const& factors, Integer const& p, unsigned k)
{
    if (factors.size() == 1)
        return {f};
    Integer pk = pow(p, k);
    IntPoly g = factors[0];
    FpPoly rest{Integer(1)};
    for (std::size_t i = 1; i < factors.size(); ++i)
        rest = fp_mul(rest, factors[i], p);
    IntPoly h = rest;
    hensel_pair(f, g, h, p, k);
    std::vector<IntPoly> out{g};
    std::vector<FpPoly> tail(factors.begin() + 1, factors.end());
    for (auto& lifted : hensel_lift(h, tail, p, k))
        out.push_back(mod_poly(lifted, pk));
    return out;
}

} // namespace

bool is_irreducible(IntPoly const& f_in)
{
    IntPoly f = f_in;
    trim(f);
    int const n = degree(f);
    if (n <= 0)
        return false;
    if (f.back() != 1)
        throw Error(ErrorKind::PreconditionViolation, "is_irreducible expects a monic polynomial");
    if (n == 1)
        return true;
    if (!is_squarefree(f))
        return false;
    Integer disc = discriminant(f);
    // pick the good prime with the fewest modular factors among the first few
    Integer best_p = 0;
    std::vector<FpFactor> best;
    int tried = 0;
    for (std::uint32_t pr : small_primes()) {
        Integer p(pr);
        if (disc % p == 0)
            continue;
        auto fac = fp_factor(fp_reduce(f, p), p);
        if (fac.size() == 1)
            return true;
        if (best.empty() || fac.size() < best.size()) {
            best = fac;
            best_p = p;
        }
        if (++tried >= 8)
            break;
    }
    Integer const p = best_p;
    // coefficient bound for monic factors: 2^n * ||f||_2 (Mignotte)
    Integer norm2 = 0;
    for (auto const& c : f)
        norm2 += c * c;
    Integer bound = (Integer(1) << n) * (isqrt(norm2) + 1);
    unsigned k = 1;
    Integer pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++k;
    }
    std::vector<FpPoly> mods;
    for (auto const& fac : best)
        mods.push_back(fac.factor);
    std::vector<IntPoly> lifted = hensel_lift(f, mods, p, k);
    std::size_t const r = lifted.size();
    // try subsets of size up to r/2
    std::vector<std::size_t> idx;
    for (std::size_t size = 1; 2 * size <= r; ++size) {
        idx.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i)
            idx[i] = i;
        for (;;) {
            IntPoly g{Integer(1)};
            for (std::size_t i : idx)
                g = mod_poly(poly_mul(g, lifted[i]), pk);
            g = symmetric_mod(g, pk);
            if (!g.empty() && g.back() == 1 && degree(g) > 0 && int_rem_monic(f, g).empty())
                return false;
            // next combination
            std::size_t pos = size;
            while (pos > 0 && idx[pos - 1] == r - size + pos - 1)
                --pos;
            if (pos == 0)
                break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < size; ++i)
                idx[i] = idx[i - 1] + 1;
        }
    }
    return true;
}

} // namespace qmc
