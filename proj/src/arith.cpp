#include "qmc/arith.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "qmc/errors.hpp"

namespace qmc {

namespace mp = boost::multiprecision;

Integer floor_div(Integer const& a, Integer const& b)
{
    Integer q, r;
    mp::divide_qr(a, b, q, r);
    if (r != 0 && ((r < 0) != (b < 0)))
        q -= 1;
    return q;
}

Integer mod(Integer const& a, Integer const& m)
{
    Integer r = a % m;
    if (r < 0)
        r += abs(m);
    return r;
}

Integer floor(Rational const& q) { return floor_div(numer(q), denom(q)); }

Integer ceil(Rational const& q) { return -floor_div(-numer(q), denom(q)); }

Integer pow(Integer const& base, unsigned long exp) { return mp::pow(base, static_cast<unsigned>(exp)); }

Rational pow(Rational const& base, unsigned long exp)
{
    return Rational(pow(numer(base), exp), pow(denom(base), exp));
}

Integer powm(Integer const& base, Integer const& exp, Integer const& m)
{
    if (m == 1)
        return 0;
    return mp::powm(mod(base, m), exp, m);
}

Integer xgcd(Integer const& a, Integer const& b, Integer& u, Integer& v)
{
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q = floor_div(r0, r1);
        Integer r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Integer s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Integer t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    u = s0;
    v = t0;
    return r0;
}

Integer invmod(Integer const& a, Integer const& m)
{
    Integer u, v;
    Integer g = xgcd(mod(a, m), m, u, v);
    if (g != 1)
        throw Error(ErrorKind::PreconditionViolation, "invmod: " + to_string(a) + " not invertible mod " + to_string(m));
    return mod(u, m);
}

Integer isqrt(Integer const& n)
{
    if (n < 0)
        throw Error(ErrorKind::PreconditionViolation, "isqrt of negative number");
    return mp::sqrt(n);
}

bool is_square(Integer const& n)
{
    if (n < 0)
        return false;
    Integer r = isqrt(n);
    return r * r == n;
}

std::size_t decimal_digits(Integer const& n)
{
    return abs(n).str().size();
}

std::string to_string(Integer const& n) { return n.str(); }

std::string to_string(Rational const& q)
{
    if (denom(q) == 1)
        return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

Rational sqrt_upper(Rational const& q, unsigned bits)
{
    if (q < 0)
        throw Error(ErrorKind::PreconditionViolation, "sqrt_upper of negative number");
    // sqrt(q) <= ceil(sqrt(q * 4^bits)) / 2^bits
    Integer scale = Integer(1) << (2 * bits);
    Integer scaled = ceil(q * Rational(scale));
    Integer r = isqrt(scaled);
    if (r * r < scaled)
        r += 1;
    return Rational(r, Integer(1) << bits);
}

long long to_ll(Integer const& n) { return n.convert_to<long long>(); }

std::vector<std::uint32_t> const& small_primes(std::uint32_t limit)
{
    static std::mutex lock;
    // older tables stay alive: other threads may still iterate them
    static std::vector<std::unique_ptr<std::vector<std::uint32_t>>> tables;
    static std::uint32_t sieved = 0;
    std::lock_guard<std::mutex> guard(lock);
    if (sieved < limit) {
        auto primes = std::make_unique<std::vector<std::uint32_t>>();
        std::vector<bool> composite(limit + 1, false);
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i])
                continue;
            primes->push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
                composite[j] = true;
        }
        tables.push_back(std::move(primes));
        sieved = limit;
    }
    return *tables.back();
}

namespace {

bool miller_rabin_round(Integer const& n, Integer const& d, unsigned s, Integer const& a)
{
    Integer x = powm(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

} // namespace

bool is_probable_prime(Integer const& n)
{
    if (n < 2)
        return false;
    static constexpr unsigned first[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned p : first) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // 3317044064679887385961981 is the smallest strong pseudoprime to the first 13 prime bases.
    static Integer const det_bound("3317044064679887385961981");
    if (n < det_bound) {
        for (unsigned a : first)
            if (!miller_rabin_round(n, d, s, Integer(a)))
                return false;
        return true;
    }
    auto const& primes = small_primes();
    for (std::size_t i = 0; i < 64; ++i)
        if (!miller_rabin_round(n, d, s, Integer(primes[i])))
            return false;
    return true;
}

bool is_prime(std::uint64_t n) { return is_probable_prime(Integer(n)); }

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            out.push_back(i);
            if (i * i != n)
                out.push_back(n / i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(std::uint64_t n)
{
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            sign = -sign;
        }
    }
    if (n > 1)
        sign = -sign;
    return sign;
}

namespace {

// Brent's cycle finding with batched gcds; returns a nontrivial factor or 0.
Integer pollard_brent(Integer const& n, std::uint64_t c_seed, std::uint64_t& budget)
{
    Integer const c(c_seed);
    Integer y = 2 + c_seed, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    std::uint64_t const m = 128;
    auto step = [&](Integer const& v) { return (v * v + c) % n; };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i)
            y = step(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            std::uint64_t lim = std::min<std::uint64_t>(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = step(y);
                q = q * abs(Integer(x - y)) % n;
            }
            if (budget <= lim) {
                budget = 0;
                g = gcd(q, n);
                return (g > 1 && g < n) ? g : Integer(0);
            }
            budget -= lim;
            g = gcd(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd(abs(Integer(x - ys)), n);
        } while (g == 1);
    }
    return (g > 1 && g < n) ? g : Integer(0);
}

void split_composite(Integer const& n, std::map<Integer, unsigned>& out, unsigned mult,
                     std::uint64_t& budget)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        out[n] += mult;
        return;
    }
    Integer r = isqrt(n);
    if (r * r == n) {
        split_composite(r, out, 2 * mult, budget);
        return;
    }
    for (std::uint64_t c = 1; c < 64 && budget > 0; ++c) {
        Integer f = pollard_brent(n, c, budget);
        if (f != 0) {
            Integer g = n / f;
            Integer common = gcd(f, g);
            if (common > 1) {
                // keep multiplicities exact when f and g share primes
                std::map<Integer, unsigned> sub;
                split_composite(common, sub, 1, budget);
                Integer rest = n;
                for (auto const& [p, _] : sub) {
                    unsigned e = 0;
                    while (rest % p == 0) {
                        rest /= p;
                        ++e;
                    }
                    out[p] += e * mult;
                }
                split_composite(rest, out, mult, budget);
                return;
            }
            split_composite(f, out, mult, budget);
            split_composite(g, out, mult, budget);
            return;
        }
    }
    throw Error(ErrorKind::FactorizationIncomplete,
                "composite cofactor with " + std::to_string(decimal_digits(n)) + " digits survived the rho budget");
}

} // namespace

std::map<Integer, unsigned> factor_integer(Integer const& n_in, FactorLimits const& limits)
{
    if (n_in == 0)
        throw Error(ErrorKind::ZeroInput, "cannot factor 0");
    Integer n = abs(n_in);
    if (decimal_digits(n) > limits.digit_limit)
        throw Error(ErrorKind::DigitBudgetExceeded,
                    std::to_string(decimal_digits(n)) + "-digit integer exceeds the " + std::to_string(limits.digit_limit)
                        + "-digit limit");
    std::map<Integer, unsigned> out;
    for (std::uint32_t p : small_primes(limits.trial_limit)) {
        if (p > limits.trial_limit)
            break;
        if (Integer(p) * p > n)
            break;
        if (mpz_divisible_ui_p(n.backend().data(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.backend().data(), p)) {
                mpz_divexact_ui(n.backend().data(), n.backend().data(), p);
                ++e;
            }
            out[Integer(p)] = e;
        }
    }
    if (n == 1)
        return out;
    std::uint64_t budget = limits.rho_iterations;
    split_composite(n, out, 1, budget);
    return out;
}

} // namespace qmc
