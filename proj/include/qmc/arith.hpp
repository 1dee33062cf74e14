#ifndef QMC_ARITH_HPP
#define QMC_ARITH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace qmc {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer numer(Rational const& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(Rational const& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(Rational const& q) { return denom(q) == 1; }

inline Integer abs(Integer const& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(Rational const& a) { return a < 0 ? Rational(-a) : a; }

inline Integer gcd(Integer const& a, Integer const& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(Integer const& a, Integer const& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs(a / gcd(a, b) * b);
}

/// Floor division and non-negative remainder.
Integer floor_div(Integer const& a, Integer const& b);
Integer mod(Integer const& a, Integer const& m);
Integer floor(Rational const& q);
Integer ceil(Rational const& q);

Integer pow(Integer const& base, unsigned long exp);
Rational pow(Rational const& base, unsigned long exp);
Integer powm(Integer const& base, Integer const& exp, Integer const& m);
Integer invmod(Integer const& a, Integer const& m);

/// Extended gcd: returns g = gcd(a, b) >= 0 with g = u a + v b.
Integer xgcd(Integer const& a, Integer const& b, Integer& u, Integer& v);

Integer isqrt(Integer const& n);
bool is_square(Integer const& n);

/// Number of decimal digits of |n| (0 has one digit).
std::size_t decimal_digits(Integer const& n);

std::string to_string(Integer const& n);
std::string to_string(Rational const& q);

/// Exact sqrt bound: smallest rational of the form k / 2^bits that is >= sqrt(q), q >= 0.
Rational sqrt_upper(Rational const& q, unsigned bits = 64);

long long to_ll(Integer const& n);

// -------------------------------------------------------------------------
// primes and factorization

/// Primes below `limit`, memoized for the process lifetime.
std::vector<std::uint32_t> const& small_primes(std::uint32_t limit = 1000000);

/// Miller-Rabin: deterministic (first 13 prime bases) below 3.3e24, 64 prime bases above.
bool is_probable_prime(Integer const& n);

/// Deterministic for every n < 2^64; used for loop bounds.
bool is_prime(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
int moebius(std::uint64_t n);

struct FactorLimits {
    /// Pollard-Brent iteration budget per composite cofactor; iteration counts
    /// (not wall time) keep results reproducible across worker counts.
    std::uint64_t rho_iterations = 4000000;
    /// Refuse to factor numbers with more decimal digits than this.
    std::size_t digit_limit = 60;
    std::uint32_t trial_limit = 1000000;
};

/// Complete factorization |n| = prod p^e. Throws FactorizationIncomplete when
/// a composite cofactor survives the rho budget and DigitBudgetExceeded when
/// |n| is beyond digit_limit.
std::map<Integer, unsigned> factor_integer(Integer const& n, FactorLimits const& limits = {});

} // namespace qmc

#endif // QMC_ARITH_HPP
