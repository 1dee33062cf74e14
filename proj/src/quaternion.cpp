#include "qmc/quaternion.hpp"

#include <algorithm>
#include <set>

#include "qmc/errors.hpp"

namespace qmc {

namespace {

// z^2 = y mod P^k for some z, by running over the box 0 <= z_i < H(i,i)
bool square_mod_power(NumberField const& F, PrimeIdeal const& P, Element const& y, unsigned long k)
{
    Ideal const Pk = ideal_power(F, P.ideal, k);
    Eigen::Index const n = F.degree();
    std::vector<long long> top(n);
    for (Eigen::Index i = 0; i < n; ++i)
        top[i] = to_ll(Pk.hnf(i, i));
    Element z = Element::Zero(n);
    for (;;) {
        if (ideal_contains(Pk, Element(elem_mul(F, z, z) - y)))
            return true;
        Eigen::Index i = 0;
        while (i < n && z(i) + 1 == top[i])
            z(i++) = 0;
        if (i == n)
            return false;
        z(i) += 1;
    }
}

bool residue_square(PrimeIdeal const& P, Element const& unit)
{
    Integer const half = (P.norm() - 1) / 2;
    return residue_pow(P, reduce(P, unit), half) == residue_from_int(P, 1);
}

int legendre(Integer const& a, Integer const& p)
{
    Integer r = powm(mod(a, p), (p - 1) / 2, p);
    return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

} // namespace

bool local_square(NumberField const& F, PrimeIdeal const& P, Element const& x)
{
    if (x.isZero())
        throw Error(ErrorKind::ZeroInput, "local_square of zero");
    int v = 0;
    Element const y = unit_part(F, P, x, v);
    if (v % 2 != 0)
        return false;
    if (P.p != 2)
        return residue_square(P, y);
    // Hensel: a unit is a square iff it is one mod 4 pi
    return square_mod_power(F, P, y, 2 * static_cast<unsigned long>(P.e) + 1);
}

std::string to_string(LocalSplitting s)
{
    switch (s) {
    case LocalSplitting::split: return "split";
    case LocalSplitting::inert: return "inert";
    case LocalSplitting::ramified: return "ramified";
    }
    return "?";
}

LocalSplitting prime_splits_in_sqrt(NumberField const& F, PrimeIdeal const& P, Integer const& q)
{
    if (q < 2 || !is_probable_prime(q))
        throw Error(ErrorKind::PreconditionViolation, "q = " + to_string(q) + " is not prime");
    int v = 0;
    Element const y = unit_part(F, P, elem_from_int(F, -q), v);
    if (v % 2 != 0)
        return LocalSplitting::ramified;
    if (P.p != 2)
        return residue_square(P, y) ? LocalSplitting::split : LocalSplitting::inert;
    unsigned long const e = static_cast<unsigned long>(P.e);
    if (square_mod_power(F, P, y, 2 * e + 1))
        return LocalSplitting::split;
    // unramified iff the unit is a square mod 4
    return square_mod_power(F, P, y, 2 * e) ? LocalSplitting::inert : LocalSplitting::ramified;
}

QuaternionData make_quaternion(NumberField const& F, std::vector<PrimeIdeal> ramified)
{
    std::sort(ramified.begin(), ramified.end(), prime_less);
    for (std::size_t i = 1; i < ramified.size(); ++i)
        if (same_prime(ramified[i - 1], ramified[i]))
            throw Error(ErrorKind::InvalidRamification, "repeated prime above " + to_string(ramified[i].p));
    if (ramified.size() % 2 != 0)
        throw Error(ErrorKind::InvalidRamification,
                    "odd number of ramified primes (" + std::to_string(ramified.size()) + ")");
    if (ramified.empty())
        throw Error(ErrorKind::InvalidRamification, "empty ramification set gives the matrix algebra");
    QuaternionData B;
    B.disc_ideal = unit_ideal(F);
    std::set<Integer> under, all;
    for (auto const& P : ramified) {
        B.disc_ideal = ideal_product(F, B.disc_ideal, P.ideal);
        under.insert(P.p);
    }
    all = under;
    for (auto const& [p, e] : factor_integer(F.discriminant()))
        all.insert(p);
    for (auto const& p : under)
        B.delta_prime *= p;
    for (auto const& p : all)
        B.delta *= p;
    B.ramified = std::move(ramified);
    return B;
}

QuaternionData make_quaternion(NumberField const& F, std::vector<std::pair<Integer, int>> const& ramified)
{
    std::vector<PrimeIdeal> primes;
    for (auto const& [p, idx] : ramified) {
        if (p < 2 || !is_probable_prime(p))
            throw Error(ErrorKind::InvalidRamification, to_string(p) + " is not prime");
        auto above = factor_rational_prime(F, p);
        if (idx < 0 || static_cast<std::size_t>(idx) >= above.size())
            throw Error(ErrorKind::InvalidRamification,
                        "no prime with index " + std::to_string(idx) + " above " + to_string(p));
        primes.push_back(above[static_cast<std::size_t>(idx)]);
    }
    return make_quaternion(F, std::move(primes));
}

bool ramified_at(QuaternionData const& B, PrimeIdeal const& P)
{
    return std::any_of(B.ramified.begin(), B.ramified.end(), [&](PrimeIdeal const& R) { return same_prime(R, P); });
}

bool splits_over_sqrt_minus_q(NumberField const& F, QuaternionData const& B, Integer const& q)
{
    for (auto const& P : B.ramified)
        if (prime_splits_in_sqrt(F, P, q) == LocalSplitting::split)
            return false;
    return true;
}

int compute_u(NumberField const& F, QuaternionData const& B, NumberField const& k,
              std::vector<EmbeddingIntoK> const& embeddings)
{
    if (embeddings.size() != static_cast<std::size_t>(F.degree()))
        throw Error(ErrorKind::EmbeddingCountMismatch, "need " + std::to_string(F.degree()) + " embeddings, got "
                                                           + std::to_string(embeddings.size()));
    for (std::size_t i = 0; i < embeddings.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (embeddings[i].image == embeddings[j].image)
                throw Error(ErrorKind::EmbeddingCountMismatch, "embeddings are not distinct");
    for (auto const& P : B.ramified) {
        auto const above = factor_rational_prime(k, P.p);
        for (auto const& tau : embeddings) {
            Element const pi = apply_embedding(F, k, tau, P.pi);
            bool found = false;
            for (auto const& Q : above) {
                if (!divides(Q, pi))
                    continue;
                found = true;
                int const local = (Q.e * Q.f) / (P.e * P.f);
                if (local % 2 != 0)
                    return 2;
            }
            if (!found)
                throw Error(ErrorKind::PreconditionViolation, "no prime of k above the image of a ramified prime");
        }
    }
    return 1;
}

int hilbert_symbol(Integer const& a, Integer const& b, Integer const& p)
{
    if (a == 0 || b == 0)
        throw Error(ErrorKind::ZeroInput, "hilbert symbol with a zero entry");
    if (p == 0)
        return (a < 0 && b < 0) ? -1 : 1;
    auto split = [&](Integer x, int& alpha) {
        alpha = 0;
        while (x % p == 0) {
            x /= p;
            ++alpha;
        }
        return x;
    };
    int al = 0, be = 0;
    Integer const u = split(a, al), v = split(b, be);
    if (p == 2) {
        auto eps = [](Integer const& x) { return static_cast<int>(mod((x - 1) / 2, 2)); };
        auto omega = [](Integer const& x) { return static_cast<int>(mod((x * x - 1) / 8, 2)); };
        int const s = eps(u) * eps(v) + al * omega(v) + be * omega(u);
        return s % 2 == 0 ? 1 : -1;
    }
    int sign = (al * be % 2 != 0 && mod(p, 4) == 3) ? -1 : 1;
    if (be % 2 != 0)
        sign *= legendre(u, p);
    if (al % 2 != 0)
        sign *= legendre(v, p);
    return sign;
}

std::vector<Integer> ramification_over_q(Integer const& a, Integer const& b, FactorLimits const& limits)
{
    std::set<Integer> cand{2};
    for (auto const& [p, e] : factor_integer(a, limits))
        cand.insert(p);
    for (auto const& [p, e] : factor_integer(b, limits))
        cand.insert(p);
    std::vector<Integer> out;
    for (auto const& p : cand)
        if (hilbert_symbol(a, b, p) == -1)
            out.push_back(p);
    return out;
}

} // namespace qmc
