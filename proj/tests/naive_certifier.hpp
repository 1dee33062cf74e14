// Condition-by-condition re-evaluation on a separate code path. The library
// is used for the fields, their prime lists and h'_k; u, Delta, the splitting
// of ramified primes and membership in Q are all recomputed here.
//
// Restricted to the corpus shape: F is Q or Q(sqrt5) (golden ratio
// generator) and every ramified prime of B is the only prime of F above p.
#ifndef QMC_TEST_NAIVE_CERTIFIER_HPP
#define QMC_TEST_NAIVE_CERTIFIER_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "qmc/certifier.hpp"

namespace oracle {

using Pair = std::tuple<Integer, int, Integer, int>; // q, q index, p, p index

inline Ring ring_of(qmc::NumberField const& F)
{
    if (F.degree() == 1)
        return rationals();
    if (F.degree() == 2 && F.poly() == qmc::IntPoly{Integer(-1), Integer(-1), Integer(1)})
        return golden();
    throw std::invalid_argument("naive certifier: unsupported F");
}

inline Integer norm(Ring const& R, Q2 const& x)
{
    if (R.rational)
        return x.a;
    // N(a + b w) = a^2 + P ab - Q b^2
    return x.a * x.a + Integer(R.P) * x.a * x.b - Integer(R.Q) * x.b * x.b;
}

// rational primes under the support of n_lcm n_F, per-root product
inline std::set<Integer> bad_primes(Ring const& R, unsigned degree, Integer const& disc)
{
    std::set<Integer> out = prime_support(n_lcm(R, degree));
    out.insert(2);
    if (disc != 1 && disc != -1)
        for (auto const& p : prime_support(disc))
            out.insert(p);
    for (unsigned long m = 3; m <= 200; ++m) {
        if (phi(m) > 2 * degree)
            continue;
        auto const psi = real_cyclotomic(m);
        for (auto const& c : bounded(R, 4)) {
            Q2 acc{0, 0};
            for (std::size_t i = psi.size(); i-- > 0;)
                acc = add(mul(R, acc, c), Q2{Integer(psi[i]), 0});
            if (!(acc == Q2{0, 0}))
                continue;
            Integer const n = norm(R, sub(Q2{2, 0}, c));
            if (n != 1 && n != -1)
                for (auto const& p : prime_support(n))
                    out.insert(p);
        }
    }
    return out;
}

// split / not split of the unique prime of F above p in F(sqrt(-q))
inline bool splits(Ring const& R, Integer const& p, int f_P, int e_P, Integer const& q)
{
    if (p == q)
        return false;
    if (p == 2) {
        if (R.rational)
            return imod(-q, Integer(8)) == 1;
        if (R.disc() == 5 && f_P == 2 && e_P == 1) // Q_2 unramified quadratic
            return imod(-q, Integer(4)) == 1;
        throw std::invalid_argument("naive certifier: unsupported dyadic prime");
    }
    if (f_P % 2 == 0)
        return true;
    return jacobi(-q, p) == 1;
}

class NaiveCertifier {
public:
    explicit NaiveCertifier(qmc::TheoremInput const& in) : in_(in), s_(*in.setting), R_(ring_of(s_.F))
    {
        for (auto const& [p, i] : in.ramified_source) {
            auto const above = qmc::factor_rational_prime(s_.F, p);
            if (above.size() != 1)
                throw std::invalid_argument("naive certifier: ramified prime not alone above p");
            ram_.push_back({p, i, above[0].e, above[0].f});
        }
        if (s_.F.discriminant() != 1)
            delta_ = prime_support(s_.F.discriminant());
        for (auto const& r : ram_)
            delta_.insert(r.p);
        bad_ = bad_primes(R_, static_cast<unsigned>(s_.F.degree()), s_.F.discriminant());
        lcm_ = n_lcm(R_, static_cast<unsigned>(s_.F.degree()));

        // u: some prime of k above a ramified p with local degree one over F
        u_ = 1;
        for (auto const& r : ram_)
            for (auto const& Q : qmc::factor_rational_prime(s_.k, r.p))
                if (Q.e * Q.f == r.e * r.f)
                    u_ = 2;
        if (in.strict_abstract)
            u_ = 2;
    }

    int u() const { return u_; }
    std::set<Integer> const& delta_primes() const { return delta_; }

    std::set<Pair> witnesses(unsigned long q_bound)
    {
        std::set<Pair> out;
        for (unsigned long qq : primes_below(q_bound + 1)) {
            Integer const q(qq);
            auto const qs = qmc::factor_rational_prime(s_.k, q);
            for (auto const& Qk : qs)
                for (auto const& r : ram_)
                    if (all_hold(Qk, r))
                        out.insert({q, Qk.index, r.p, r.index});
        }
        return out;
    }

private:
    struct Ram {
        Integer p;
        int index, e, f;
    };

    bool all_hold(qmc::PrimeIdeal const& Qk, Ram const& r)
    {
        Integer const q = Qk.p;
        // 1
        if (q == 2 || delta_.count(q))
            return false;
        // 2
        if (Qk.f % 2 == 0)
            return false;
        // 6 holds by construction of the loop
        // 5
        for (auto const& P : qmc::factor_rational_prime(s_.k, r.p))
            if (std::gcd(2 * r.f, P.f) != r.f)
                return false;
        // 4
        if (in_Q(q, static_cast<unsigned>(Qk.f), r.p))
            return false;
        // 3
        bool any = false;
        for (auto const& x : ram_)
            any = any || splits(R_, x.p, x.f, x.e, q);
        return any;
    }

    bool in_Q(Integer const& ell, unsigned f, Integer const& p)
    {
        if (bad_.count(p))
            return true;
        auto const& norms = d_norms(ell, f);
        for (auto const& n : norms)
            if (n % p == 0)
                return true;
        return false;
    }

    // norms of the nonzero elements of all D(ell^f, e_i)
    std::vector<Integer> const& d_norms(Integer const& ell, unsigned f)
    {
        auto key = std::make_pair(ell, f);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        std::vector<Integer> out;
        Integer const L = ipow(ell, f);
        auto const bs = bounded(R_, 4 * L);
        Integer const h = s_.h_exp();
        for (long i = 1; i <= s_.F.degree(); ++i) {
            unsigned long const e = static_cast<unsigned long>(u_) * (lcm_ / 6).convert_to<unsigned long>()
                * h.convert_to<unsigned long>() * static_cast<unsigned long>(i);
            Integer const Le = ipow(L, e);
            for (auto const& b : bs) {
                Q2 const a = QuadRing{R_, b, L}.trace_of_power(e);
                Q2 const a2 = mul(R_, a, a);
                for (int c : {0, 1, 3, 4}) {
                    Q2 const x = sub(a2, Q2{c * Le, 0});
                    if (!(x == Q2{0, 0}))
                        out.push_back(norm(R_, x));
                }
            }
        }
        return cache_[key] = std::move(out);
    }

    qmc::TheoremInput const& in_;
    qmc::Setting const& s_;
    Ring R_;
    std::vector<Ram> ram_;
    std::set<Integer> delta_, bad_;
    Integer lcm_;
    int u_ = 2;
    std::map<std::pair<Integer, unsigned>, std::vector<Integer>> cache_;
};

} // namespace oracle

#endif
