#include "qmc/weil_sets.hpp"

#include <algorithm>

#include "qmc/errors.hpp"

namespace qmc {

bool element_less(NumberField const& F, Element const& a, Element const& b)
{
    Integer const na = norm(F, a), nb = norm(F, b);
    if (na != nb)
        return na < nb;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i))
            return a(i) < b(i);
    return false;
}

void sort_unique(NumberField const& F, std::vector<Element>& xs)
{
    std::vector<std::pair<Integer, Element>> keyed;
    keyed.reserve(xs.size());
    for (auto& x : xs)
        keyed.emplace_back(norm(F, x), std::move(x));
    auto less = [](auto const& a, auto const& b) {
        if (a.first != b.first)
            return a.first < b.first;
        for (Eigen::Index i = 0; i < a.second.size(); ++i)
            if (a.second(i) != b.second(i))
                return a.second(i) < b.second(i);
        return false;
    };
    std::sort(keyed.begin(), keyed.end(), less);
    xs.clear();
    for (auto& [n, x] : keyed)
        if (xs.empty() || xs.back() != x)
            xs.push_back(std::move(x));
}

std::vector<WeilQuadratic> enumerate_FR(NumberField const& F, Integer const& ell, unsigned f)
{
    if (!F.totally_real())
        throw Error(ErrorKind::PreconditionViolation, "FR needs a totally real field");
    Integer const q = pow(ell, f);
    std::vector<EmbeddingBound> box(F.degree(), EmbeddingBound{0, Rational(4 * q)});
    std::vector<WeilQuadratic> out;
    for (auto& b : enumerate_bounded_integers(F, box))
        out.push_back(WeilQuadratic{std::move(b), ell, f});
    return out;
}

Element trace_power(NumberField const& F, WeilQuadratic const& w, unsigned long e)
{
    if (e == 0)
        return elem_from_int(F, 2);
    Integer const q = w.q();
    Element s0 = elem_from_int(F, 2), s1 = -w.b;
    for (unsigned long i = 1; i < e; ++i) {
        Element s2 = -elem_mul(F, w.b, s1) - q * s0;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return s1;
}

std::vector<Element> compute_C(NumberField const& F, Integer const& ell, unsigned f, unsigned long e)
{
    std::vector<Element> out;
    for (auto const& w : enumerate_FR(F, ell, f))
        out.push_back(trace_power(F, w, e));
    sort_unique(F, out);
    return out;
}

std::vector<Element> compute_D(NumberField const& F, std::vector<Element> const& C, Integer const& ell_ef)
{
    std::vector<Element> out;
    for (auto const& a : C) {
        Element const a2 = elem_mul(F, a, a);
        for (int c : {0, 1, 3, 4})
            out.push_back(a2 - elem_from_int(F, c * ell_ef));
    }
    sort_unique(F, out);
    return out;
}

namespace {

void merge_primes(std::vector<PrimeIdeal>& into, std::vector<PrimeIdeal> const& more)
{
    for (auto const& P : more)
        if (std::none_of(into.begin(), into.end(), [&](PrimeIdeal const& Q) { return same_prime(P, Q); }))
            into.push_back(P);
    std::sort(into.begin(), into.end(), prime_less);
}

} // namespace

std::vector<PrimeIdeal> compute_P(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& ell,
                                  unsigned f, unsigned long e, WeilBudget const& budget)
{
    if (!cyc.has_n_F)
        throw Error(ErrorKind::PreconditionViolation, "compute_P needs n_F");
    Integer const ell_ef = pow(ell, static_cast<unsigned long>(f) * e);
    std::vector<PrimeIdeal> out = cyc.bad_support;
    for (auto const& x : compute_D(F, compute_C(F, ell, f, e), ell_ef)) {
        if (x.isZero())
            continue;
        Integer const N = norm(F, x);
        if (decimal_digits(N) > budget.digits)
            throw Error(ErrorKind::DigitBudgetExceeded, "norm with " + std::to_string(decimal_digits(N))
                                                            + " digits exceeds the budget of "
                                                            + std::to_string(budget.digits));
        merge_primes(out, prime_divisors(F, x, budget.limits));
    }
    return out;
}

std::vector<unsigned long> q_exponents(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp,
                                       int u)
{
    if (cyc.n_lcm % 6 != 0)
        throw Error(ErrorKind::PreconditionViolation, "6 does not divide n_lcm");
    Integer const base = Integer(u) * (cyc.n_lcm / 6) * h_exp;
    std::vector<unsigned long> out;
    for (int i = 1; i <= F.degree(); ++i)
        out.push_back(static_cast<unsigned long>(to_ll(base * i)));
    return out;
}

std::vector<PrimeIdeal> compute_Q(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp,
                                  Integer const& ell, unsigned f, int u, WeilBudget const& budget)
{
    std::vector<PrimeIdeal> out;
    auto const es = q_exponents(F, cyc, h_exp, u);
    for (std::size_t i = 0; i < es.size(); ++i) {
        try {
            merge_primes(out, compute_P(F, cyc, ell, f, es[i], budget));
        } catch (Error const& err) {
            if (!err.is_budget())
                throw;
            throw Error(err.kind(), "term i = " + std::to_string(i + 1) + " (e = " + std::to_string(es[i])
                                        + "): " + err.what());
        }
    }
    return out;
}

QTable make_q_table(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp, Integer const& ell,
                    unsigned f, int u)
{
    QTable t;
    t.bad_support = cyc.bad_support;
    auto const FR = enumerate_FR(F, ell, f);
    for (unsigned long e : q_exponents(F, cyc, h_exp, u)) {
        Integer const ell_ef = pow(ell, static_cast<unsigned long>(f) * e);
        std::vector<Element> seen;
        for (auto const& w : FR) {
            Element const a = trace_power(F, w, e);
            // a and -a give the same D elements
            if (std::find(seen.begin(), seen.end(), a) != seen.end()
                || std::find(seen.begin(), seen.end(), Element(-a)) != seen.end())
                continue;
            seen.push_back(a);
            Element const a2 = elem_mul(F, a, a);
            for (int c : {0, 1, 3, 4}) {
                Element x = a2 - elem_from_int(F, c * ell_ef);
                if (!x.isZero())
                    t.entries.push_back(QTable::Entry{e, w.b, std::move(x), c});
            }
        }
    }
    return t;
}

QMembership q_membership(QTable const& table, PrimeIdeal const& P)
{
    QMembership out;
    for (auto const& B : table.bad_support)
        if (same_prime(B, P)) {
            out.member = out.in_bad_support = true;
            return out;
        }
    for (auto const& en : table.entries)
        if (divides(P, en.x)) {
            out.member = true;
            out.exponent = en.exponent;
            out.b = en.b;
            out.d_element = en.x;
            out.shape = en.shape;
            return out;
        }
    return out;
}

QMembership q_membership(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp,
                         Integer const& ell, unsigned f, int u, PrimeIdeal const& P)
{
    return q_membership(make_q_table(F, cyc, h_exp, ell, f, u), P);
}

bool is_square_in(NumberField const& F, Element const& x)
{
    if (x.isZero())
        return true;
    if (F.degree() == 1)
        return x(0) > 0 && is_square(x(0));
    RatElement const xr = to_rational(x);
    std::vector<EmbeddingBound> box;
    for (int i = 0; i < F.r1(); ++i) {
        if (real_sign(F, i, xr) < 0)
            return false;
        box.push_back(EmbeddingBound{0, real_embedding_interval(F, i, xr).hi});
    }
    if (F.r2() != 0)
        throw Error(ErrorKind::PreconditionViolation, "is_square_in needs a totally real field");
    for (auto const& y : enumerate_bounded_integers(F, box))
        if (elem_mul(F, y, y) == x)
            return true;
    return false;
}

DichotomyReport check_lemma_dichotomy(NumberField const& F, Integer const& ell, unsigned f, unsigned long e)
{
    if (f % 2 == 0)
        throw Error(ErrorKind::PreconditionViolation, "dichotomy check needs f odd");
    if ((2 * F.discriminant()) % ell == 0)
        throw Error(ErrorKind::PreconditionViolation, "ell divides 2 d_F");
    DichotomyReport rep;
    Integer const q = pow(ell, f);
    Integer const ell_ef = pow(ell, static_cast<unsigned long>(f) * e);
    for (auto const& w : enumerate_FR(F, ell, f)) {
        ++rep.scanned;
        Element const s = trace_power(F, w, e);
        Element const s2 = elem_mul(F, s, s);
        bool special = false;
        for (int c : {0, 1, 3, 4})
            special = special || s2 == elem_from_int(F, c * ell_ef);
        if (!special)
            continue;
        ++rep.special;
        Element const disc = elem_mul(F, w.b, w.b) - elem_from_int(F, 4 * q);
        if (!is_square_in(F, Element(-ell * disc)))
            rep.violations.push_back(w.b);
    }
    return rep;
}

} // namespace qmc
