#ifndef QMC_WEIL_SETS_HPP
#define QMC_WEIL_SETS_HPP

#include <vector>

#include "qmc/cyclotomic.hpp"
#include "qmc/number_field.hpp"

namespace qmc {

/// x^2 + b x + ell^f, roots beta and its conjugate.
struct WeilQuadratic {
    Element b;
    Integer ell;
    unsigned f = 1;

    Integer q() const { return pow(ell, f); }
};

/// Canonical order on elements: (signed norm, coordinates).
bool element_less(NumberField const& F, Element const& a, Element const& b);
void sort_unique(NumberField const& F, std::vector<Element>& xs);

/// b in O_F with |sigma(b)| <= 2 sqrt(ell^f) at every real place, boundary included.
std::vector<WeilQuadratic> enumerate_FR(NumberField const& F, Integer const& ell, unsigned f);

/// beta^e + conj(beta)^e by s_0 = 2, s_1 = -b, s_e = -b s_{e-1} - ell^f s_{e-2}.
/// Over totally real F the roots lie in F only when b^2 = 4 ell^f, and then the
/// recurrence gives 2 beta^e, which is what beta^e + beta^e means there.
Element trace_power(NumberField const& F, WeilQuadratic const& w, unsigned long e);

std::vector<Element> compute_C(NumberField const& F, Integer const& ell, unsigned f, unsigned long e);

/// {a^2, a^2 - ell^{ef}, a^2 - 3 ell^{ef}, a^2 - 4 ell^{ef} : a in C}
std::vector<Element> compute_D(NumberField const& F, std::vector<Element> const& C, Integer const& ell_ef);

struct WeilBudget {
    /// |N(x)| of every element that must be factored stays below 10^digits
    std::size_t digits = 60;
    FactorLimits limits;
};

/// Primes dividing a nonzero element of D(ell^f, e) or n_lcm n_F, canonical order.
std::vector<PrimeIdeal> compute_P(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& ell,
                                  unsigned f, unsigned long e, WeilBudget const& budget = {});

/// e_i = u (n_lcm / 6) h' i for i = 1..[F:Q]
std::vector<unsigned long> q_exponents(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp,
                                       int u);

/// Union of P(ell^f, e_i).
std::vector<PrimeIdeal> compute_Q(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp,
                                  Integer const& ell, unsigned f, int u, WeilBudget const& budget = {});

/// Where P enters Q(ell^f, u), found without factoring anything.
struct QMembership {
    bool member = false;
    /// P divides n_lcm n_F
    bool in_bad_support = false;
    /// otherwise the first hit: exponent e_i, b, the D element and its shape
    unsigned long exponent = 0;
    Element b;
    Element d_element;
    int shape = 0; // x = a^2 - shape ell^{ef}
};

/// Nonzero elements of D(ell^f, e_i) for all i, each with where it came from.
/// Built once per prime of k and queried for many P.
struct QTable {
    struct Entry {
        unsigned long exponent;
        Element b;
        Element x;
        int shape;
    };
    std::vector<Entry> entries;
    std::vector<PrimeIdeal> bad_support;
};

QTable make_q_table(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp, Integer const& ell,
                    unsigned f, int u);

QMembership q_membership(QTable const& table, PrimeIdeal const& P);

QMembership q_membership(NumberField const& F, CyclotomicInvariants const& cyc, Integer const& h_exp,
                         Integer const& ell, unsigned f, int u, PrimeIdeal const& P);

/// beta = zeta sqrt(-ell)^f cases: w with s_e^2 = c ell^{ef}, c in {0,1,3,4}, must have
/// F(beta) = F(sqrt(-ell)).
struct DichotomyReport {
    std::size_t scanned = 0;
    std::size_t special = 0;
    std::vector<Element> violations; // offending b
};

DichotomyReport check_lemma_dichotomy(NumberField const& F, Integer const& ell, unsigned f, unsigned long e);

/// x is a square in F (exact).
bool is_square_in(NumberField const& F, Element const& x);

} // namespace qmc

#endif // QMC_WEIL_SETS_HPP
