#include "qmc/cyclotomic.hpp"

#include <algorithm>

#include "qmc/errors.hpp"

namespace qmc {

namespace {

Element eval_at(NumberField const& F, IntPoly const& g, Element const& c)
{
    Element acc = Element::Zero(F.degree());
    for (std::size_t i = g.size(); i-- > 0;)
        acc = elem_mul(F, acc, c) + elem_from_int(F, g[i]);
    return acc;
}

} // namespace

CyclotomicInvariants compute_n_lcm(NumberField const& F)
{
    if (!F.totally_real())
        throw Error(ErrorKind::PreconditionViolation, "n_lcm needs a totally real field");
    std::uint64_t const d = static_cast<std::uint64_t>(F.degree());
    // phi(m) >= sqrt(m / 2), so phi(m) <= 2d forces m <= 8 d^2
    std::vector<EmbeddingBound> box(F.degree(), EmbeddingBound{0, 4});
    std::vector<Element> const cands = enumerate_bounded_integers(F, box);
    CyclotomicInvariants out;
    for (std::uint64_t m = 1; m <= 8 * d * d; ++m) {
        if (euler_phi(m) > 2 * d)
            continue;
        IntPoly const g = real_cyclotomic_polynomial(m);
        std::vector<Element> roots;
        for (auto const& c : cands)
            if (eval_at(F, g, c).isZero())
                roots.push_back(c);
        if (roots.empty())
            continue;
        out.admissible_m.push_back(m);
        out.cos_elements[m] = std::move(roots);
        out.n_lcm = lcm(out.n_lcm, Integer(m));
    }
    return out;
}

CyclotomicInvariants compute_n_F(NumberField const& F, FactorLimits const& limits)
{
    CyclotomicInvariants out = compute_n_lcm(F);
    Ideal n = ideal_product(F, different(F), rational_ideal(F, 2));
    Element const two = elem_from_int(F, 2);
    for (auto const& [m, roots] : out.cos_elements) {
        if (m <= 2)
            continue;
        for (auto const& c : roots) {
            Ideal t = principal_ideal(F, two - c);
            n = ideal_product(F, n, ideal_product(F, t, t));
        }
    }
    out.has_n_F = true;
    out.n_F = n;
    out.n_F_support = ideal_support(F, n, limits);
    out.bad_support = ideal_support(F, ideal_product(F, n, rational_ideal(F, out.n_lcm)), limits);
    return out;
}

} // namespace qmc
