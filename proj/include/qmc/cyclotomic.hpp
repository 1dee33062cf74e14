#ifndef QMC_CYCLOTOMIC_HPP
#define QMC_CYCLOTOMIC_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "qmc/number_field.hpp"

namespace qmc {

struct CyclotomicInvariants {
    Integer n_lcm = 1;
    /// m with [F(zeta_m) : F] <= 2, ascending
    std::vector<std::uint64_t> admissible_m;
    /// roots in O_F of the minimal polynomial of 2 cos(2 pi / m)
    std::map<std::uint64_t, std::vector<Element>> cos_elements;
    bool has_n_F = false;
    Ideal n_F;
    std::vector<PrimeIdeal> n_F_support;
    /// support of n_lcm * n_F
    std::vector<PrimeIdeal> bad_support;
};

/// n_lcm and the admissible m.
CyclotomicInvariants compute_n_lcm(NumberField const& F);

/// Adds n_F, its support and the support of n_lcm * n_F. Per-root product: (2)
/// for zeta = -1 and (2 - c)^2 for each root c of each admissible m > 2.
CyclotomicInvariants compute_n_F(NumberField const& F, FactorLimits const& limits = {});

} // namespace qmc

#endif // QMC_CYCLOTOMIC_HPP
