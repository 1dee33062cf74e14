#ifndef QMC_CLASS_GROUP_HPP
#define QMC_CLASS_GROUP_HPP

#include <optional>
#include <vector>

#include "qmc/number_field.hpp"

namespace qmc {

struct ClassGroupOptions {
    int max_degree = 4;
    Integer max_abs_disc = Integer(100000000);
    /// doubling rounds of the T2 bound during relation search
    int max_rounds = 10;
    /// relations that must leave the group unchanged before it is accepted
    std::size_t stability_relations = 10;
};

struct ClassGroupData {
    /// nontrivial invariant factors d_1 | d_2 | ...; empty for the trivial group
    std::vector<Integer> elementary_divisors;
    Integer h = 1;
    Integer h_exp = 1;
    std::vector<PrimeIdeal> factor_base;
    /// columns are the accepted relations (valuation vectors over the factor base)
    IntMat relation_matrix;
    Rational minkowski;
    /// class of a factor-base exponent vector x is (class_map * x) mod invariants
    IntMat class_map;
    std::vector<Integer> invariants;
};

/// Rational upper bound for (4/pi)^r2 n!/n^n sqrt|d|, rounded up to 6 decimals.
Rational minkowski_bound(NumberField const& K);

/// Class group by the relation method over the Minkowski factor base. Throws
/// DeskScaleExceeded beyond the configured limits and
/// RelationSearchBudgetExceeded when only an upper bound could be established.
ClassGroupData class_group(NumberField const& K, ClassGroupOptions const& opt = {});

/// Search for a generator of I. For Q and imaginary quadratic fields the search
/// is exhaustive, so nullopt proves I is not principal. Otherwise nullopt means
/// the class of I is nontrivial in the computed class group.
std::optional<Element> is_principal(NumberField const& K, Ideal const& I, ClassGroupOptions const& opt = {});

/// Class of an ideal supported on the factor base, as invariant coordinates.
std::vector<Integer> class_of(ClassGroupData const& cg, IntVec const& exponents);

/// Exponent vector over the factor base of a smooth ideal, or nullopt.
std::optional<IntVec> factor_over_base(NumberField const& K, ClassGroupData const& cg, Ideal const& I);

// -------------------------------------------------------------------------
// binary quadratic forms

struct QuadForm {
    Integer a, b, c;
    bool operator==(QuadForm const& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(QuadForm const& o) const;
};

QuadForm reduce_form(QuadForm f);
QuadForm compose_forms(QuadForm const& f, QuadForm const& g);

struct FormClassGroup {
    std::vector<QuadForm> reduced_forms;
    std::vector<Integer> elementary_divisors;
    Integer h = 1;
    Integer h_exp = 1;
};

/// Reduced primitive forms of a negative discriminant and the group structure
/// under composition.
FormClassGroup form_class_group_oracle(Integer const& D);

} // namespace qmc

#endif // QMC_CLASS_GROUP_HPP
