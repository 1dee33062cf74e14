#ifndef QMC_INTERVAL_HPP
#define QMC_INTERVAL_HPP

#include <vector>

#include "qmc/arith.hpp"
#include "qmc/poly.hpp"

namespace qmc {

/// Closed interval with exact rational endpoints.
struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational const& x) : lo(x), hi(x) {}
    Interval(Rational const& a, Rational const& b) : lo(a), hi(b) {}

    Rational width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

Interval operator+(Interval const& a, Interval const& b);
Interval operator-(Interval const& a, Interval const& b);
Interval operator*(Interval const& a, Interval const& b);

/// Horner evaluation of a rational polynomial over an interval.
Interval eval_interval(RatPoly const& f, Interval const& x);

/// Isolating intervals for the real roots of a squarefree integer polynomial,
/// sorted ascending. A rational root is returned as a point interval.
std::vector<Interval> isolate_real_roots(IntPoly const& f);

/// Bisect an isolating interval of a simple root until its width is at most 2^-bits.
Interval refine_root(IntPoly const& f, Interval iv, unsigned bits);

} // namespace qmc

#endif // QMC_INTERVAL_HPP
