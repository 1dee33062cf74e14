#include "qmc/interval.hpp"

#include <algorithm>

#include "qmc/errors.hpp"

namespace qmc {

Interval operator+(Interval const& a, Interval const& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(Interval const& a, Interval const& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(Interval const& a, Interval const& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval eval_interval(RatPoly const& f, Interval const& x)
{
    Interval acc(Rational(0));
    for (std::size_t i = f.size(); i-- > 0;)
        acc = acc * x + Interval(f[i]);
    return acc;
}

namespace {

using Sturm = std::vector<RatPoly>;

Sturm sturm_sequence(IntPoly const& f)
{
    Sturm seq{to_rat(f), to_rat(poly_derivative(f))};
    while (degree(seq.back()) > 0) {
        RatPoly q, r;
        poly_divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.empty())
            break;
        for (auto& c : r)
            c = -c;
        seq.push_back(r);
    }
    return seq;
}

int sign_changes(Sturm const& seq, Rational const& x)
{
    int count = 0, last = 0;
    for (auto const& p : seq) {
        Rational v = poly_eval(p, x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

void isolate(IntPoly const& f, Sturm const& seq, Rational lo, Rational hi, int vlo, int vhi, std::vector<Interval>& out)
{
    // roots in (lo, hi]
    int n = vlo - vhi;
    if (n == 0)
        return;
    if (n == 1) {
        if (poly_eval(f, hi) == 0)
            out.emplace_back(hi, hi);
        else
            out.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / 2;
    int vmid = sign_changes(seq, mid);
    isolate(f, seq, lo, mid, vlo, vmid, out);
    isolate(f, seq, mid, hi, vmid, vhi, out);
}

} // namespace

std::vector<Interval> isolate_real_roots(IntPoly const& f)
{
    if (degree(f) < 1)
        return {};
    if (degree(f) == 1) {
        Rational r = Rational(-f[0]) / Rational(f[1]);
        return {Interval(r, r)};
    }
    Rational bound = 1;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        bound = std::max(bound, Rational(abs(f[i])) / Rational(abs(f.back())) + 1);
    Sturm seq = sturm_sequence(f);
    std::vector<Interval> out;
    isolate(f, seq, -bound, bound, sign_changes(seq, -bound), sign_changes(seq, bound), out);
    // shrink half-open intervals to closed ones whose endpoints are not roots
    for (auto& iv : out) {
        if (iv.lo == iv.hi)
            continue;
        if (poly_eval(f, iv.lo) == 0) {
            // a root at lo belongs to the neighbouring interval; nudge inwards
            Rational mid = (iv.lo + iv.hi) / 2;
            while (sign_changes(seq, mid) != sign_changes(seq, iv.hi))
                mid = (iv.lo + mid) / 2;
            iv.lo = mid;
        }
    }
    return out;
}

Interval refine_root(IntPoly const& f, Interval iv, unsigned bits)
{
    if (iv.lo == iv.hi)
        return iv;
    Rational const target = Rational(1) / Rational(Integer(1) << bits);
    Rational flo = poly_eval(f, iv.lo);
    while (iv.width() > target) {
        Rational mid = (iv.lo + iv.hi) / 2;
        Rational fm = poly_eval(f, mid);
        if (fm == 0)
            return Interval(mid, mid);
        if ((fm > 0) == (flo > 0)) {
            iv.lo = mid;
            flo = fm;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

} // namespace qmc
