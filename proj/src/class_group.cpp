#include "qmc/class_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qmc/errors.hpp"
#include "qmc/lattice.hpp"

namespace qmc {

Rational minkowski_bound(NumberField const& K)
{
    int const n = K.degree();
    // 4/pi < 4 / 3.14159265358979
    Rational four_over_pi = Rational(4) / Rational(Integer(314159265358979), Integer(100000000000000));
    Rational b = pow(four_over_pi, static_cast<unsigned long>(K.r2()));
    Integer fact = 1;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    b *= Rational(fact, pow(Integer(n), static_cast<unsigned long>(n)));
    b *= sqrt_upper(Rational(abs(K.discriminant())));
    Integer scale(1000000);
    return Rational(ceil(b * Rational(scale)), scale);
}

namespace {

bool finite_units(NumberField const& K) { return K.degree() == 1 || (K.r1() == 0 && K.r2() == 1); }

// T2 Gram matrix of the lattice spanned by the columns of `basis`
Eigen::MatrixXd t2_gram(NumberField const& K, IntMat const& basis)
{
    int const n = K.degree();
    auto const& roots = K.approx_roots();
    Eigen::MatrixXcd omega(n, n); // omega(k, i) = sigma_k(omega_i)
    for (int i = 0; i < n; ++i) {
        RatElement e = RatElement::Zero(n);
        e(i) = 1;
        RatPoly v = to_power_basis(K, e);
        for (int k = 0; k < n; ++k) {
            std::complex<double> acc = 0;
            for (std::size_t j = v.size(); j-- > 0;)
                acc = acc * roots[k] + v[j].convert_to<double>();
            omega(k, i) = acc;
        }
    }
    Eigen::MatrixXd b(n, basis.cols());
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
        for (Eigen::Index j = 0; j < basis.cols(); ++j)
            b(i, j) = basis(i, j).convert_to<double>();
    Eigen::MatrixXcd e = omega * b.cast<std::complex<double>>();
    return (e.adjoint() * e).real();
}

// x v1 + y v2 with norm N in an imaginary quadratic ideal, by exhaustive search
std::optional<Element> quadratic_generator(NumberField const& K, Ideal const& I)
{
    Element v1 = I.hnf.col(0), v2 = I.hnf.col(1);
    Integer A = norm(K, v1), C = norm(K, v2);
    Integer B = norm(K, Element(v1 + v2)) - A - C;
    Integer const N = I.norm;
    Integer delta = 4 * A * C - B * B; // > 0, norm form is positive definite
    Integer ymax = isqrt(4 * A * N / delta) + 1;
    for (Integer ay = 0; ay <= ymax; ++ay) {
        for (int sgn : {1, -1}) {
            if (ay == 0 && sgn < 0)
                continue;
            Integer y = sgn * ay;
            // A x^2 + B y x + C y^2 - N = 0
            Integer disc = B * B * y * y - 4 * A * (C * y * y - N);
            if (disc < 0 || !is_square(disc))
                continue;
            Integer s = isqrt(disc);
            for (Integer num : {Integer(-B * y + s), Integer(-B * y - s)}) {
                if (num % (2 * A) != 0)
                    continue;
                Integer x = num / (2 * A);
                Element alpha = x * v1 + y * v2;
                if (abs(norm(K, alpha)) == N)
                    return alpha;
            }
        }
    }
    return std::nullopt;
}

std::optional<Element> search_generator(NumberField const& K, Ideal const& I, int rounds)
{
    int const n = K.degree();
    Eigen::MatrixXd gram = t2_gram(K, I.hnf);
    double base = n * std::pow(I.norm.convert_to<double>(), 2.0 / n);
    std::optional<Element> found;
    double bound = base * 1.01;
    for (int r = 0; r < rounds && !found; ++r, bound *= 2) {
        fincke_pohst(gram, bound, [&](IntVec const& c) {
            Element alpha = I.hnf * c;
            if (abs(norm(K, alpha)) == I.norm) {
                found = alpha;
                return false;
            }
            return true;
        });
    }
    return found;
}

struct Harvest {
    NumberField const& K;
    std::vector<PrimeIdeal> const& fb;
    std::map<Integer, std::vector<std::size_t>> by_p;

    Harvest(NumberField const& field, std::vector<PrimeIdeal> const& base) : K(field), fb(base)
    {
        for (std::size_t i = 0; i < fb.size(); ++i)
            by_p[fb[i].p].push_back(i);
    }

    std::optional<IntVec> relation(Element const& alpha) const
    {
        Integer N = abs(norm(K, alpha));
        if (N == 0)
            return std::nullopt;
        IntVec v = IntVec::Zero(static_cast<Eigen::Index>(fb.size()));
        for (auto const& [p, idx] : by_p) {
            int k = 0;
            while (N % p == 0) {
                N /= p;
                ++k;
            }
            if (k == 0)
                continue;
            int accounted = 0;
            for (std::size_t i : idx) {
                int val = valuation(K, fb[i], alpha);
                v(static_cast<Eigen::Index>(i)) = val;
                accounted += val * fb[i].f;
            }
            if (accounted != k)
                return std::nullopt; // a prime above p outside the base divides alpha
        }
        if (N != 1)
            return std::nullopt;
        return v;
    }
};

struct GroupFromRelations {
    std::vector<Integer> invariants; // full SNF diagonal
    IntMat class_map;
    Integer order;
    IntMat echelon;
};

std::optional<GroupFromRelations> group_from(IntMat const& rel, Eigen::Index m)
{
    if (rel.cols() == 0)
        return std::nullopt;
    ColumnEchelon ce = column_echelon(rel);
    if (ce.rank < m)
        return std::nullopt;
    SmithForm s = smith_normal_form(ce.h);
    GroupFromRelations g;
    g.invariants = s.diagonal;
    g.class_map = s.u;
    g.order = 1;
    for (auto const& d : s.diagonal)
        g.order *= d;
    g.echelon = ce.h;
    return g;
}

Ideal ideal_from_exponents(NumberField const& K, std::vector<PrimeIdeal> const& fb, IntVec const& v)
{
    Ideal I = unit_ideal(K);
    for (Eigen::Index j = 0; j < v.size(); ++j)
        if (v(j) > 0)
            I = ideal_product(K, I, ideal_power(K, fb[j].ideal, v(j).convert_to<unsigned long>()));
    return I;
}

} // namespace

std::vector<Integer> class_of(ClassGroupData const& cg, IntVec const& exponents)
{
    IntVec w = cg.class_map * exponents;
    std::vector<Integer> out;
    for (std::size_t i = 0; i < cg.invariants.size(); ++i)
        if (cg.invariants[i] > 1)
            out.push_back(mod(w(static_cast<Eigen::Index>(i)), cg.invariants[i]));
    return out;
}

std::optional<IntVec> factor_over_base(NumberField const& K, ClassGroupData const& cg, Ideal const& I)
{
    Integer N = I.norm;
    IntVec v = IntVec::Zero(static_cast<Eigen::Index>(cg.factor_base.size()));
    for (std::size_t i = 0; i < cg.factor_base.size(); ++i) {
        auto const& P = cg.factor_base[i];
        int val = ideal_valuation(K, I, P);
        v(static_cast<Eigen::Index>(i)) = val;
        for (int k = 0; k < val; ++k)
            N /= P.norm();
    }
    if (N != 1)
        return std::nullopt;
    return v;
}

ClassGroupData class_group(NumberField const& K, ClassGroupOptions const& opt)
{
    int const n = K.degree();
    if (n > opt.max_degree || abs(K.discriminant()) > opt.max_abs_disc)
        throw Error(ErrorKind::DeskScaleExceeded,
                    "class group limited to degree <= " + std::to_string(opt.max_degree) + " and |disc| <= "
                        + to_string(opt.max_abs_disc));
    ClassGroupData out;
    out.minkowski = minkowski_bound(K);
    Integer const mb = floor(out.minkowski);
    for (std::uint32_t p : small_primes()) {
        if (Integer(p) > mb)
            break;
        for (auto& P : factor_rational_prime(K, Integer(p)))
            if (Rational(P.norm()) <= out.minkowski)
                out.factor_base.push_back(std::move(P));
    }
    Eigen::Index const m = static_cast<Eigen::Index>(out.factor_base.size());
    out.relation_matrix = IntMat::Zero(m, 0);
    if (m == 0) {
        out.class_map = IntMat::Zero(0, 0);
        return out;
    }

    Harvest harvest(K, out.factor_base);
    std::vector<IntVec> relations;
    std::set<std::vector<Integer>> seen_rel;
    auto add_relation = [&](IntVec const& v) {
        std::vector<Integer> key(v.data(), v.data() + v.size());
        if (v.isZero() || !seen_rel.insert(key).second)
            return false;
        relations.push_back(v);
        return true;
    };
    for (auto const& [p, idx] : harvest.by_p)
        if (auto r = harvest.relation(elem_from_int(K, p)))
            add_relation(*r);

    std::vector<IntMat> lattices{IntMat(IntMat::Identity(n, n))};
    for (auto const& P : out.factor_base)
        lattices.push_back(P.ideal.hnf);

    auto relation_matrix = [&]() {
        IntMat r(m, static_cast<Eigen::Index>(relations.size()));
        for (std::size_t j = 0; j < relations.size(); ++j)
            r.col(static_cast<Eigen::Index>(j)) = relations[j];
        return r;
    };

    std::optional<GroupFromRelations> group;
    std::size_t stable_count = 0;
    std::set<std::vector<Integer>> seen_elem;
    bool done = false;
    for (int round = 0; round < opt.max_rounds && !done; ++round) {
        for (auto const& basis : lattices) {
            Integer lnorm = determinant(basis);
            Eigen::MatrixXd gram = t2_gram(K, basis);
            double bound = n * std::pow(abs(lnorm).convert_to<double>(), 2.0 / n) * std::pow(2.0, round + 1);
            fincke_pohst(gram, bound, [&](IntVec const& c) {
                Element alpha = basis * c;
                std::vector<Integer> key(alpha.data(), alpha.data() + alpha.size());
                if (!seen_elem.insert(key).second)
                    return true;
                if (auto r = harvest.relation(alpha)) {
                    if (add_relation(*r)) {
                        auto g = group_from(relation_matrix(), m);
                        if (g && group && g->order == group->order)
                            ++stable_count;
                        else
                            stable_count = 0;
                        if (g)
                            group = g;
                    }
                }
                return !(group && (group->order == 1 || stable_count >= opt.stability_relations));
            });
            if (group && (group->order == 1 || stable_count >= opt.stability_relations)) {
                done = true;
                break;
            }
        }
    }
    if (!group)
        throw Error(ErrorKind::RelationSearchBudgetExceeded, "relation lattice never reached full rank");
    // with finite units the proof below is decisive on its own
    if (!done && group->order != 1 && !finite_units(K))
        throw Error(ErrorKind::RelationSearchBudgetExceeded,
                    "relation search did not stabilize; class number " + to_string(group->order) + " is an upper bound");

    // prove that no nontrivial element of the candidate group is principal
    for (int guard = 0; group->order != 1; ++guard) {
        if (!finite_units(K))
            throw Error(ErrorKind::RelationSearchBudgetExceeded,
                        "class number upper bound " + to_string(group->order)
                            + "; nonprincipality proofs need a finite unit group");
        if (guard > 64)
            throw Error(ErrorKind::RelationSearchBudgetExceeded, "nonprincipality proof did not converge");
        IntMat uinv_r = cast_matrix<Integer>(inverse(cast_matrix<Rational>(group->class_map)));
        Integer expo = 1;
        for (auto const& d : group->invariants)
            expo = lcm(expo, d);
        bool added = false;
        for (auto const& [l, e] : factor_integer(group->order)) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < group->invariants.size(); ++i)
                if (group->invariants[i] % l == 0)
                    idx.push_back(i);
            long const ll = l.convert_to<long>();
            std::vector<long> c(idx.size(), 0);
            for (;;) {
                std::size_t pos = 0;
                while (pos < c.size() && c[pos] == ll - 1)
                    c[pos++] = 0;
                if (pos == c.size())
                    break;
                ++c[pos];
                IntVec w = IntVec::Zero(m);
                for (std::size_t t = 0; t < idx.size(); ++t)
                    w(static_cast<Eigen::Index>(idx[t])) = Integer(c[t]) * (group->invariants[idx[t]] / l);
                IntVec v = uinv_r * w;
                for (Eigen::Index j = 0; j < m; ++j)
                    v(j) = mod(v(j), expo);
                Ideal I = ideal_from_exponents(K, out.factor_base, v);
                std::optional<Element> gen = n == 1 ? std::optional<Element>(Element(I.hnf.col(0)))
                                                    : quadratic_generator(K, I);
                if (gen) {
                    add_relation(v);
                    added = true;
                    break;
                }
            }
            if (added)
                break;
        }
        if (!added)
            break;
        group = group_from(relation_matrix(), m);
    }

    out.relation_matrix = relation_matrix();
    out.class_map = group->class_map;
    out.invariants = group->invariants;
    for (auto const& d : group->invariants)
        if (d > 1)
            out.elementary_divisors.push_back(d);
    out.h = group->order;
    out.h_exp = out.elementary_divisors.empty() ? Integer(1) : out.elementary_divisors.back();
    return out;
}

std::optional<Element> is_principal(NumberField const& K, Ideal const& I, ClassGroupOptions const& opt)
{
    if (I.norm == 0)
        throw Error(ErrorKind::ZeroIdeal, "is_principal of the zero ideal");
    if (I.norm == 1)
        return elem_one(K);
    if (K.degree() == 1)
        return Element(I.hnf.col(0));
    if (finite_units(K))
        return quadratic_generator(K, I);
    if (auto g = search_generator(K, I, 8))
        return g;
    ClassGroupData cg = class_group(K, opt);
    if (auto v = factor_over_base(K, cg, I)) {
        for (auto const& c : class_of(cg, *v))
            if (c != 0)
                return std::nullopt;
    }
    // trivial class (or off the factor base with h = 1): keep searching
    if (cg.h == 1 || factor_over_base(K, cg, I)) {
        if (auto g = search_generator(K, I, 24))
            return g;
    }
    throw Error(ErrorKind::RelationSearchBudgetExceeded, "generator search exhausted its budget");
}

// -------------------------------------------------------------------------
// forms

bool QuadForm::operator<(QuadForm const& o) const
{
    if (a != o.a)
        return a < o.a;
    if (b != o.b)
        return b < o.b;
    return c < o.c;
}

QuadForm reduce_form(QuadForm f)
{
    Integer const D = f.b * f.b - 4 * f.a * f.c;
    auto normalize = [&](QuadForm& g) {
        // b into (-a, a]
        Integer two_a = 2 * g.a;
        Integer r = mod(g.b, two_a);
        if (r > g.a)
            r -= two_a;
        g.b = r;
        g.c = (g.b * g.b - D) / (4 * g.a);
    };
    normalize(f);
    while (f.a > f.c) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize(f);
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

QuadForm compose_forms(QuadForm const& f1, QuadForm const& f2)
{
    // Dirichlet composition via the solution of the usual congruences
    Integer const D = f1.b * f1.b - 4 * f1.a * f1.c;
    QuadForm f = f1, g = f2;
    if (f.a > g.a)
        std::swap(f, g);
    Integer s = (f.b + g.b) / 2;
    Integer nn = g.b - s;
    Integer u, v, d, y1;
    if (g.a % f.a == 0) {
        y1 = 0;
        d = f.a;
    } else {
        d = xgcd(g.a, f.a, u, v);
        y1 = u;
    }
    Integer x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        d1 = xgcd(s, d, x2, y2);
        y2 = -y2;
    }
    Integer v1 = f.a / d1, v2 = g.a / d1;
    Integer r = mod(y1 * y2 * nn - x2 * g.c, v1);
    QuadForm out;
    out.a = v1 * v2;
    out.b = g.b + 2 * v2 * r;
    out.c = (out.b * out.b - D) / (4 * out.a);
    return reduce_form(out);
}

FormClassGroup form_class_group_oracle(Integer const& D)
{
    if (D >= 0 || mod(D, Integer(4)) > 1)
        throw Error(ErrorKind::PreconditionViolation, "form oracle needs a negative discriminant D = 0, 1 mod 4");
    FormClassGroup out;
    Integer amax = isqrt(abs(D) / 3);
    for (Integer a = 1; a <= amax; ++a) {
        for (Integer b = -a + 1; b <= a; ++b) {
            if (mod(b - D, Integer(2)) != 0)
                continue;
            Integer num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            Integer c = num / (4 * a);
            if (c < a)
                continue;
            if (a == c && b < 0)
                continue;
            if (gcd(gcd(a, abs(b)), c) != 1)
                continue;
            out.reduced_forms.push_back({a, b, c});
        }
    }
    std::sort(out.reduced_forms.begin(), out.reduced_forms.end());
    out.h = Integer(out.reduced_forms.size());
    QuadForm const id = reduce_form({1, mod(D, Integer(2)), (mod(D, Integer(2)) - D) / 4});
    auto power = [&](QuadForm const& f, Integer e) {
        QuadForm result = id, base = f;
        while (e > 0) {
            if ((e & 1) != 0)
                result = compose_forms(result, base);
            e >>= 1;
            if (e > 0)
                base = compose_forms(base, base);
        }
        return result;
    };
    // l-primary parts from counts of elements killed by l^k
    std::vector<std::vector<Integer>> primary; // per prime, cyclic orders descending
    std::map<Integer, unsigned> const hf = out.h > 1 ? factor_integer(out.h) : std::map<Integer, unsigned>{};
    for (auto const& [l, e] : hf) {
        std::vector<Integer> counts{Integer(1)};
        Integer lk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            lk *= l;
            Integer cnt = 0;
            for (auto const& f : out.reduced_forms)
                if (power(f, lk) == id)
                    ++cnt;
            counts.push_back(cnt);
        }
        // r_k = number of cyclic factors of order >= l^k
        std::vector<unsigned> r(e + 2, 0);
        for (unsigned k = 1; k <= e; ++k) {
            Integer ratio = counts[k] / counts[k - 1];
            unsigned rk = 0;
            while (ratio > 1) {
                ratio /= l;
                ++rk;
            }
            r[k] = rk;
        }
        std::vector<Integer> cyc;
        for (unsigned k = e; k >= 1; --k)
            for (unsigned t = 0; t < r[k] - r[k + 1]; ++t)
                cyc.push_back(pow(l, k));
        primary.push_back(cyc);
    }
    // combine into invariant factors d_1 | d_2 | ...
    std::size_t width = 0;
    for (auto const& c : primary)
        width = std::max(width, c.size());
    std::vector<Integer> inv(width, Integer(1));
    for (auto const& c : primary)
        for (std::size_t i = 0; i < c.size(); ++i)
            inv[i] *= c[i];
    std::reverse(inv.begin(), inv.end());
    out.elementary_divisors = inv;
    out.h_exp = inv.empty() ? Integer(1) : inv.back();
    return out;
}

} // namespace qmc
