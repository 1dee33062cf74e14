#include "qmc/number_field.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include <Eigen/Eigenvalues>

#include "qmc/errors.hpp"

namespace qmc {

PrecisionConfig default_precision()
{
    PrecisionConfig cfg;
    if (char const* env = std::getenv("QMC_PRECISION_BITS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 16)
            cfg.initial_bits = static_cast<unsigned>(std::min<unsigned long>(v, cfg.max_bits));
    }
    return cfg;
}

namespace {

RatPoly poly_mulmod(RatPoly const& a, RatPoly const& b, RatPoly const& f)
{
    RatPoly q, r;
    poly_divmod(poly_mul(a, b), f, q, r);
    return r;
}

RatVec poly_to_vec(RatPoly const& p, int n)
{
    RatVec v = RatVec::Zero(n);
    for (std::size_t i = 0; i < p.size() && static_cast<int>(i) < n; ++i)
        v(i) = p[i];
    return v;
}

RatPoly vec_to_poly(RatVec const& v)
{
    RatPoly p(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        p[i] = v(i);
    trim(p);
    return p;
}

// Faddeev-LeVerrier; exact for integer matrices
IntPoly charpoly_matrix(IntMat const& a)
{
    Eigen::Index const n = a.rows();
    IntPoly c(n + 1);
    c[n] = 1;
    IntMat m = IntMat::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m;
        for (Eigen::Index i = 0; i < n; ++i)
            m(i, i) += c[n - k + 1];
        IntMat am = a * m;
        Integer tr = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = -tr / Integer(static_cast<long>(k));
    }
    return c;
}

// Dedekind's criterion: Z[x]/(f) is p-maximal
bool dedekind_criterion(IntPoly const& f, Integer const& p)
{
    auto fac = fp_factor(fp_reduce(f, p), p);
    FpPoly g{Integer(1)}, h{Integer(1)};
    for (auto const& [gi, ei] : fac) {
        g = fp_mul(g, gi, p);
        for (unsigned k = 1; k < ei; ++k)
            h = fp_mul(h, gi, p);
    }
    IntPoly big = poly_sub(f, poly_mul(IntPoly(g), IntPoly(h)));
    for (auto& c : big)
        c /= p;
    FpPoly F = fp_reduce(big, p);
    FpPoly u = fp_gcd(g, h, p);
    if (F.empty())
        return degree(u) == 0;
    return degree(fp_gcd(F, u, p)) == 0;
}

// gamma-power matrix: columns are coordinates of gamma^0..gamma^(n-1)
IntMat gamma_powers(NumberField const& K, Element const& gamma)
{
    int const n = K.degree();
    IntMat g(n, n);
    Element cur = elem_one(K);
    for (int k = 0; k < n; ++k) {
        g.col(k) = cur;
        cur = elem_mul(K, cur, gamma);
    }
    return g;
}

std::vector<Element> gamma_candidates(NumberField const& K)
{
    int const n = K.degree();
    std::vector<Element> out;
    out.push_back(theta(K));
    for (int i = 1; i < n; ++i) {
        Element e = Element::Zero(n);
        e(i) = 1;
        out.push_back(e);
    }
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int s : {1, -1, 2, -2}) {
                Element e = Element::Zero(n);
                e(i) = 1;
                e(j) = s;
                out.push_back(e);
            }
    std::mt19937_64 rng(0x9a33a);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int t = 0; t < 200; ++t) {
        Element e = Element::Zero(n);
        for (int i = 1; i < n; ++i)
            e(i) = dist(rng);
        out.push_back(e);
    }
    return out;
}

// An element gamma with p coprime to [O : Z[gamma]], and optionally satisfying Dedekind at p.
std::optional<Element> find_gamma(NumberField const& K, Integer const& p, bool need_dedekind)
{
    for (Element const& gamma : gamma_candidates(K)) {
        IntPoly m = charpoly(K, gamma);
        if (!is_squarefree(m))
            continue;
        Integer idx = determinant(gamma_powers(K, gamma));
        if (idx % p == 0)
            continue;
        if (need_dedekind && !dedekind_criterion(m, p))
            continue;
        return gamma;
    }
    return std::nullopt;
}

// basis of the kernel of a mod p, as columns with entries in [0, p)
IntMat kernel_mod_p(IntMat a, Integer const& p)
{
    Eigen::Index const rows = a.rows(), cols = a.cols();
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            a(i, j) = mod(a(i, j), p);
    std::vector<Eigen::Index> pivot_col;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = r;
        while (piv < rows && a(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        a.row(r).swap(a.row(piv));
        Integer inv = invmod(a(r, c), p);
        for (Eigen::Index j = 0; j < cols; ++j)
            a(r, j) = a(r, j) * inv % p;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0)
                continue;
            Integer factor = a(i, c);
            for (Eigen::Index j = 0; j < cols; ++j)
                a(i, j) = mod(a(i, j) - factor * a(r, j), p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index c = 0, k = 0; c < cols; ++c) {
        if (k < static_cast<Eigen::Index>(pivot_col.size()) && pivot_col[k] == c)
            ++k;
        else
            free_cols.push_back(c);
    }
    IntMat ker = IntMat::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        ker(free_cols[t], t) = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            ker(pivot_col[k], t) = mod(-a(k, free_cols[t]), p);
    }
    return ker;
}

} // namespace

NumberField NumberField::construct(IntPoly const& poly_in, std::optional<RatMat> const& basis, PrecisionConfig precision)
{
    NumberField K;
    K.poly_ = poly_in;
    trim(K.poly_);
    K.n_ = qmc::degree(K.poly_);
    K.precision_ = precision;
    int const n = K.n_;
    if (n < 1 || K.poly_.back() != 1)
        throw Error(ErrorKind::PreconditionViolation, "defining polynomial must be monic of positive degree");
    if (!is_irreducible(K.poly_))
        throw Error(ErrorKind::NotIrreducible, poly_to_string(K.poly_) + " is reducible over Q");

    K.basis_ = basis ? *basis : RatMat(RatMat::Identity(n, n));
    if (K.basis_.rows() != n || K.basis_.cols() != n)
        throw Error(ErrorKind::BasisInconsistent, "basis must be a square matrix matching the degree");
    Rational det_w = determinant(K.basis_);
    if (det_w == 0)
        throw Error(ErrorKind::BasisInconsistent, "basis vectors are linearly dependent");
    K.basis_inv_ = inverse(K.basis_);

    RatPoly const f = to_rat(K.poly_);
    // multiplication table; closure under products proves the lattice is an order
    auto coords = [&](RatPoly const& v) -> RatVec { return K.basis_inv_.transpose() * poly_to_vec(v, n); };
    K.mult_.assign(n, IntMat::Zero(n, n));
    std::vector<RatPoly> omega(n);
    for (int i = 0; i < n; ++i)
        omega[i] = vec_to_poly(K.basis_.row(i).transpose());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatVec c = coords(poly_mulmod(omega[i], omega[j], f));
            for (int r = 0; r < n; ++r) {
                if (!is_integral(c(r)))
                    throw Error(ErrorKind::BasisInconsistent,
                                "basis is not closed under multiplication (product " + std::to_string(i) + "*"
                                    + std::to_string(j) + ")");
                K.mult_[i](r, j) = numer(c(r));
            }
        }
    for (RatPoly const& probe : {RatPoly{Rational(1)}, RatPoly{Rational(0), Rational(1)}}) {
        RatVec c = coords(probe);
        for (int r = 0; r < n; ++r)
            if (!is_integral(c(r)))
                throw Error(ErrorKind::BasisInconsistent, "basis does not contain Z[theta]");
    }
    Rational idx = Rational(1) / abs(det_w);
    if (!is_integral(idx))
        throw Error(ErrorKind::BasisInconsistent, "index of Z[theta] in the basis is not an integer");
    K.index_ = numer(idx);
    K.poly_disc_ = qmc::discriminant(K.poly_);

    K.trace_form_ = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Element prod = K.mult_[i].col(j);
            K.trace_form_(i, j) = trace(K, prod);
        }
    K.disc_ = determinant(K.trace_form_);
    if (K.disc_ * K.index_ * K.index_ != K.poly_disc_)
        throw Error(ErrorKind::BasisInconsistent, "discriminant of the basis is inconsistent with the index");

    // maximality at every p with p^2 | disc
    if (n > 1) {
        for (auto const& [p, e] : factor_integer(K.disc_)) {
            if (e < 2)
                continue;
            bool ok = false;
            if (!basis)
                ok = dedekind_criterion(K.poly_, p);
            else
                ok = find_gamma(K, p, true).has_value();
            if (!ok)
                throw Error(ErrorKind::BasisNotMaximal,
                            "order is not proven maximal at p = " + to_string(p)
                                + (basis ? "" : " (Dedekind criterion fails; supply an integral basis)"));
        }
    }

    K.r1_ = count_real_roots(K.poly_);
    K.r2_ = (n - K.r1_) / 2;
    for (Interval const& iv : isolate_real_roots(K.poly_))
        K.real_roots_.push_back(refine_root(K.poly_, iv, precision.initial_bits));

    // floating roots, only used to steer enumeration
    if (n == 1) {
        K.approx_roots_.emplace_back(-K.poly_[0].convert_to<double>(), 0.0);
    } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i)
            comp(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i)
            comp(i, n - 1) = -K.poly_[i].convert_to<double>();
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
        for (auto& z : roots) {
            for (int it = 0; it < 4; ++it) {
                std::complex<double> v = 0, d = 0;
                for (int i = n; i >= 0; --i) {
                    d = d * z + v;
                    v = v * z + K.poly_[i].convert_to<double>();
                }
                if (std::abs(d) > 0)
                    z -= v / d;
            }
        }
        std::vector<std::complex<double>> reals, upper;
        std::sort(roots.begin(), roots.end(),
                  [](auto const& a, auto const& b) { return std::abs(a.imag()) < std::abs(b.imag()); });
        for (int i = 0; i < n; ++i) {
            if (i < K.r1_)
                reals.emplace_back(roots[i].real(), 0.0);
            else if (roots[i].imag() > 0)
                upper.push_back(roots[i]);
        }
        std::sort(reals.begin(), reals.end(), [](auto const& a, auto const& b) { return a.real() < b.real(); });
        std::sort(upper.begin(), upper.end(), [](auto const& a, auto const& b) { return a.real() < b.real(); });
        K.approx_roots_ = reals;
        for (auto const& z : upper) {
            K.approx_roots_.push_back(z);
            K.approx_roots_.push_back(std::conj(z));
        }
    }
    return K;
}

// -------------------------------------------------------------------------

Element elem_from_int(NumberField const& K, Integer const& a)
{
    // 1 is sum of basis elements with the coordinates of the constant polynomial
    RatVec c = K.basis_inverse().transpose() * poly_to_vec(RatPoly{Rational(1)}, K.degree());
    Element out(K.degree());
    for (int i = 0; i < K.degree(); ++i)
        out(i) = numer(c(i)) * a;
    return out;
}

Element elem_one(NumberField const& K) { return elem_from_int(K, 1); }

Element theta(NumberField const& K)
{
    if (K.degree() == 1)
        return elem_from_int(K, -K.poly()[0]);
    return integral_from_power_basis(K, RatPoly{Rational(0), Rational(1)});
}

Element elem_pow(NumberField const& K, Element const& a, unsigned long e)
{
    Element result = elem_one(K), base = a;
    while (e > 0) {
        if (e & 1)
            result = elem_mul(K, result, base);
        e >>= 1;
        if (e)
            base = elem_mul(K, base, base);
    }
    return result;
}

Rational norm(NumberField const& K, RatElement const& x) { return determinant(mult_matrix(K, x)); }

Integer norm(NumberField const& K, Element const& x) { return determinant(mult_matrix(K, x)); }

Rational trace(NumberField const& K, RatElement const& x) { return mult_matrix(K, x).trace(); }

Integer trace(NumberField const& K, Element const& x)
{
    IntMat m = mult_matrix(K, x);
    Integer t = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        t += m(i, i);
    return t;
}

IntPoly charpoly(NumberField const& K, Element const& x) { return charpoly_matrix(mult_matrix(K, x)); }

RatPoly to_power_basis(NumberField const& K, RatElement const& x)
{
    return vec_to_poly(K.basis().transpose() * x);
}

RatElement from_power_basis(NumberField const& K, RatPoly const& v)
{
    RatPoly q, r;
    poly_divmod(v, to_rat(K.poly()), q, r);
    return K.basis_inverse().transpose() * poly_to_vec(r, K.degree());
}

Element integral_from_power_basis(NumberField const& K, RatPoly const& v)
{
    RatElement c = from_power_basis(K, v);
    Element out(K.degree());
    for (int i = 0; i < K.degree(); ++i) {
        if (!is_integral(c(i)))
            throw Error(ErrorKind::PreconditionViolation, "element is not integral");
        out(i) = numer(c(i));
    }
    return out;
}

RatElement to_rational(Element const& x) { return cast_vector<Rational>(x); }

Interval real_embedding_interval(NumberField const& K, int place, RatElement const& x)
{
    return eval_interval(to_power_basis(K, x), K.real_roots().at(place));
}

int real_sign(NumberField const& K, int place, RatElement const& x)
{
    if (x.isZero())
        return 0;
    RatPoly v = to_power_basis(K, x);
    Interval root = K.real_roots().at(place);
    unsigned bits = K.precision().initial_bits;
    for (;;) {
        Interval val = eval_interval(v, root);
        if (val.lo > 0)
            return 1;
        if (val.hi < 0)
            return -1;
        if (root.lo == root.hi)
            return val.lo == 0 ? 0 : (val.lo > 0 ? 1 : -1); // exact point evaluation
        bits *= 2;
        if (bits > K.precision().max_bits)
            throw Error(ErrorKind::PrecisionExhausted,
                        "cannot separate an embedding value from zero at " + std::to_string(K.precision().max_bits)
                            + " bits");
        root = refine_root(K.poly(), root, bits);
    }
}

EmbeddingBound EmbeddingBound::from_interval(Rational const& lo, Rational const& hi)
{
    EmbeddingBound b;
    b.center = (lo + hi) / 2;
    Rational half = (hi - lo) / 2;
    b.radius_sq = half < 0 ? Rational(-1) : half * half;
    return b;
}

std::vector<Element> enumerate_bounded_integers(NumberField const& K, std::vector<EmbeddingBound> const& bounds)
{
    int const n = K.degree();
    if (!K.totally_real())
        throw Error(ErrorKind::PreconditionViolation, "enumerate_bounded_integers needs a totally real field");
    if (static_cast<int>(bounds.size()) != n)
        throw Error(ErrorKind::PreconditionViolation, "one bound per real place is required");
    for (auto const& b : bounds)
        if (b.radius_sq < 0)
            return {};

    // c_j = Tr(x delta_j) = sum_i sigma_i(x) sigma_i(delta_j), delta the trace-dual basis
    RatMat dual = inverse(cast_matrix<Rational>(K.trace_form()));
    std::vector<Interval> place_range(n);
    for (int i = 0; i < n; ++i) {
        Rational r = sqrt_upper(bounds[i].radius_sq);
        place_range[i] = Interval(bounds[i].center - r, bounds[i].center + r);
    }
    std::vector<Integer> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        RatElement delta = dual.row(j).transpose();
        Interval acc(Rational(0));
        for (int i = 0; i < n; ++i)
            acc = acc + place_range[i] * real_embedding_interval(K, i, delta);
        lo[j] = ceil(acc.lo);
        hi[j] = floor(acc.hi);
        if (lo[j] > hi[j])
            return {};
    }

    auto inside = [&](Element const& x) {
        RatElement xr = to_rational(x);
        RatPoly v = to_power_basis(K, xr);
        for (int i = 0; i < n; ++i) {
            Interval val = eval_interval(v, K.real_roots()[i]) - Interval(bounds[i].center);
            Rational a = val.lo * val.lo, b = val.hi * val.hi;
            Interval sq = val.contains_zero() ? Interval(Rational(0), std::max(a, b))
                                              : Interval(std::min(a, b), std::max(a, b));
            if (sq.hi <= bounds[i].radius_sq)
                continue;
            if (sq.lo > bounds[i].radius_sq)
                return false;
            // undecided by intervals: exact sign of radius_sq - (x - c)^2
            RatElement t = xr - bounds[i].center * to_rational(elem_one(K));
            RatElement y = bounds[i].radius_sq * to_rational(elem_one(K)) - elem_mul(K, t, t);
            if (real_sign(K, i, y) < 0)
                return false;
        }
        return true;
    };

    std::vector<Element> out;
    Element x(n);
    for (int j = 0; j < n; ++j)
        x(j) = lo[j];
    for (;;) {
        if (inside(x))
            out.push_back(x);
        int j = n - 1;
        while (j >= 0 && x(j) == hi[j]) {
            x(j) = lo[j];
            --j;
        }
        if (j < 0)
            break;
        x(j) += 1;
    }
    return out;
}

// -------------------------------------------------------------------------
// ideals

Ideal ideal_from_hnf(IntMat const& h)
{
    Ideal out;
    out.hnf = h;
    out.norm = 1;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        out.norm *= h(i, i);
    return out;
}

Ideal ideal_from_generators(NumberField const& K, std::vector<Element> const& gens, Integer const& multiple)
{
    int const n = K.degree();
    if (multiple == 0)
        throw Error(ErrorKind::ZeroIdeal, "ideal_from_generators needs a nonzero multiple");
    IntMat cols(n, static_cast<Eigen::Index>(gens.size()) * n);
    for (std::size_t g = 0; g < gens.size(); ++g)
        cols.middleCols(static_cast<Eigen::Index>(g) * n, n) = mult_matrix(K, gens[g]);
    return ideal_from_hnf(hnf_mod(cols, abs(multiple)));
}

Ideal principal_ideal(NumberField const& K, Element const& x)
{
    Integer N = norm(K, x);
    if (N == 0)
        throw Error(ErrorKind::ZeroIdeal, "principal ideal of zero");
    return ideal_from_hnf(hnf_mod(mult_matrix(K, x), abs(N)));
}

Ideal rational_ideal(NumberField const& K, Integer const& a)
{
    if (a == 0)
        throw Error(ErrorKind::ZeroIdeal, "rational ideal of zero");
    return ideal_from_hnf(IntMat(IntMat::Identity(K.degree(), K.degree()) * abs(a)));
}

Ideal unit_ideal(NumberField const& K) { return rational_ideal(K, 1); }

Ideal ideal_product(NumberField const& K, Ideal const& a, Ideal const& b)
{
    int const n = K.degree();
    IntMat cols(n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cols.col(i * n + j) = elem_mul(K, Element(a.hnf.col(i)), Element(b.hnf.col(j)));
    return ideal_from_hnf(hnf_mod(cols, a.norm * b.norm));
}

Ideal ideal_sum(NumberField const& K, Ideal const& a, Ideal const& b)
{
    int const n = K.degree();
    IntMat cols(n, 2 * n);
    cols << a.hnf, b.hnf;
    return ideal_from_hnf(hnf_mod(cols, gcd(a.norm, b.norm)));
}

Ideal ideal_power(NumberField const& K, Ideal const& a, unsigned long e)
{
    Ideal result = unit_ideal(K), base = a;
    while (e > 0) {
        if (e & 1)
            result = ideal_product(K, result, base);
        e >>= 1;
        if (e)
            base = ideal_product(K, base, base);
    }
    return result;
}

bool ideal_contains(Ideal const& a, Element const& x)
{
    IntVec coords;
    return solve_upper_integral(a.hnf, x, coords);
}

bool ideal_subset(Ideal const& a, Ideal const& b)
{
    for (Eigen::Index j = 0; j < a.hnf.cols(); ++j)
        if (!ideal_contains(b, a.hnf.col(j)))
            return false;
    return true;
}

// -------------------------------------------------------------------------
// primes

std::vector<PrimeIdeal> factor_rational_prime(NumberField const& K, Integer const& p)
{
    if (!is_probable_prime(p))
        throw Error(ErrorKind::PreconditionViolation, to_string(p) + " is not prime");
    int const n = K.degree();
    std::optional<Element> gamma = find_gamma(K, p, false);
    if (!gamma)
        throw Error(ErrorKind::IndexDivisorUnsupported,
                    "p = " + to_string(p) + " divides [O_K : Z[gamma]] for every gamma tried");
    IntPoly m = charpoly(K, *gamma);
    IntMat g = gamma_powers(K, *gamma);
    RatMat ginv = inverse(cast_matrix<Rational>(g));
    IntMat to_gamma(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            to_gamma(i, j) = mod(numer(ginv(i, j)) * invmod(denom(ginv(i, j)), p), p);

    std::vector<PrimeIdeal> out;
    for (auto const& [gi, ei] : fp_factor(fp_reduce(m, p), p)) {
        PrimeIdeal P;
        P.p = p;
        P.e = static_cast<int>(ei);
        P.f = degree(gi);
        P.modulus = gi;
        P.gamma = *gamma;
        P.to_gamma = to_gamma;
        Element pi = Element::Zero(n);
        for (std::size_t k = gi.size(); k-- > 0;)
            pi = elem_mul(K, pi, *gamma) + gi[k] * elem_one(K);
        P.pi = pi;
        P.ideal = ideal_from_generators(K, {elem_from_int(K, p), pi}, p);
        if (P.ideal.norm != pow(p, P.f))
            throw Error(ErrorKind::PreconditionViolation, "prime ideal norm mismatch above " + to_string(p));
        IntMat ker = kernel_mod_p(mult_matrix(K, pi), p);
        if (ker.cols() == 0)
            throw Error(ErrorKind::PreconditionViolation, "no anti-uniformizer above " + to_string(p));
        P.anti_uniformizer = ker.col(0);
        out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(),
              [](PrimeIdeal const& a, PrimeIdeal const& b) { return compare_lex(a.ideal.hnf, b.ideal.hnf) < 0; });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].index = static_cast<int>(i);
    return out;
}

ResidueElem reduce(PrimeIdeal const& P, Element const& x)
{
    IntVec c = P.to_gamma * x;
    FpPoly v(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i)
        v[i] = mod(c(i), P.p);
    trim(v);
    return fp_rem(v, P.modulus, P.p);
}

ResidueElem residue_mul(PrimeIdeal const& P, ResidueElem const& a, ResidueElem const& b)
{
    return fp_rem(fp_mul(a, b, P.p), P.modulus, P.p);
}

ResidueElem residue_add(PrimeIdeal const& P, ResidueElem const& a, ResidueElem const& b) { return fp_add(a, b, P.p); }

ResidueElem residue_sub(PrimeIdeal const& P, ResidueElem const& a, ResidueElem const& b) { return fp_sub(a, b, P.p); }

ResidueElem residue_pow(PrimeIdeal const& P, ResidueElem const& a, Integer const& e)
{
    return fp_powmod(a, e, P.modulus, P.p);
}

ResidueElem residue_from_int(PrimeIdeal const& P, Integer const& a)
{
    FpPoly v{mod(a, P.p)};
    trim(v);
    return v;
}

bool divides(PrimeIdeal const& P, Element const& x) { return reduce(P, x).empty(); }

Element unit_part(NumberField const& K, PrimeIdeal const& P, Element const& x_in, int& v)
{
    if (x_in.isZero())
        throw Error(ErrorKind::ZeroInput, "valuation of zero");
    Element x = x_in;
    v = 0;
    while (divides(P, x)) {
        x = elem_mul(K, x, P.anti_uniformizer);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            Integer q, r;
            boost::multiprecision::divide_qr(x(i), P.p, q, r);
            if (r != 0)
                throw Error(ErrorKind::PreconditionViolation, "anti-uniformizer step left the order");
            x(i) = q;
        }
        ++v;
    }
    return x;
}

int valuation(NumberField const& K, PrimeIdeal const& P, Element const& x)
{
    int v = 0;
    unit_part(K, P, x, v);
    return v;
}

int ideal_valuation(NumberField const& K, Ideal const& I, PrimeIdeal const& P)
{
    if (I.norm == 0 || I.hnf.size() == 0)
        throw Error(ErrorKind::ZeroIdeal, "valuation of the zero ideal");
    int best = -1;
    for (Eigen::Index j = 0; j < I.hnf.cols(); ++j) {
        int v = valuation(K, P, I.hnf.col(j));
        if (best < 0 || v < best)
            best = v;
        if (best == 0)
            break;
    }
    return best;
}

std::vector<PrimeIdeal> prime_divisors(NumberField const& K, Element const& x, FactorLimits const& limits)
{
    Integer N = norm(K, x);
    if (N == 0)
        throw Error(ErrorKind::ZeroInput, "prime divisors of zero");
    std::vector<PrimeIdeal> out;
    for (auto const& [p, e] : factor_integer(N, limits))
        for (auto& P : factor_rational_prime(K, p))
            if (divides(P, x))
                out.push_back(std::move(P));
    return out;
}

std::vector<PrimeIdeal> ideal_support(NumberField const& K, Ideal const& I, FactorLimits const& limits)
{
    std::vector<PrimeIdeal> out;
    for (auto const& [p, e] : factor_integer(I.norm, limits))
        for (auto& P : factor_rational_prime(K, p))
            if (ideal_subset(I, P.ideal))
                out.push_back(std::move(P));
    return out;
}

bool prime_less(PrimeIdeal const& a, PrimeIdeal const& b)
{
    if (a.p != b.p)
        return a.p < b.p;
    return a.index < b.index;
}

bool same_prime(PrimeIdeal const& a, PrimeIdeal const& b) { return a.p == b.p && a.index == b.index; }

std::string prime_label(PrimeIdeal const& P, std::size_t primes_above_p)
{
    if (primes_above_p <= 1)
        return to_string(P.p);
    return "(" + to_string(P.p) + "," + std::to_string(P.index) + ")";
}

// -------------------------------------------------------------------------

EmbeddingIntoK make_embedding(NumberField const& F, NumberField const& k, RatPoly const& image_power_coords)
{
    Element image = integral_from_power_basis(k, image_power_coords);
    Element acc = Element::Zero(k.degree());
    IntPoly const& f = F.poly();
    for (std::size_t i = f.size(); i-- > 0;)
        acc = elem_mul(k, acc, image) + f[i] * elem_one(k);
    if (!acc.isZero())
        throw Error(ErrorKind::PreconditionViolation, "embedding image is not a root of " + poly_to_string(f));
    return EmbeddingIntoK{image};
}

Element apply_embedding(NumberField const& F, NumberField const& k, EmbeddingIntoK const& tau, Element const& x)
{
    RatPoly v = to_power_basis(F, to_rational(x));
    RatElement img = to_rational(tau.image);
    RatElement acc = RatElement::Zero(k.degree());
    RatElement one = to_rational(elem_one(k));
    for (std::size_t i = v.size(); i-- > 0;)
        acc = elem_mul(k, acc, img) + v[i] * one;
    Element out(k.degree());
    for (int i = 0; i < k.degree(); ++i) {
        if (!is_integral(acc(i)))
            throw Error(ErrorKind::PreconditionViolation, "embedded element is not integral");
        out(i) = numer(acc(i));
    }
    return out;
}

Ideal different(NumberField const& K)
{
    int const n = K.degree();
    RatMat dual = inverse(cast_matrix<Rational>(K.trace_form()));
    // x in D iff x delta_j in O for every j
    RatMat stacked(n * n, n);
    for (int j = 0; j < n; ++j)
        stacked.middleRows(j * n, n) = mult_matrix(K, RatVec(dual.row(j).transpose()));
    Integer den = 1;
    for (Eigen::Index i = 0; i < stacked.rows(); ++i)
        for (Eigen::Index j = 0; j < stacked.cols(); ++j)
            den = lcm(den, denom(stacked(i, j)));
    IntMat big(n * n, n + n * n);
    for (Eigen::Index i = 0; i < stacked.rows(); ++i) {
        for (int j = 0; j < n; ++j)
            big(i, j) = numer(stacked(i, j) * Rational(den));
        for (int j = 0; j < n * n; ++j)
            big(i, n + j) = (i == j) ? den : Integer(0);
    }
    IntMat ker = integer_kernel(big);
    return ideal_from_hnf(hnf_mod(ker.topRows(n), abs(K.discriminant())));
}

std::string elem_to_string(NumberField const& K, Element const& x)
{
    if (K.degree() == 1)
        return to_string(x(0));
    std::string out = "[";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (i)
            out += ",";
        out += to_string(x(i));
    }
    return out + "]";
}

} // namespace qmc
