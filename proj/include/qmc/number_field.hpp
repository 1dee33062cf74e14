#ifndef QMC_NUMBER_FIELD_HPP
#define QMC_NUMBER_FIELD_HPP

#include <complex>
#include <optional>
#include <vector>

#include "qmc/arith.hpp"
#include "qmc/interval.hpp"
#include "qmc/linalg.hpp"
#include "qmc/poly.hpp"

namespace qmc {

/// Interval precision for real embeddings: starting bits and hard cap.
struct PrecisionConfig {
    unsigned initial_bits = 128;
    unsigned max_bits = 4096;
};

/// Default precision, honouring QMC_PRECISION_BITS when set.
PrecisionConfig default_precision();

/// Q[x]/(f) together with a verified basis of its maximal order.
///
/// Elements are coordinate vectors in the integral basis omega_0..omega_{n-1}.
/// `basis()` holds omega_i as row i in power-basis coordinates.
class NumberField {
public:
    static NumberField construct(IntPoly const& poly, std::optional<RatMat> const& basis = std::nullopt,
                                 PrecisionConfig precision = default_precision());

    IntPoly const& poly() const { return poly_; }
    int degree() const { return n_; }
    RatMat const& basis() const { return basis_; }
    RatMat const& basis_inverse() const { return basis_inv_; }
    Integer const& discriminant() const { return disc_; }
    Integer const& poly_discriminant() const { return poly_disc_; }
    /// [O_K : Z[theta]]
    Integer const& index() const { return index_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    bool totally_real() const { return r2_ == 0; }
    bool totally_imaginary() const { return r1_ == 0; }

    /// Matrices of multiplication by omega_i in the integral basis.
    std::vector<IntMat> const& mult_table() const { return mult_; }
    /// Tr(omega_i omega_j)
    IntMat const& trace_form() const { return trace_form_; }

    /// Isolating intervals of the real roots, ascending; real place i is theta -> root i.
    std::vector<Interval> const& real_roots() const { return real_roots_; }
    /// Floating approximations of all complex roots (reals first, ascending, then
    /// conjugate pairs). Only used to steer searches, never to decide anything.
    std::vector<std::complex<double>> const& approx_roots() const { return approx_roots_; }
    PrecisionConfig const& precision() const { return precision_; }

    bool same_field_data(NumberField const& other) const { return poly_ == other.poly_ && basis_ == other.basis_; }

private:
    IntPoly poly_;
    int n_ = 0;
    RatMat basis_, basis_inv_;
    Integer disc_, poly_disc_, index_;
    int r1_ = 0, r2_ = 0;
    std::vector<IntMat> mult_;
    IntMat trace_form_;
    std::vector<Interval> real_roots_;
    std::vector<std::complex<double>> approx_roots_;
    PrecisionConfig precision_;
};

// -------------------------------------------------------------------------
// elements

using Element = IntVec;
using RatElement = RatVec;

Element elem_from_int(NumberField const& K, Integer const& a);
Element elem_one(NumberField const& K);

template <class S>
Mat<S> mult_matrix(NumberField const& K, Vec<S> const& x)
{
    Eigen::Index const n = K.degree();
    Mat<S> m = Mat<S>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (x(i) != 0)
            m += x(i) * cast_matrix<S>(K.mult_table()[i]);
    return m;
}

template <class S>
Vec<S> elem_mul(NumberField const& K, Vec<S> const& a, Vec<S> const& b)
{
    Eigen::Index const n = K.degree();
    Vec<S> out = Vec<S>::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a(i) == 0)
            continue;
        IntMat const& m = K.mult_table()[i];
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                if (m(r, c) != 0 && b(c) != 0)
                    out(r) += a(i) * S(m(r, c)) * b(c);
    }
    return out;
}

Element elem_pow(NumberField const& K, Element const& a, unsigned long e);

Rational norm(NumberField const& K, RatElement const& x);
Integer norm(NumberField const& K, Element const& x);
Rational trace(NumberField const& K, RatElement const& x);
Integer trace(NumberField const& K, Element const& x);

/// Characteristic polynomial of multiplication by x (monic, integer for integral x).
IntPoly charpoly(NumberField const& K, Element const& x);

RatPoly to_power_basis(NumberField const& K, RatElement const& x);
RatElement from_power_basis(NumberField const& K, RatPoly const& v);
/// Integral coordinates; throws PreconditionViolation if the element is not integral.
Element integral_from_power_basis(NumberField const& K, RatPoly const& v);
Element theta(NumberField const& K);

RatElement to_rational(Element const& x);

/// Sign of sigma_i(x) at real place i, decided exactly (refining intervals as needed).
int real_sign(NumberField const& K, int place, RatElement const& x);

/// Enclosure of sigma_i(x) at the current precision.
Interval real_embedding_interval(NumberField const& K, int place, RatElement const& x);

/// Region |sigma_i(x) - center|^2 <= radius_sq at one real place.
struct EmbeddingBound {
    Rational center = 0;
    Rational radius_sq = 0;

    static EmbeddingBound from_interval(Rational const& lo, Rational const& hi);
};

/// All integral x with sigma_i(x) in the given region at every real place i.
/// K must be totally real; output is sorted by coordinates.
std::vector<Element> enumerate_bounded_integers(NumberField const& K, std::vector<EmbeddingBound> const& bounds);

// -------------------------------------------------------------------------
// ideals

/// Z-basis of an ideal as columns of an upper triangular HNF in the integral basis.
struct Ideal {
    IntMat hnf;
    Integer norm;

    bool operator==(Ideal const& o) const { return hnf == o.hnf; }
};

Ideal ideal_from_hnf(IntMat const& h);
Ideal principal_ideal(NumberField const& K, Element const& x);
Ideal rational_ideal(NumberField const& K, Integer const& a);
/// Ideal generated by `gens`; `multiple` must be a nonzero rational integer in the ideal.
Ideal ideal_from_generators(NumberField const& K, std::vector<Element> const& gens, Integer const& multiple);
Ideal ideal_product(NumberField const& K, Ideal const& a, Ideal const& b);
Ideal ideal_sum(NumberField const& K, Ideal const& a, Ideal const& b);
Ideal ideal_power(NumberField const& K, Ideal const& a, unsigned long e);
Ideal unit_ideal(NumberField const& K);
bool ideal_contains(Ideal const& a, Element const& x);
/// a is contained in b (b divides a).
bool ideal_subset(Ideal const& a, Ideal const& b);

// -------------------------------------------------------------------------
// primes

/// Residue field element: polynomial in the class of gamma, reduced modulo `modulus`.
using ResidueElem = FpPoly;

struct PrimeIdeal {
    Integer p;
    int e = 0;
    int f = 0;
    /// position among the primes above p in canonical (HNF lexicographic) order
    int index = 0;
    Ideal ideal;
    /// residue field F_p[t]/(modulus), t the image of gamma
    FpPoly modulus;
    Element gamma;
    /// integral coordinates -> gamma-power coordinates mod p
    IntMat to_gamma;
    /// a with a P contained in pO and a outside pO; multiplication by a/p lowers v_P by one
    Element anti_uniformizer;
    /// second generator: P = (p, pi)
    Element pi;

    Integer norm() const { return ideal.norm; }
};

/// All primes above p, canonical order. Throws IndexDivisorUnsupported when no
/// element gamma with p not dividing [O_K : Z[gamma]] is found.
std::vector<PrimeIdeal> factor_rational_prime(NumberField const& K, Integer const& p);

ResidueElem reduce(PrimeIdeal const& P, Element const& x);
ResidueElem residue_mul(PrimeIdeal const& P, ResidueElem const& a, ResidueElem const& b);
ResidueElem residue_add(PrimeIdeal const& P, ResidueElem const& a, ResidueElem const& b);
ResidueElem residue_sub(PrimeIdeal const& P, ResidueElem const& a, ResidueElem const& b);
ResidueElem residue_pow(PrimeIdeal const& P, ResidueElem const& a, Integer const& e);
ResidueElem residue_from_int(PrimeIdeal const& P, Integer const& a);

/// x in P, i.e. reduce(P, x) == 0.
bool divides(PrimeIdeal const& P, Element const& x);
int valuation(NumberField const& K, PrimeIdeal const& P, Element const& x);
/// x * (a/p)^v with v = v_P(x): integral, prime to P, and x times a P-adic square when v is even.
Element unit_part(NumberField const& K, PrimeIdeal const& P, Element const& x, int& v);
int ideal_valuation(NumberField const& K, Ideal const& I, PrimeIdeal const& P);

/// Rational primes dividing the norm of x (complete factorization or throw).
std::vector<PrimeIdeal> prime_divisors(NumberField const& K, Element const& x, FactorLimits const& limits = {});
/// Prime ideals dividing I, canonical order.
std::vector<PrimeIdeal> ideal_support(NumberField const& K, Ideal const& I, FactorLimits const& limits = {});

/// Canonical ordering: (p, index).
bool prime_less(PrimeIdeal const& a, PrimeIdeal const& b);
bool same_prime(PrimeIdeal const& a, PrimeIdeal const& b);

/// Human readable label: "p" if p has one prime above it, "(p,i)" otherwise.
std::string prime_label(PrimeIdeal const& P, std::size_t primes_above_p);

// -------------------------------------------------------------------------
// embeddings F -> k

struct EmbeddingIntoK {
    /// image of F's generator, integral coordinates in k
    Element image;
};

/// Verify exactly that the image is a root of F's polynomial in k.
EmbeddingIntoK make_embedding(NumberField const& F, NumberField const& k, RatPoly const& image_power_coords);
Element apply_embedding(NumberField const& F, NumberField const& k, EmbeddingIntoK const& tau, Element const& x);

/// The different as an ideal (trace dual of O_K, inverted).
Ideal different(NumberField const& K);

std::string elem_to_string(NumberField const& K, Element const& x);

} // namespace qmc

#endif // QMC_NUMBER_FIELD_HPP
