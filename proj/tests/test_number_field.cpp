#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qmc/number_field.hpp"
#include "qmc/errors.hpp"
#include "support.hpp"

using namespace qmc;
using testing::elem;
using testing::ipoly;

namespace {

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (Error const& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::ParseError;
}

} // namespace

TEST_CASE("construct: signature and discriminant")
{
    auto K = NumberField::construct(ipoly({1, 0, 1}));
    CHECK(K.r1() == 0);
    CHECK(K.r2() == 1);
    CHECK(K.discriminant() == -4);

    RatMat basis(2, 2);
    basis << Rational(1), Rational(0), Rational(1, 2), Rational(1, 2);
    auto F = NumberField::construct(ipoly({-5, 0, 1}), basis);
    CHECK(F.discriminant() == 5);
    CHECK(F.poly_discriminant() == 20);
    CHECK(F.index() == 2);
}

TEST_CASE("construct: rejections")
{
    CHECK(kind_of([] { NumberField::construct(ipoly({-4, 0, 1})); }) == ErrorKind::NotIrreducible);
    // Z[sqrt5] is not maximal at 2
    try {
        NumberField::construct(ipoly({-5, 0, 1}));
        FAIL("accepted a non-maximal power basis");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::BasisNotMaximal);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    // not closed under multiplication
    RatMat bad(2, 2);
    bad << Rational(1), Rational(0), Rational(0), Rational(1, 3);
    CHECK(kind_of([&] { NumberField::construct(ipoly({-5, 0, 1}), bad); }) == ErrorKind::BasisInconsistent);
}

TEST_CASE("factor_rational_prime: worked examples")
{
    auto Qi = testing::field("q_i");
    auto five = factor_rational_prime(Qi, Integer(5));
    REQUIRE(five.size() == 2);
    for (auto const& P : five) {
        CHECK(P.e == 1);
        CHECK(P.f == 1);
    }
    auto two = factor_rational_prime(Qi, Integer(2));
    REQUIRE(two.size() == 1);
    CHECK(two[0].e == 2);
    CHECK(two[0].f == 1);

    auto Q = testing::field("rationals");
    auto seven = factor_rational_prime(Q, Integer(7));
    REQUIRE(seven.size() == 1);
    CHECK(seven[0].e == 1);
    CHECK(seven[0].f == 1);
}

TEST_CASE("factor_rational_prime: product of P^e is (p)")
{
    for (auto name : {"q_sqrt_m5", "q_sqrt5", "q_zeta5", "q_sqrt5_cm61", "q_sqrt5_i"}) {
        auto K = testing::field(name);
        for (long p : {2, 3, 5, 7, 11, 13, 29, 31, 61}) {
            auto ps = factor_rational_prime(K, Integer(p));
            Ideal prod = unit_ideal(K);
            Integer norm_prod = 1;
            int sum = 0;
            for (auto const& P : ps) {
                prod = ideal_product(K, prod, ideal_power(K, P.ideal, static_cast<unsigned long>(P.e)));
                norm_prod *= pow(P.norm(), static_cast<unsigned long>(P.e));
                sum += P.e * P.f;
                CHECK(P.norm() == pow(Integer(p), static_cast<unsigned long>(P.f)));
            }
            CHECK(sum == K.degree());
            CHECK(norm_prod == pow(Integer(p), static_cast<unsigned long>(K.degree())));
            CHECK(prod == rational_ideal(K, Integer(p)));
            // pairwise coprime
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j)
                    CHECK(ideal_sum(K, ps[i].ideal, ps[j].ideal) == unit_ideal(K));
        }
    }
}

TEST_CASE("reduction is a ring homomorphism")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-50, 50);
    for (auto name : {"q_sqrt5_cm61", "q_zeta5", "q_sqrt_m23"}) {
        auto K = testing::field(name);
        for (long p : {2, 3, 7, 11}) {
            for (auto const& P : factor_rational_prime(K, Integer(p))) {
                for (int t = 0; t < 20; ++t) {
                    Element x(K.degree()), y(K.degree());
                    for (int i = 0; i < K.degree(); ++i) {
                        x(i) = coef(rng);
                        y(i) = coef(rng);
                    }
                    CHECK(reduce(P, elem_mul(K, x, y)) == residue_mul(P, reduce(P, x), reduce(P, y)));
                    CHECK(reduce(P, Element(x + y)) == residue_add(P, reduce(P, x), reduce(P, y)));
                }
            }
        }
    }
}

TEST_CASE("norms")
{
    auto Qi = testing::field("q_i");
    CHECK(norm(Qi, elem({2, 1})) == 5);
    CHECK(norm(Qi, elem({0, 0})) == 0);
    auto F = testing::field("q_sqrt5");
    CHECK(norm(F, elem({0, 1})) == -1);
    CHECK(trace(F, elem({0, 1})) == 1);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-30, 30);
    auto K = testing::field("q_sqrt5_cm61");
    for (int t = 0; t < 50; ++t) {
        Element x(4), y(4);
        for (int i = 0; i < 4; ++i) {
            x(i) = coef(rng);
            y(i) = coef(rng);
        }
        CHECK(norm(K, elem_mul(K, x, y)) == norm(K, x) * norm(K, y));
    }
}

TEST_CASE("ideal_valuation")
{
    auto Qi = testing::field("q_i");
    auto five = factor_rational_prime(Qi, Integer(5));
    // (2+i) is one of the two primes above 5
    int hits = 0;
    for (auto const& P : five) {
        CHECK(ideal_valuation(Qi, rational_ideal(Qi, Integer(5)), P) == 1);
        hits += ideal_valuation(Qi, principal_ideal(Qi, elem({2, 1})), P);
    }
    CHECK(hits == 1);
    auto two = factor_rational_prime(Qi, Integer(2));
    CHECK(ideal_valuation(Qi, rational_ideal(Qi, Integer(4)), two[0]) == 4);
    CHECK(ideal_valuation(Qi, rational_ideal(Qi, Integer(3)), two[0]) == 0);
    CHECK(kind_of([&] { ideal_valuation(Qi, principal_ideal(Qi, elem({0, 0})), two[0]); }) == ErrorKind::ZeroIdeal);
}

TEST_CASE("enumerate_bounded_integers: worked examples")
{
    auto Q = testing::field("rationals");
    auto xs = enumerate_bounded_integers(Q, {EmbeddingBound::from_interval(Rational(-447, 100), Rational(447, 100))});
    REQUIRE(xs.size() == 9);
    for (int i = 0; i < 9; ++i)
        CHECK(xs[static_cast<std::size_t>(i)](0) == i - 4);
    CHECK(enumerate_bounded_integers(Q, {EmbeddingBound::from_interval(Rational(1, 10), Rational(9, 10))}).empty());
}

namespace {

// naive scan of a coordinate box twice as large as needed, deciding with
// long doubles away from the boundary
std::vector<Element> naive_box(NumberField const& K, std::vector<long double> const& roots, long double r)
{
    int const n = K.degree();
    // sigma_j(omega_i)
    std::vector<std::vector<long double>> M(static_cast<std::size_t>(n), std::vector<long double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long double v = 0, pw = 1;
            for (int k = 0; k < n; ++k) {
                v += K.basis()(i, k).convert_to<long double>() * pw;
                pw *= roots[static_cast<std::size_t>(j)];
            }
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        }
    // sum_j sigma_j(x)^2 = c^T T c >= lambda_min |c|^2 < n r^2
    Eigen::MatrixXd T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            T(i, j) = K.trace_form()(i, j).convert_to<double>();
    double const lam = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T).eigenvalues().minCoeff();
    REQUIRE(lam > 0);
    long const box = 2 * static_cast<long>(std::sqrt(n * static_cast<double>(r * r) / lam)) + 2;
    std::vector<Element> out;
    std::vector<long> c(static_cast<std::size_t>(n), -box);
    for (;;) {
        bool inside = true;
        for (int j = 0; j < n && inside; ++j) {
            long double v = 0;
            for (int i = 0; i < n; ++i)
                v += c[static_cast<std::size_t>(i)] * M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            REQUIRE(std::fabs(std::fabs(v) - r) > 1e-9L);
            inside = std::fabs(v) < r;
        }
        if (inside) {
            Element x(n);
            for (int i = 0; i < n; ++i)
                x(i) = c[static_cast<std::size_t>(i)];
            out.push_back(x);
        }
        int k = 0;
        while (k < n && c[static_cast<std::size_t>(k)] == box)
            c[static_cast<std::size_t>(k++)] = -box;
        if (k == n)
            break;
        ++c[static_cast<std::size_t>(k)];
    }
    return out;
}

bool coord_less(Element const& a, Element const& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i))
            return a(i) < b(i);
    return false;
}

} // namespace

TEST_CASE("enumerate_bounded_integers agrees with a naive box scan")
{
    struct Case {
        char const* name;
        qmc::IntPoly poly;
    };
    // Q, Q(sqrt5), Q(zeta7)^+ (cubic, disc 49)
    std::vector<Case> cases{{"Q", ipoly({0, 1})}, {"Q(sqrt5)", ipoly({-1, -1, 1})}, {"cubic", ipoly({1, -2, -1, 1})}};
    for (auto const& cs : cases) {
        auto K = NumberField::construct(cs.poly);
        std::vector<long double> roots;
        for (auto const& z : K.approx_roots())
            roots.push_back(z.real());
        for (long double r : {1.5L, 2.5L, 4.3L, 7.7L, 9.9L}) {
            Rational const rr(static_cast<long>(r * 10), 10);
            std::vector<EmbeddingBound> b(static_cast<std::size_t>(K.degree()), EmbeddingBound::from_interval(-rr, rr));
            auto got = enumerate_bounded_integers(K, b);
            auto want = naive_box(K, roots, r);
            std::sort(got.begin(), got.end(), coord_less);
            std::sort(want.begin(), want.end(), coord_less);
            INFO(cs.name, " radius ", static_cast<double>(r));
            CHECK(got == want);
        }
    }
}
