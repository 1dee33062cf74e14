#include <doctest.h>

#include "oracles.hpp"
#include "qmc/certifier.hpp"
#include "qmc/quaternion.hpp"
#include "support.hpp"

using namespace qmc;
using testing::elem;

namespace {

PrimeIdeal prime(NumberField const& K, long p, int i = 0) { return factor_rational_prime(K, Integer(p))[static_cast<std::size_t>(i)]; }

} // namespace

TEST_CASE("local_square over Q")
{
    auto Q = testing::field("rationals");
    CHECK(local_square(Q, prime(Q, 7), elem({2})));
    CHECK(local_square(Q, prime(Q, 2), elem({-7})));
    CHECK(!local_square(Q, prime(Q, 5), elem({5})));
    CHECK(local_square(Q, prime(Q, 5), elem({25})));
    CHECK(!local_square(Q, prime(Q, 2), elem({3})));
    CHECK(!local_square(Q, prime(Q, 2), elem({2})));
    CHECK(local_square(Q, prime(Q, 2), elem({68}))); // 4 * 17
    CHECK_THROWS(local_square(Q, prime(Q, 3), elem({0})));
}

TEST_CASE("prime_splits_in_sqrt: examples")
{
    auto Q = testing::field("rationals");
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 3), Integer(5)) == LocalSplitting::split);
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 5), Integer(5)) == LocalSplitting::ramified);
    // -5 = 2 mod 7 and 3^2 = 2: a square, so 7 splits
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 7), Integer(5)) == LocalSplitting::split);
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 3), Integer(7)) == LocalSplitting::inert);
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 5), Integer(7)) == LocalSplitting::inert);
    // dyadic: -7 = 1 mod 8 split, -3 = 5 mod 8 inert, -5 = 3 mod 8 ramified
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 2), Integer(7)) == LocalSplitting::split);
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 2), Integer(3)) == LocalSplitting::inert);
    CHECK(prime_splits_in_sqrt(Q, prime(Q, 2), Integer(5)) == LocalSplitting::ramified);
    CHECK_THROWS(prime_splits_in_sqrt(Q, prime(Q, 7), Integer(1)));
}

TEST_CASE("prime_splits_in_sqrt over Q(sqrt5)")
{
    auto F = testing::field("q_sqrt5");
    // every unit of F_p is a square in the quadratic residue field
    for (long p : {7, 13, 17, 47})
        for (long q : {3, 11, 19, 29})
            CHECK(prime_splits_in_sqrt(F, prime(F, p), Integer(q)) == LocalSplitting::split);
    // 2 is inert: -q is a square in the unramified quadratic extension of Q_2 iff q = 3 mod 4
    for (long q : {3, 7, 11, 19})
        CHECK(prime_splits_in_sqrt(F, prime(F, 2), Integer(q)) == LocalSplitting::split);
    for (long q : {13, 17, 29})
        CHECK(prime_splits_in_sqrt(F, prime(F, 2), Integer(q)) != LocalSplitting::split);
    // 5 ramifies in F with residue field F_5
    CHECK(prime_splits_in_sqrt(F, prime(F, 5), Integer(11)) == LocalSplitting::split); // -11 = 4
    CHECK(prime_splits_in_sqrt(F, prime(F, 5), Integer(3)) == LocalSplitting::inert);  // -3 = 2
}

TEST_CASE("Jacobi oracle over Q, small range")
{
    auto Q = testing::field("rationals");
    for (long l : {3, 5, 7, 11, 13, 17, 19, 23})
        for (long q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
            if (l == q)
                continue;
            bool const want = oracle::jacobi(Integer(-q), Integer(l)) == 1;
            CHECK((prime_splits_in_sqrt(Q, prime(Q, l), Integer(q)) == LocalSplitting::split) == want);
        }
}

TEST_CASE("quaternion construction")
{
    auto Q = testing::field("rationals");
    auto B = make_quaternion(Q, std::vector<std::pair<Integer, int>>{{Integer(2), 0}, {Integer(3), 0}});
    CHECK(B.delta == 6);
    CHECK(B.delta_prime == 6);
    CHECK(B.disc_ideal.norm == 6);

    auto F = testing::field("q_sqrt5");
    auto B5 = make_quaternion(F, std::vector<std::pair<Integer, int>>{{Integer(11), 0}, {Integer(11), 1}});
    CHECK(B5.delta == 55);
    CHECK(B5.delta_prime == 11);
    CHECK(B5.disc_ideal.norm == 121);

    auto bad = [&](std::vector<std::pair<Integer, int>> r) {
        try {
            make_quaternion(Q, r);
        } catch (Error const& e) {
            return e.kind() == ErrorKind::InvalidRamification;
        }
        return false;
    };
    CHECK(bad({}));
    CHECK(bad({{Integer(2), 0}}));
    CHECK(bad({{Integer(2), 0}, {Integer(3), 0}, {Integer(5), 0}}));
    CHECK(bad({{Integer(2), 0}, {Integer(2), 0}}));
    CHECK(bad({{Integer(2), 0}, {Integer(3), 1}}));
    CHECK(bad({{Integer(2), 0}, {Integer(4), 0}}));
}

TEST_CASE("splits_over_sqrt_minus_q")
{
    auto Q = testing::field("rationals");
    auto B23 = make_quaternion(Q, std::vector<std::pair<Integer, int>>{{Integer(2), 0}, {Integer(3), 0}});
    CHECK(!splits_over_sqrt_minus_q(Q, B23, Integer(5)));
    auto B35 = make_quaternion(Q, std::vector<std::pair<Integer, int>>{{Integer(3), 0}, {Integer(5), 0}});
    CHECK(splits_over_sqrt_minus_q(Q, B35, Integer(7)));
    CHECK_THROWS(splits_over_sqrt_minus_q(Q, B23, Integer(1)));
}

TEST_CASE("compute_u")
{
    auto Q = testing::field("rationals");
    auto B = make_quaternion(Q, std::vector<std::pair<Integer, int>>{{Integer(2), 0}, {Integer(3), 0}});
    std::vector<EmbeddingIntoK> none;
    auto k5 = testing::field("q_sqrt_m5");
    auto k6 = testing::field("q_sqrt_m6");
    auto tau = [&](NumberField const& k) {
        return std::vector<EmbeddingIntoK>{make_embedding(Q, k, RatPoly{Rational(0)})};
    };
    CHECK(compute_u(Q, B, k5, tau(k5)) == 2);
    CHECK(compute_u(Q, B, k6, tau(k6)) == 1);
    CHECK_THROWS(compute_u(Q, B, k5, none));
}

TEST_CASE("compute_u is invariant under permuting embeddings")
{
    for (auto name : {"q_sqrt5_q_zeta5_b2_5", "q_sqrt5_q_sqrt5_i_b47_67", "q_sqrt5_q_sqrt5_cm61_b53_83"}) {
        auto src = testing::instance(name);
        auto a = make_setting(src.F, src.k, src.embeddings);
        std::vector<RatPoly> rev(src.embeddings.rbegin(), src.embeddings.rend());
        auto b = make_setting(src.F, src.k, rev);
        CHECK(make_theorem_input(a, src.ramified).u_computed == make_theorem_input(b, src.ramified).u_computed);
    }
}

TEST_CASE("Hilbert symbols over Q")
{
    // (-1,-1) ramified at 2 and infinity
    CHECK(hilbert_symbol(Integer(-1), Integer(-1), Integer(2)) == -1);
    CHECK(hilbert_symbol(Integer(-1), Integer(-1), Integer(0)) == -1);
    CHECK(hilbert_symbol(Integer(-1), Integer(-1), Integer(3)) == 1);
    // (2,3): ramified at 2 and 3
    auto r = ramification_over_q(Integer(2), Integer(3));
    CHECK(r == std::vector<Integer>{2, 3});
    // product formula on a grid
    for (long a : {-7, -3, -1, 2, 3, 5, 6, 10})
        for (long b : {-5, -2, -1, 3, 7, 11}) {
            int prod = hilbert_symbol(Integer(a), Integer(b), Integer(0));
            for (long p : {2, 3, 5, 7, 11, 13})
                prod *= hilbert_symbol(Integer(a), Integer(b), Integer(p));
            CHECK(prod == 1);
        }
}
