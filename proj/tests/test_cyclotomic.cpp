#include <doctest.h>

#include "oracles.hpp"
#include "qmc/cyclotomic.hpp"
#include "support.hpp"

using namespace qmc;

TEST_CASE("n_lcm against the root-search oracle")
{
    struct Case {
        char const* name;
        oracle::Ring ring;
        long expected;
    };
    for (auto const& c : std::vector<Case>{{"rationals", oracle::rationals(), 12},
                                           {"q_sqrt5", oracle::golden(), 60},
                                           {"q_sqrt2", oracle::sqrt2(), 24}}) {
        auto F = testing::field(c.name);
        auto cyc = compute_n_lcm(F);
        INFO(c.name);
        CHECK(cyc.n_lcm == c.expected);
        CHECK(oracle::n_lcm(c.ring, static_cast<unsigned>(F.degree())) == c.expected);
        CHECK(cyc.n_lcm % 12 == 0);
        for (auto m : cyc.admissible_m) {
            CHECK(oracle::phi(m) <= 2 * static_cast<unsigned long>(F.degree()));
            CHECK(oracle::admissible(c.ring, m));
        }
    }
}

TEST_CASE("admissible m for Q(sqrt5)")
{
    auto cyc = compute_n_lcm(testing::field("q_sqrt5"));
    std::vector<std::uint64_t> want{1, 2, 3, 4, 5, 6, 10};
    CHECK(cyc.admissible_m == want);
}

TEST_CASE("n_lcm does not depend on the generator")
{
    RatMat basis(2, 2);
    basis << Rational(1), Rational(0), Rational(1, 2), Rational(1, 2);
    auto a = compute_n_lcm(NumberField::construct(testing::ipoly({-5, 0, 1}), basis));
    auto b = compute_n_lcm(testing::field("q_sqrt5"));
    CHECK(a.n_lcm == b.n_lcm);
    CHECK(a.admissible_m == b.admissible_m);
}

TEST_CASE("n_F over Q")
{
    auto F = testing::field("rationals");
    auto cyc = compute_n_F(F);
    CHECK(cyc.n_F.norm == 72);
    CHECK(oracle::n_F_rationals() == 72);
    REQUIRE(cyc.n_F_support.size() == 2);
    CHECK(cyc.n_F_support[0].p == 2);
    CHECK(cyc.n_F_support[1].p == 3);
    REQUIRE(cyc.bad_support.size() == 2);
}

TEST_CASE("n_F over Q(sqrt2) and Q(sqrt5)")
{
    auto F2 = testing::field("q_sqrt2");
    auto c2 = compute_n_F(F2);
    bool has2 = false;
    for (auto const& P : c2.n_F_support)
        has2 = has2 || P.p == 2;
    CHECK(has2);
    // roots for m = 8: c = +-sqrt2
    CHECK(c2.cos_elements.at(8).size() == 2);

    auto F5 = testing::field("q_sqrt5");
    auto c5 = compute_n_F(F5);
    std::set<Integer> ps;
    for (auto const& P : c5.bad_support)
        ps.insert(P.p);
    CHECK(ps == std::set<Integer>{2, 3, 5});
    // 2 divides n_F for every F
    for (auto const* c : {&c2, &c5}) {
        bool two = false;
        for (auto const& P : c->n_F_support)
            two = two || P.p == 2;
        CHECK(two);
    }
}
