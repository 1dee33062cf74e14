#include <doctest.h>

#include "naive_certifier.hpp"
#include "qmc/certifier.hpp"
#include "support.hpp"

using namespace qmc;

namespace {

std::shared_ptr<Setting const> setting(std::string const& name)
{
    auto src = testing::instance(name);
    return make_setting(src.F, src.k, src.embeddings);
}

TheoremInput input(std::string const& name, bool strict = false)
{
    auto src = testing::instance(name);
    return make_theorem_input(make_setting(src.F, src.k, src.embeddings), src.ramified, strict);
}

std::set<oracle::Pair> pairs(std::vector<Json> const& certs)
{
    std::set<oracle::Pair> out;
    for (auto const& c : certs) {
        auto const& w = c.at("witness");
        out.insert({json_integer(w.at("q").at("p")), static_cast<int>(to_ll(json_integer(w.at("q").at("index")))),
                    json_integer(w.at("p_F").at("p")), static_cast<int>(to_ll(json_integer(w.at("p_F").at("index"))))});
    }
    return out;
}

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

TEST_CASE("setting rejections")
{
    auto F = load_field(testing::corpus() / "fields" / "rationals.json");
    auto real = load_field(testing::corpus() / "fields" / "q_sqrt5.json");
    auto qi = load_field(testing::corpus() / "fields" / "q_i.json");
    RatPoly zero{Rational(0)};
    try {
        make_setting(F, real, {zero});
        FAIL("accepted a real k");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::NotTotallyImaginary);
        CHECK(std::string(e.what()).find("the base field k must be totally imaginary") != std::string::npos);
    }
    CHECK(kind_of([&] { make_setting(F, qi, {}); }) == ErrorKind::EmbeddingCountMismatch);
    CHECK(kind_of([&] { make_setting(qi, qi, {RatPoly{Rational(0), Rational(1)}}); })
          == ErrorKind::PreconditionViolation);

    auto src = testing::instance("q_sqrt5_q_zeta5_b2_5");
    CHECK(kind_of([&] { make_setting(src.F, src.k, {src.embeddings[0], src.embeddings[0]}); })
          == ErrorKind::EmbeddingCountMismatch);
    // not a root of F's polynomial
    CHECK_THROWS(make_setting(src.F, src.k, {src.embeddings[0], RatPoly{Rational(1), Rational(0), Rational(0), Rational(0)}}));
}

TEST_CASE("single conditions")
{
    auto in = input("rationals_q_i_b13_29");
    auto const& s = *in.setting;
    auto five = factor_rational_prime(s.k, Integer(5));
    auto seven = factor_rational_prime(s.k, Integer(7));
    auto p11 = prime_by_index(s.F, Integer(11), 0);
    auto p29 = prime_by_index(s.F, Integer(29), 0);

    auto r6 = check_conditions(in, five[0], p11, false);
    CHECK(r6.c[5].evaluated);
    CHECK(!r6.c[5].holds);
    CHECK(!r6.witness());

    CHECK(check_conditions(in, five[0], p29, false).c[1].holds);
    auto r2 = check_conditions(in, seven[0], p29, false);
    CHECK(!r2.c[1].holds);
    // short circuit stops after condition 2
    auto sc = check_conditions(in, seven[0], p29, true);
    CHECK(!sc.c[5].evaluated);
    CHECK(!sc.c[3].evaluated);

    auto k5 = setting("rationals_q_sqrt_m5_b13_29");
    CHECK(inertia_gcd_condition(k5->k, prime_by_index(k5->F, Integer(3), 0)));
    // 11 is inert in Q(sqrt-5): gcd(2, 2) = 2 != 1
    CHECK(!inertia_gcd_condition(k5->k, prime_by_index(k5->F, Integer(11), 0)));
}

TEST_CASE("search equals the naive re-evaluation")
{
    for (auto name : {"rationals_q_i_b13_29", "rationals_q_sqrt_m23_b29_41", "rationals_q_sqrt_m6_b2_3",
                      "q_sqrt5_q_sqrt5_sqrt_m2_b53_83", "q_sqrt5_q_zeta5_b2_5"}) {
        auto in = input(name);
        oracle::NaiveCertifier naive(in);
        CHECK(naive.u() == in.u);
        auto got = search_witness(in, Integer(60), 4);
        INFO(name);
        CHECK(got.skipped.empty());
        CHECK(pairs(got.certificates) == naive.witnesses(60));
    }
}

TEST_CASE("search: monotone, empty below the first admissible q, worker independent")
{
    auto in = input("rationals_q_sqrt_m5_b13_29");
    auto small = pairs(search_witness(in, Integer(5)).certificates);
    auto large = pairs(search_witness(in, Integer(40)).certificates);
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    CHECK(search_witness(in, Integer(2)).certificates.empty());
    auto a = search_witness(in, Integer(40), 1).certificates;
    auto b = search_witness(in, Integer(40), 8).certificates;
    CHECK(Json(a).dump() == Json(b).dump());
}

TEST_CASE("certificates: evidence, round trip and tampering")
{
    auto in = input("rationals_q_i_b29_41");
    auto certs = search_witness(in, Integer(20)).certificates;
    REQUIRE(!certs.empty());
    for (auto const& c : certs) {
        CHECK(c.at("verdict") == true);
        bool split = false;
        for (auto const& x : c.at("conditions").at("3").at("evidence").at("classification"))
            split = split || x.at("splitting") == "split";
        CHECK(split);
        auto r = verify_certificate(c);
        CHECK(r.ok);
    }

    Json flipped = certs[0];
    flipped["conditions"]["4"]["holds"] = false;
    auto r1 = verify_certificate(flipped);
    CHECK(!r1.ok);
    CHECK(r1.reason.find("DigestMismatch") != std::string::npos);

    // consistent digest but a wrong claim
    Json lie = certs[0];
    lie["derived"]["u"] = "1";
    lie.erase("digest");
    lie["digest"] = sha256_hex(canonical_dump(lie));
    auto r2 = verify_certificate(lie);
    CHECK(!r2.ok);

    // odd ramification set
    Json odd = certs[0];
    odd["input"]["ramified"].push_back(Json::array({"3", "0"}));
    odd.erase("digest");
    odd["digest"] = sha256_hex(canonical_dump(odd));
    auto r3 = verify_certificate(odd);
    CHECK(!r3.ok);
    CHECK(r3.reason.find("InvalidRamification") != std::string::npos);

    Json broken = certs[0];
    broken.erase("witness");
    CHECK(kind_of([&] { verify_certificate(broken); }) == ErrorKind::ParseError);

    // byte-identical when produced again
    auto again = search_witness(input("rationals_q_i_b29_41"), Integer(20)).certificates;
    CHECK(Json(again).dump() == Json(certs).dump());
}

TEST_CASE("strict mode forces u = 2")
{
    auto in = input("rationals_q_i_b2_3", true);
    CHECK(in.u_computed == 1);
    CHECK(in.u == 2);
    auto loose = input("rationals_q_i_b2_3");
    CHECK(loose.u == 1);
}

TEST_CASE("R(2) for Q and Q(i)")
{
    auto s = setting("rationals_q_i_b13_29");
    auto R = enumerate_R(*s, 2, Integer(20), Integer(50), 2);
    std::set<Integer> qs;
    for (auto const& r : R) {
        qs.insert(r.q_k.p);
        // r = 1 forces odd residue degree above p
        for (auto const& P : factor_rational_prime(s->k, r.p_F.p))
            CHECK(P.f % 2 == 1);
    }
    CHECK(qs == std::set<Integer>{5, 13, 17});
    // R ignores B and uses 2 d_F: q = 13 stays although 13 is in some Ram(B)
    CHECK(!R.empty());
}

TEST_CASE("suggest_discriminants")
{
    auto s = setting("rationals_q_i_b2_3");
    auto q5 = prime_by_index(s->k, Integer(5), 0);
    auto p29 = prime_by_index(s->F, Integer(29), 0);
    REQUIRE(in_R(*s, 2, q5, p29));
    auto sg = suggest_discriminants(s, q5, p29, Integer(400), false, 4);
    REQUIRE(!sg.empty());
    bool three = false;
    Integer last = 0;
    for (auto const& x : sg) {
        CHECK(x.ramified.size() % 2 == 0);
        CHECK(x.disc_norm >= last);
        last = x.disc_norm;
        CHECK(x.disc_norm % 5 != 0);
        bool has_p = false;
        for (auto const& [p, i] : x.ramified)
            has_p = has_p || p == 29;
        CHECK(has_p);
        three = three || x.ramified == std::vector<std::pair<Integer, int>>{{Integer(3), 0}, {Integer(29), 0}};
        auto in = make_theorem_input(s, x.ramified);
        CHECK(check_conditions(in, q5, p29, false).witness());
    }
    CHECK(three);
    CHECK(kind_of([&] { suggest_discriminants(s, q5, p29, Integer(40)); }) == ErrorKind::NoCandidateWithinBound);
}
