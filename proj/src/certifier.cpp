#include "qmc/certifier.hpp"

#include <algorithm>
#include <numeric>

#include "qmc/errors.hpp"
#include "qmc/parallel.hpp"

namespace qmc {

namespace {

Json elem_json(Element const& x)
{
    Json j = Json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        j.push_back(to_string(x(i)));
    return j;
}

Json prime_json(PrimeIdeal const& P) { return Json{{"p", to_string(P.p)}, {"index", std::to_string(P.index)}}; }

std::vector<std::uint64_t> primes_up_to(Integer const& bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2)
        return out;
    std::uint64_t const b = static_cast<std::uint64_t>(to_ll(bound));
    for (std::uint64_t p = 2; p <= b; ++p)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

} // namespace

std::string label(NumberField const& K, PrimeIdeal const& P)
{
    return prime_label(P, factor_rational_prime(K, P.p).size());
}

PrimeIdeal prime_by_index(NumberField const& K, Integer const& p, int index)
{
    if (p < 2 || !is_probable_prime(p))
        throw Error(ErrorKind::PreconditionViolation, to_string(p) + " is not prime");
    auto above = factor_rational_prime(K, p);
    if (index < 0 || static_cast<std::size_t>(index) >= above.size())
        throw Error(ErrorKind::PreconditionViolation,
                    "no prime with index " + std::to_string(index) + " above " + to_string(p));
    return above[static_cast<std::size_t>(index)];
}

std::shared_ptr<Setting const> make_setting(FieldSource const& F, FieldSource const& k,
                                            std::vector<RatPoly> const& embeddings, SettingOptions const& opt)
{
    auto s = std::make_shared<Setting>();
    s->F_source = F;
    s->k_source = k;
    s->embedding_source = embeddings;
    s->F = NumberField::construct(F.poly, F.basis, opt.precision);
    if (!s->F.totally_real())
        throw Error(ErrorKind::PreconditionViolation, "F must be totally real");
    s->k = NumberField::construct(k.poly, k.basis, opt.precision);
    if (!s->k.totally_imaginary())
        throw Error(ErrorKind::NotTotallyImaginary,
                    "k has " + std::to_string(s->k.r1()) + " real places; the base field k must be totally imaginary");
    if (embeddings.size() != static_cast<std::size_t>(s->F.degree()))
        throw Error(ErrorKind::EmbeddingCountMismatch, "need " + std::to_string(s->F.degree())
                                                           + " embeddings of F into k, got "
                                                           + std::to_string(embeddings.size()));
    for (auto const& img : embeddings) {
        auto tau = make_embedding(s->F, s->k, img);
        for (auto const& other : s->embeddings)
            if (other.image == tau.image)
                throw Error(ErrorKind::EmbeddingCountMismatch, "repeated embedding");
        s->embeddings.push_back(std::move(tau));
    }
    s->cyc = compute_n_F(s->F);
    s->class_group_k = class_group(s->k, opt.class_group);
    return s;
}

TheoremInput make_theorem_input(std::shared_ptr<Setting const> setting,
                                std::vector<std::pair<Integer, int>> const& ramified, bool strict_abstract)
{
    TheoremInput in;
    in.setting = std::move(setting);
    Setting const& s = *in.setting;
    in.B = make_quaternion(s.F, ramified);
    for (auto const& P : in.B.ramified)
        in.ramified_source.emplace_back(P.p, P.index);
    in.u_computed = compute_u(s.F, in.B, s.k, s.embeddings);
    in.strict_abstract = strict_abstract;
    in.u = strict_abstract ? 2 : in.u_computed;
    return in;
}

bool ConditionReport::witness() const
{
    return std::all_of(c.begin(), c.end(), [](ConditionResult const& r) { return r.evaluated && r.holds; });
}

Json ConditionReport::to_json() const
{
    Json j = Json::object();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].evaluated)
            continue;
        j[std::to_string(i + 1)] = Json{{"holds", c[i].holds}, {"evidence", c[i].evidence}};
    }
    return j;
}

bool inertia_gcd_condition(NumberField const& k, PrimeIdeal const& p_F, Json* evidence)
{
    int const r = p_F.f;
    bool ok = true;
    Json list = Json::array();
    for (auto const& P : factor_rational_prime(k, p_F.p)) {
        int const g = std::gcd(2 * r, P.f);
        ok = ok && g == r;
        list.push_back(Json{{"index", std::to_string(P.index)}, {"f", std::to_string(P.f)}, {"gcd", std::to_string(g)}});
    }
    if (evidence)
        *evidence = Json{{"r", std::to_string(r)}, {"primes_above_p", list}};
    return ok;
}

ConditionReport check_conditions(TheoremInput const& in, PrimeIdeal const& q_k, PrimeIdeal const& p_F,
                                 bool short_circuit, QTable const* table)
{
    Setting const& s = *in.setting;
    ConditionReport rep;
    auto done = [&](int i) { return short_circuit && !rep.c[i].holds; };

    // 1
    {
        auto& c = rep.c[0];
        Integer const two_delta = 2 * in.B.delta;
        c.evaluated = true;
        c.holds = two_delta % q_k.p != 0;
        c.evidence = Json{{"q", to_string(q_k.p)}, {"two_delta", to_string(two_delta)}};
        if (done(0))
            return rep;
    }
    // 2
    {
        auto& c = rep.c[1];
        c.evaluated = true;
        c.holds = q_k.f % 2 == 1;
        c.evidence = Json{{"inertia_degree", std::to_string(q_k.f)}};
        if (done(1))
            return rep;
    }
    // 6
    {
        auto& c = rep.c[5];
        c.evaluated = true;
        c.holds = ramified_at(in.B, p_F);
        Json ram = Json::array();
        for (auto const& P : in.B.ramified)
            ram.push_back(label(s.F, P));
        c.evidence = Json{{"p_F", label(s.F, p_F)}, {"ramified", ram}};
        if (done(5))
            return rep;
    }
    // 5
    {
        auto& c = rep.c[4];
        c.evaluated = true;
        c.holds = inertia_gcd_condition(s.k, p_F, &c.evidence);
        if (done(4))
            return rep;
    }
    // 4, by deciding membership of p_F directly
    {
        auto& c = rep.c[3];
        QMembership m;
        try {
            m = table ? q_membership(*table, p_F)
                      : q_membership(s.F, s.cyc, s.h_exp(), q_k.p, static_cast<unsigned>(q_k.f), in.u, p_F);
        } catch (Error const& e) {
            if (!e.is_budget())
                throw;
            rep.reason = std::string("condition 4 undecided: ") + e.what();
            return rep;
        }
        c.evaluated = true;
        c.holds = !m.member;
        Json ex = Json::array();
        for (auto e : q_exponents(s.F, s.cyc, s.h_exp(), in.u))
            ex.push_back(std::to_string(e));
        c.evidence = Json{{"norm", to_string(pow(q_k.p, static_cast<unsigned long>(q_k.f)))},
                          {"u", std::to_string(in.u)},
                          {"exponents", ex},
                          {"member", m.member},
                          {"in_bad_support", m.in_bad_support}};
        if (m.member && !m.in_bad_support) {
            c.evidence["exponent"] = std::to_string(m.exponent);
            c.evidence["b"] = elem_json(m.b);
            c.evidence["d_element"] = elem_json(m.d_element);
            c.evidence["shape"] = std::to_string(m.shape);
        }
        if (done(3))
            return rep;
    }
    // 3
    {
        auto& c = rep.c[2];
        c.evaluated = true;
        Json cls = Json::array();
        bool any_split = false;
        for (auto const& P : in.B.ramified) {
            LocalSplitting const t = prime_splits_in_sqrt(s.F, P, q_k.p);
            any_split = any_split || t == LocalSplitting::split;
            cls.push_back(Json{{"prime", label(s.F, P)}, {"splitting", to_string(t)}});
        }
        c.holds = any_split;
        c.evidence = Json{{"classification", cls}};
    }
    return rep;
}

Json make_certificate(TheoremInput const& in, PrimeIdeal const& q_k, PrimeIdeal const& p_F,
                      ConditionReport const& report)
{
    Setting const& s = *in.setting;
    InstanceSource src{s.F_source, s.k_source, s.embedding_source, in.ramified_source};
    Json input = instance_to_json(src);
    input["strict_abstract"] = in.strict_abstract;

    Json support = Json::array();
    for (auto const& P : s.cyc.bad_support)
        support.push_back(label(s.F, P));
    Json derived{{"n_lcm", to_string(s.cyc.n_lcm)},
                 {"n_F_norm", to_string(s.cyc.n_F.norm)},
                 {"n_lcm_n_F_support", support},
                 {"h_k", to_string(s.class_group_k.h)},
                 {"h_exp_k", to_string(s.h_exp())},
                 {"delta", to_string(in.B.delta)},
                 {"delta_prime", to_string(in.B.delta_prime)},
                 {"u", std::to_string(in.u)},
                 {"u_computed", std::to_string(in.u_computed)}};

    Json cert{{"format", certificate_format},
              {"tool", tool_version},
              {"input", input},
              {"derived", derived},
              {"witness", Json{{"q", prime_json(q_k)}, {"p_F", prime_json(p_F)}}},
              {"conditions", report.to_json()},
              {"verdict", report.witness()}};
    cert["digest"] = sha256_hex(canonical_dump(cert));
    return cert;
}

VerifyResult verify_certificate(Json const& cert, SettingOptions const& opt)
{
    for (char const* key : {"format", "tool", "input", "derived", "witness", "conditions", "verdict", "digest"})
        if (!cert.is_object() || !cert.contains(key))
            throw Error(ErrorKind::ParseError, std::string("certificate lacks \"") + key + "\"");
    if (cert.at("format") != certificate_format)
        throw Error(ErrorKind::ParseError, "unknown certificate format " + cert.at("format").dump());
    Json body = cert;
    body.erase("digest");
    if (!cert.at("digest").is_string() || sha256_hex(canonical_dump(body)) != cert.at("digest").get<std::string>())
        return {false, "DigestMismatch: content does not match its digest"};

    Json const& w = cert.at("witness");
    InstanceSource src = instance_from_json(cert.at("input"));
    bool const strict = cert.at("input").value("strict_abstract", false);
    Integer const qp = json_integer(w.at("q").at("p")), pp = json_integer(w.at("p_F").at("p"));
    int const qi = static_cast<int>(to_ll(json_integer(w.at("q").at("index"))));
    int const pi = static_cast<int>(to_ll(json_integer(w.at("p_F").at("index"))));
    try {
        auto setting = make_setting(src.F, src.k, src.embeddings, opt);
        TheoremInput in = make_theorem_input(setting, src.ramified, strict);
        PrimeIdeal const q_k = prime_by_index(setting->k, qp, qi);
        PrimeIdeal const p_F = prime_by_index(setting->F, pp, pi);
        ConditionReport const rep = check_conditions(in, q_k, p_F, false);
        Json const again = make_certificate(in, q_k, p_F, rep);
        if (!rep.witness())
            return {false, "conditions do not all hold"};
        if (again == cert)
            return {true, "ok"};
        for (auto const& [key, value] : again.items())
            if (key != "digest" && (!cert.contains(key) || cert.at(key) != value))
                return {false, "mismatch in \"" + key + "\""};
        return {false, "mismatch"};
    } catch (Error const& e) {
        if (e.kind() == ErrorKind::ParseError)
            throw;
        return {false, e.what()};
    }
}

SearchResult search_witness(TheoremInput const& in, Integer const& q_bound, unsigned workers)
{
    Setting const& s = *in.setting;
    struct Cand {
        PrimeIdeal q_k;
        PrimeIdeal const* p_F;
    };
    std::vector<Cand> cands;
    Integer const two_delta = 2 * in.B.delta;
    for (std::uint64_t q : primes_up_to(q_bound)) {
        if (two_delta % q == 0)
            continue;
        for (auto& Q : factor_rational_prime(s.k, Integer(q))) {
            if (Q.f % 2 == 0)
                continue;
            for (auto const& P : in.B.ramified)
                cands.push_back(Cand{Q, &P});
        }
    }
    // one table per prime of k; a budget failure leaves it empty and the
    // per-candidate evaluation reports it
    std::vector<std::size_t> table_of(cands.size());
    std::vector<PrimeIdeal const*> heads;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (heads.empty() || !same_prime(*heads.back(), cands[i].q_k))
            heads.push_back(&cands[i].q_k);
        table_of[i] = heads.size() - 1;
    }
    std::vector<std::optional<QTable>> tables(heads.size());
    parallel_for(heads.size(), workers, [&](std::size_t i) {
        auto const& Q = *heads[i];
        try {
            tables[i] = make_q_table(s.F, s.cyc, s.h_exp(), Q.p, static_cast<unsigned>(Q.f), in.u);
        } catch (Error const& e) {
            if (!e.is_budget())
                throw;
        }
    });
    std::vector<std::optional<Json>> certs(cands.size());
    std::vector<std::string> skipped(cands.size());
    parallel_for(cands.size(), workers, [&](std::size_t i) {
        auto const& c = cands[i];
        auto const& tab = tables[table_of[i]];
        QTable const* t = tab ? &*tab : nullptr;
        ConditionReport rep = check_conditions(in, c.q_k, *c.p_F, true, t);
        if (!rep.reason.empty())
            skipped[i] = to_string(c.q_k.p) + "," + std::to_string(c.q_k.index) + " / " + to_string(c.p_F->p) + ","
                + std::to_string(c.p_F->index) + ": " + rep.reason;
        if (!rep.witness())
            return;
        // re-evaluate everything for the certificate
        certs[i] = make_certificate(in, c.q_k, *c.p_F, check_conditions(in, c.q_k, *c.p_F, false, t));
    });
    SearchResult out;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (certs[i])
            out.certificates.push_back(std::move(*certs[i]));
        if (!skipped[i].empty())
            out.skipped.push_back(std::move(skipped[i]));
    }
    return out;
}

bool in_R(Setting const& s, int u, PrimeIdeal const& q_k, PrimeIdeal const& p_F, QTable const* table)
{
    if ((2 * s.F.discriminant()) % q_k.p == 0)
        return false;
    if (q_k.f % 2 == 0)
        return false;
    if (!inertia_gcd_condition(s.k, p_F))
        return false;
    if (table)
        return !q_membership(*table, p_F).member;
    return !q_membership(s.F, s.cyc, s.h_exp(), q_k.p, static_cast<unsigned>(q_k.f), u, p_F).member;
}

std::vector<RPair> enumerate_R(Setting const& s, int u, Integer const& q_bound, Integer const& p_bound, unsigned workers)
{
    std::vector<PrimeIdeal> qs, ps;
    for (std::uint64_t q : primes_up_to(q_bound))
        for (auto& Q : factor_rational_prime(s.k, Integer(q)))
            qs.push_back(std::move(Q));
    for (std::uint64_t p : primes_up_to(p_bound))
        for (auto& P : factor_rational_prime(s.F, Integer(p)))
            ps.push_back(std::move(P));
    Integer const two_d = 2 * s.F.discriminant();
    std::vector<std::optional<QTable>> tables(qs.size());
    parallel_for(qs.size(), workers, [&](std::size_t i) {
        if (qs[i].f % 2 == 1 && two_d % qs[i].p != 0)
            tables[i] = make_q_table(s.F, s.cyc, s.h_exp(), qs[i].p, static_cast<unsigned>(qs[i].f), u);
    });
    std::vector<char> keep(qs.size() * ps.size(), 0);
    parallel_for(keep.size(), workers, [&](std::size_t i) {
        auto const& t = tables[i / ps.size()];
        if (t)
            keep[i] = in_R(s, u, qs[i / ps.size()], ps[i % ps.size()], &*t) ? 1 : 0;
    });
    std::vector<RPair> out;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i])
            out.push_back(RPair{qs[i / ps.size()], ps[i % ps.size()]});
    return out;
}

std::vector<Suggestion> suggest_discriminants(std::shared_ptr<Setting const> setting, PrimeIdeal const& q_k,
                                              PrimeIdeal const& p_F, Integer const& size_bound, bool strict_abstract,
                                              unsigned workers)
{
    Setting const& s = *setting;
    if (!in_R(s, 2, q_k, p_F))
        throw Error(ErrorKind::PreconditionViolation, "the pair is not in R(2)");
    Integer const q = q_k.p;
    Integer const room = size_bound / p_F.norm();
    std::vector<PrimeIdeal> pool;
    for (std::uint64_t p : primes_up_to(room))
        for (auto& P : factor_rational_prime(s.F, Integer(p)))
            if (P.norm() <= room && !same_prime(P, p_F) && P.p != q)
                pool.push_back(std::move(P));

    // odd-size subsets of the pool with norm product <= room
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, Integer const&)> grow = [&](std::size_t from, Integer const& prod) {
        if (cur.size() % 2 == 1)
            sets.push_back(cur);
        for (std::size_t i = from; i < pool.size(); ++i) {
            Integer const next = prod * pool[i].norm();
            if (next > room)
                continue;
            cur.push_back(i);
            grow(i + 1, next);
            cur.pop_back();
        }
    };
    if (p_F.p != q)
        grow(0, 1);

    std::optional<QTable> by_u[3];
    for (int u : {1, 2})
        if (u == 2 || !strict_abstract)
            by_u[u] = make_q_table(s.F, s.cyc, s.h_exp(), q, static_cast<unsigned>(q_k.f), u);

    std::vector<std::optional<Suggestion>> found(sets.size());
    parallel_for(sets.size(), workers, [&](std::size_t i) {
        std::vector<PrimeIdeal const*> S{&p_F};
        for (auto j : sets[i])
            S.push_back(&pool[j]);
        bool split = false;
        Integer nrm = 1;
        for (auto const* P : S) {
            split = split || prime_splits_in_sqrt(s.F, *P, q) == LocalSplitting::split;
            nrm *= P->norm();
        }
        if (!split || nrm % q == 0)
            return;
        std::vector<std::pair<Integer, int>> ram;
        for (auto const* P : S)
            ram.emplace_back(P->p, P->index);
        TheoremInput in = make_theorem_input(setting, ram, strict_abstract);
        ConditionReport rep = check_conditions(in, q_k, p_F, false, &*by_u[in.u]);
        if (!rep.witness())
            return;
        found[i] = Suggestion{in.ramified_source, nrm, std::move(rep)};
    });
    std::vector<Suggestion> out;
    for (auto& f : found)
        if (f)
            out.push_back(std::move(*f));
    std::sort(out.begin(), out.end(), [](Suggestion const& a, Suggestion const& b) {
        if (a.disc_norm != b.disc_norm)
            return a.disc_norm < b.disc_norm;
        return a.ramified < b.ramified;
    });
    if (out.empty())
        throw Error(ErrorKind::NoCandidateWithinBound,
                    "no ramification set of norm <= " + to_string(size_bound) + " passes all conditions");
    return out;
}

} // namespace qmc
