// qmc: command-line front end.
//
// exit codes: 0 ok / witness found / verified, 1 no witness, 2 input error,
// 3 budget exceeded

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmc/certifier.hpp"

namespace fs = std::filesystem;
using namespace qmc;

namespace {

struct RunConfig {
    std::string corpus;
    unsigned workers = 1;
    unsigned precision_bits = 0;
    std::size_t digits = 60;
    std::uint64_t rho_iterations = FactorLimits{}.rho_iterations;
    bool json = false;
    bool strict = false;
    std::string output;
};

int exit_code(Error const& e)
{
    if (e.is_budget())
        return 3;
    if (e.kind() == ErrorKind::NoCandidateWithinBound)
        return 1;
    return 2;
}

PrecisionConfig precision(RunConfig const& rc)
{
    PrecisionConfig p = default_precision();
    if (rc.precision_bits) {
        p.initial_bits = rc.precision_bits;
        p.max_bits = std::max(p.max_bits, rc.precision_bits);
    }
    return p;
}

SettingOptions setting_options(RunConfig const& rc)
{
    SettingOptions o;
    o.precision = precision(rc);
    return o;
}

WeilBudget budget(RunConfig const& rc)
{
    WeilBudget b;
    b.digits = rc.digits;
    b.limits.digit_limit = rc.digits;
    b.limits.rho_iterations = rc.rho_iterations;
    return b;
}

// a path as given, else relative to the corpus and its subdirectories
fs::path resolve(RunConfig const& rc, std::string const& name, char const* sub)
{
    fs::path p(name);
    if (fs::exists(p) || rc.corpus.empty())
        return p;
    for (fs::path c : {fs::path(rc.corpus) / name, fs::path(rc.corpus) / sub / name,
                       fs::path(rc.corpus) / sub / (name + ".json")})
        if (fs::exists(c))
            return c;
    return p;
}

// every json file of a corpus subdirectory, sorted
std::vector<fs::path> corpus_files(RunConfig const& rc, char const* sub)
{
    std::vector<fs::path> out;
    fs::path const dir = fs::path(rc.corpus) / sub;
    if (!fs::is_directory(dir))
        throw Error(ErrorKind::ParseError, "no directory " + dir.string());
    for (auto const& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<fs::path> inputs(RunConfig const& rc, std::vector<std::string> const& given, char const* sub)
{
    if (!given.empty()) {
        std::vector<fs::path> out;
        for (auto const& g : given)
            out.push_back(resolve(rc, g, sub));
        return out;
    }
    if (rc.corpus.empty())
        throw Error(ErrorKind::ParseError, "no input file (give one or --seed-corpus)");
    return corpus_files(rc, sub);
}

NumberField field_of(RunConfig const& rc, fs::path const& path)
{
    FieldSource src = load_field(path);
    return NumberField::construct(src.poly, src.basis, precision(rc));
}

std::string join(std::vector<std::string> const& xs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? "," : "") + xs[i];
    return out + "}";
}

std::string elements(NumberField const& K, std::vector<Element> const& xs)
{
    std::vector<std::string> s;
    for (auto const& x : xs)
        s.push_back(elem_to_string(K, x));
    return join(s);
}

std::string primes(NumberField const& K, std::vector<PrimeIdeal> const& ps)
{
    std::vector<std::string> s;
    for (auto const& P : ps)
        s.push_back(label(K, P));
    return join(s);
}

std::string integers(std::vector<Integer> const& xs)
{
    std::vector<std::string> s;
    for (auto const& x : xs)
        s.push_back(to_string(x));
    return join(s);
}

// ---------------------------------------------------------------------------

void fieldinfo(RunConfig const& rc, fs::path const& path, std::ostream& out)
{
    NumberField K = field_of(rc, path);
    std::vector<std::string> coeffs;
    for (auto const& c : K.poly())
        coeffs.push_back(to_string(c));
    out << "field: " << path.filename().string() << "\n";
    out << "poly: " << join(coeffs) << "\n";
    out << "degree: " << K.degree() << "\n";
    out << "signature: (" << K.r1() << "," << K.r2() << ")\n";
    out << "discriminant: " << to_string(K.discriminant()) << "\n";
    out << "index: " << to_string(K.index()) << "\n";
    if (K.totally_real()) {
        CyclotomicInvariants cyc = compute_n_F(K, budget(rc).limits);
        std::vector<Integer> ms(cyc.admissible_m.begin(), cyc.admissible_m.end());
        out << "admissible_m: " << integers(ms) << "\n";
        out << "n_lcm: " << to_string(cyc.n_lcm) << "\n";
        out << "n_F_norm: " << to_string(cyc.n_F.norm) << "\n";
        out << "n_F_support: " << primes(K, cyc.n_F_support) << "\n";
        out << "n_lcm_n_F_support: " << primes(K, cyc.bad_support) << "\n";
    }
    ClassGroupData cg = class_group(K);
    out << "class_group: " << integers(cg.elementary_divisors) << "\n";
    out << "h: " << to_string(cg.h) << "\n";
    out << "h_exp: " << to_string(cg.h_exp) << "\n";
}

void classgroup(RunConfig const& rc, fs::path const& path, std::ostream& out)
{
    NumberField K = field_of(rc, path);
    ClassGroupData cg = class_group(K);
    out << "field: " << path.filename().string() << "\n";
    out << "minkowski_bound: " << to_string(cg.minkowski) << "\n";
    out << "factor_base: " << primes(K, cg.factor_base) << "\n";
    out << "relations: " << cg.relation_matrix.cols() << "\n";
    out << "class_group: " << integers(cg.elementary_divisors) << "\n";
    out << "h: " << to_string(cg.h) << "\n";
    out << "h_exp: " << to_string(cg.h_exp) << "\n";
}

struct WeilArgs {
    std::string field, k_field;
    std::string ell;
    unsigned f = 1;
    unsigned long e = 0;
    int u = 0;
};

void weil_sets(RunConfig const& rc, WeilArgs const& a, std::ostream& out)
{
    NumberField F = field_of(rc, resolve(rc, a.field, "fields"));
    if (!F.totally_real())
        throw Error(ErrorKind::PreconditionViolation, "weil-sets needs a totally real field");
    Integer const ell(a.ell);
    if (ell < 2 || !is_probable_prime(ell))
        throw Error(ErrorKind::PreconditionViolation, a.ell + " is not prime");
    CyclotomicInvariants cyc = compute_n_F(F, budget(rc).limits);
    auto const FR = enumerate_FR(F, ell, a.f);
    std::vector<Element> bs;
    for (auto const& w : FR)
        bs.push_back(w.b);
    out << "ell: " << to_string(ell) << "\n";
    out << "f: " << a.f << "\n";
    out << "FR: " << elements(F, bs) << "\n";
    if (a.e) {
        auto C = compute_C(F, ell, a.f, a.e);
        auto D = compute_D(F, C, pow(ell, static_cast<unsigned long>(a.f) * a.e));
        out << "e: " << a.e << "\n";
        out << "C: " << elements(F, C) << "\n";
        out << "D: " << elements(F, D) << "\n";
        out << "P: " << primes(F, compute_P(F, cyc, ell, a.f, a.e, budget(rc))) << "\n";
    }
    if (a.u) {
        if (a.k_field.empty())
            throw Error(ErrorKind::ParseError, "Q needs --k");
        NumberField k = field_of(rc, resolve(rc, a.k_field, "fields"));
        ClassGroupData cg = class_group(k);
        std::vector<Integer> ex;
        for (auto e : q_exponents(F, cyc, cg.h_exp, a.u))
            ex.push_back(Integer(e));
        out << "u: " << a.u << "\n";
        out << "h_exp_k: " << to_string(cg.h_exp) << "\n";
        out << "exponents: " << integers(ex) << "\n";
        out << "Q: " << primes(F, compute_Q(F, cyc, cg.h_exp, ell, a.f, a.u, budget(rc))) << "\n";
    }
}

TheoremInput theorem_input(RunConfig const& rc, fs::path const& path)
{
    InstanceSource src = load_instance(path);
    auto setting = make_setting(src.F, src.k, src.embeddings, setting_options(rc));
    return make_theorem_input(setting, src.ramified, rc.strict);
}

std::string summary(Json const& cert)
{
    auto const& w = cert.at("witness");
    auto const& d = cert.at("derived");
    std::ostringstream s;
    s << "witness q=" << w.at("q").at("p").get<std::string>() << " index " << w.at("q").at("index").get<std::string>()
      << ", p_F=" << w.at("p_F").at("p").get<std::string>() << " index "
      << w.at("p_F").at("index").get<std::string>() << ", u=" << d.at("u").get<std::string>()
      << ", digest " << cert.at("digest").get<std::string>().substr(0, 16);
    return s.str();
}

struct PairArgs {
    std::string q = "0", p = "0";
    int q_index = 0, p_index = 0;
};

int certify(RunConfig const& rc, std::string const& instance, PairArgs const& a, std::ostream& out)
{
    TheoremInput in = theorem_input(rc, resolve(rc, instance, "instances"));
    Setting const& s = *in.setting;
    PrimeIdeal const q_k = prime_by_index(s.k, Integer(a.q), a.q_index);
    PrimeIdeal const p_F = prime_by_index(s.F, Integer(a.p), a.p_index);
    ConditionReport rep = check_conditions(in, q_k, p_F, false);
    if (!rep.reason.empty())
        throw Error(ErrorKind::FactorizationIncomplete, rep.reason);
    Json cert = make_certificate(in, q_k, p_F, rep);
    if (rc.json) {
        out << cert.dump(2) << "\n";
    } else {
        for (int i = 1; i <= 6; ++i)
            out << "condition " << i << ": " << (rep.c[i - 1].holds ? "holds" : "fails") << "\n";
        out << (rep.witness() ? summary(cert) : std::string("not a witness")) << "\n";
    }
    return rep.witness() ? 0 : 1;
}

int search(RunConfig const& rc, std::vector<std::string> const& given, std::string const& q_bound, std::ostream& out)
{
    Json all = Json::array();
    bool skipped = false;
    for (auto const& path : inputs(rc, given, "instances")) {
        TheoremInput in = theorem_input(rc, path);
        SearchResult r = search_witness(in, Integer(q_bound), rc.workers);
        skipped = skipped || !r.skipped.empty();
        if (!rc.json) {
            out << path.filename().string() << ": " << r.certificates.size() << " witness(es), u=" << in.u << "\n";
            for (auto const& c : r.certificates)
                out << "  " << summary(c) << "\n";
            for (auto const& sk : r.skipped)
                out << "  skipped " << sk << "\n";
        }
        for (auto& c : r.certificates)
            all.push_back(std::move(c));
    }
    if (rc.json)
        out << all.dump(2) << "\n";
    if (!all.empty())
        return 0;
    return skipped ? 3 : 1;
}

int suggest(RunConfig const& rc, std::string const& instance, PairArgs const& a, std::string const& size_bound,
            std::ostream& out)
{
    InstanceSource src = load_instance(resolve(rc, instance, "instances"));
    auto setting = make_setting(src.F, src.k, src.embeddings, setting_options(rc));
    PrimeIdeal const q_k = prime_by_index(setting->k, Integer(a.q), a.q_index);
    PrimeIdeal const p_F = prime_by_index(setting->F, Integer(a.p), a.p_index);
    auto found = suggest_discriminants(setting, q_k, p_F, Integer(size_bound), rc.strict, rc.workers);
    Json arr = Json::array();
    for (auto const& sg : found) {
        Json ram = Json::array();
        std::vector<std::string> labels;
        for (auto const& [p, i] : sg.ramified) {
            ram.push_back(Json::array({to_string(p), std::to_string(i)}));
            labels.push_back(label(setting->F, prime_by_index(setting->F, p, i)));
        }
        if (rc.json)
            arr.push_back(Json{{"ramified", ram}, {"disc_norm", to_string(sg.disc_norm)}});
        else
            out << "ramified " << join(labels) << ", norm " << to_string(sg.disc_norm) << "\n";
    }
    if (rc.json)
        out << arr.dump(2) << "\n";
    return 0;
}

int verify(RunConfig const& rc, std::vector<std::string> const& files, std::ostream& out)
{
    int code = 0;
    for (auto const& f : files) {
        Json j = read_json_file(f);
        std::vector<Json> certs;
        if (j.is_array())
            certs.assign(j.begin(), j.end());
        else
            certs.push_back(j);
        for (auto const& c : certs) {
            VerifyResult r = verify_certificate(c, setting_options(rc));
            out << f << ": " << (r.ok ? "ok" : "FAILED " + r.reason) << "\n";
            if (!r.ok)
                code = 1;
        }
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"qmc: certify Brauer-Manin emptiness hypotheses for quaternionic Shimura curves"};
    app.require_subcommand(1);
    RunConfig rc;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed-corpus", rc.corpus, "directory with fields/ and instances/");
        sub->add_option("--workers", rc.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--precision-bits", rc.precision_bits, "initial interval precision (also QMC_PRECISION_BITS)")
            ->check(CLI::Range(16u, 1u << 20));
        sub->add_option("--budget-digits", rc.digits, "largest |N(x)| to factor, in decimal digits")
            ->check(CLI::Range(std::size_t(1), std::size_t(100000)));
        sub->add_option("--rho-iterations", rc.rho_iterations, "Pollard rho iterations per cofactor")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--json", rc.json, "machine-readable output");
        sub->add_option("--output,-o", rc.output, "write to this file instead of stdout");
    };

    std::vector<std::string> files;
    auto* c_field = app.add_subcommand("fieldinfo", "degree, signature, discriminant, n_lcm, n_F, class group");
    common(c_field);
    c_field->add_option("field", files, "field file(s)");

    auto* c_cg = app.add_subcommand("classgroup", "class group of a field");
    common(c_cg);
    c_cg->add_option("field", files, "field file(s)");

    WeilArgs wa;
    auto* c_weil = app.add_subcommand("weil-sets", "FR, C, D, P and Q");
    common(c_weil);
    c_weil->add_option("field", wa.field, "totally real field file")->required();
    c_weil->add_option("ell", wa.ell, "prime")->required();
    c_weil->add_option("f", wa.f, "exponent of ell")->check(CLI::PositiveNumber);
    c_weil->add_option("--e", wa.e, "C, D, P at this e")->check(CLI::PositiveNumber);
    c_weil->add_option("--u", wa.u, "Q at this u (needs --k)")->check(CLI::IsMember({1, 2}));
    c_weil->add_option("--k", wa.k_field, "field k for h'_k");

    PairArgs pa;
    std::string instance;
    auto pair_options = [&](CLI::App* sub) {
        sub->add_option("--q", pa.q, "rational prime under the prime of k")->required();
        sub->add_option("--q-index", pa.q_index, "index of the prime of k above q");
        sub->add_option("--p", pa.p, "rational prime under p_F")->required();
        sub->add_option("--p-index", pa.p_index, "index of p_F above p");
    };
    auto* c_cert = app.add_subcommand("certify", "evaluate all conditions for one pair");
    common(c_cert);
    c_cert->add_option("instance", instance, "instance file")->required();
    pair_options(c_cert);
    c_cert->add_flag("--strict-abstract", rc.strict, "use u = 2 in condition 4");

    std::string q_bound = "100";
    auto* c_search = app.add_subcommand("search", "search witness pairs");
    common(c_search);
    c_search->add_option("instance", files, "instance file(s); all corpus instances if omitted");
    c_search->add_option("--q-bound", q_bound, "largest q");
    c_search->add_flag("--strict-abstract", rc.strict, "use u = 2 in condition 4");

    std::string size_bound = "10000";
    auto* c_sug = app.add_subcommand("suggest", "ramification sets making a pair a witness");
    common(c_sug);
    c_sug->add_option("instance", instance, "instance file (its ramification is ignored)")->required();
    pair_options(c_sug);
    c_sug->add_option("--size-bound", size_bound, "bound on the norm of the discriminant");
    c_sug->add_flag("--strict-abstract", rc.strict, "use u = 2 in condition 4");

    auto* c_ver = app.add_subcommand("verify", "re-check certificates");
    common(c_ver);
    c_ver->add_option("certificate", files, "certificate file(s)")->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ofstream file;
    std::ostringstream buf;
    int code = 0;
    try {
        for (auto const& s : {q_bound, size_bound, pa.q, pa.p})
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
                throw Error(ErrorKind::ParseError, "not a nonnegative integer: \"" + s + "\"");
        if (c_field->parsed())
            for (auto const& p : inputs(rc, files, "fields"))
                fieldinfo(rc, p, buf);
        else if (c_cg->parsed())
            for (auto const& p : inputs(rc, files, "fields"))
                classgroup(rc, p, buf);
        else if (c_weil->parsed())
            weil_sets(rc, wa, buf);
        else if (c_cert->parsed())
            code = certify(rc, instance, pa, buf);
        else if (c_search->parsed())
            code = search(rc, files, q_bound, buf);
        else if (c_sug->parsed())
            code = suggest(rc, instance, pa, size_bound, buf);
        else if (c_ver->parsed())
            code = verify(rc, files, buf);
    } catch (Error const& e) {
        std::cout << buf.str();
        std::cerr << "qmc: " << e.what() << "\n";
        return exit_code(e);
    } catch (std::exception const& e) {
        std::cout << buf.str();
        std::cerr << "qmc: " << e.what() << "\n";
        return 2;
    }
    if (rc.output.empty()) {
        std::cout << buf.str();
    } else {
        file.open(rc.output, std::ios::binary);
        if (!file) {
            std::cerr << "qmc: cannot write " << rc.output << "\n";
            return 2;
        }
        file << buf.str();
    }
    return code;
}
