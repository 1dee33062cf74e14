#ifndef QMC_CERTIFIER_HPP
#define QMC_CERTIFIER_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "qmc/class_group.hpp"
#include "qmc/cyclotomic.hpp"
#include "qmc/quaternion.hpp"
#include "qmc/records.hpp"
#include "qmc/weil_sets.hpp"

namespace qmc {

inline constexpr char const* tool_version = "qmc 1.0.0";
inline constexpr char const* certificate_format = "qmc-certificate/1";

struct SettingOptions {
    ClassGroupOptions class_group;
    PrecisionConfig precision = default_precision();
};

/// F, k, the embeddings and everything derived from the fields alone.
struct Setting {
    FieldSource F_source, k_source;
    std::vector<RatPoly> embedding_source;
    NumberField F, k;
    std::vector<EmbeddingIntoK> embeddings;
    CyclotomicInvariants cyc;
    ClassGroupData class_group_k;

    Integer const& h_exp() const { return class_group_k.h_exp; }
};

/// Checks: F totally real, k totally imaginary, [F:Q] distinct verified embeddings.
std::shared_ptr<Setting const> make_setting(FieldSource const& F, FieldSource const& k,
                                            std::vector<RatPoly> const& embeddings, SettingOptions const& opt = {});

struct TheoremInput {
    std::shared_ptr<Setting const> setting;
    std::vector<std::pair<Integer, int>> ramified_source;
    QuaternionData B;
    int u_computed = 2;
    /// u used in condition 4 (2 under strict_abstract)
    int u = 2;
    bool strict_abstract = false;
};

TheoremInput make_theorem_input(std::shared_ptr<Setting const> setting,
                                std::vector<std::pair<Integer, int>> const& ramified, bool strict_abstract = false);

struct ConditionResult {
    bool evaluated = false;
    bool holds = false;
    Json evidence = Json::object();
};

struct ConditionReport {
    /// conditions 1..6 at positions 0..5
    std::array<ConditionResult, 6> c;
    std::string reason;

    bool witness() const;
    Json to_json() const;
};

/// Evaluates 1, 2, 6, 5, 4, 3 in that order; with short_circuit the first
/// failure stops the evaluation. A table, when given, must be the one for
/// (q_k, in.u).
ConditionReport check_conditions(TheoremInput const& in, PrimeIdeal const& q_k, PrimeIdeal const& p_F,
                                 bool short_circuit = true, QTable const* table = nullptr);

/// gcd(2 r, f(P)) = r for every prime P of k above p, r = f(p_F).
bool inertia_gcd_condition(NumberField const& k, PrimeIdeal const& p_F, Json* evidence = nullptr);

Json make_certificate(TheoremInput const& in, PrimeIdeal const& q_k, PrimeIdeal const& p_F,
                      ConditionReport const& report);

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

/// Rebuilds everything from the echoed input and reruns all six conditions.
/// ParseError for structurally broken certificates.
VerifyResult verify_certificate(Json const& cert, SettingOptions const& opt = {});

struct SearchResult {
    std::vector<Json> certificates;
    /// candidates whose evaluation hit a budget, as "q,index / p,index: message"
    std::vector<std::string> skipped;
};

/// Witness pairs with q <= q_bound, canonical order (q, index of q_k, p_F).
SearchResult search_witness(TheoremInput const& in, Integer const& q_bound, unsigned workers = 1);

struct RPair {
    PrimeIdeal q_k;
    PrimeIdeal p_F;
};

/// Pairs of R(u) with q <= q_bound and p <= p_bound.
std::vector<RPair> enumerate_R(Setting const& s, int u, Integer const& q_bound, Integer const& p_bound,
                               unsigned workers = 1);

bool in_R(Setting const& s, int u, PrimeIdeal const& q_k, PrimeIdeal const& p_F, QTable const* table = nullptr);

struct Suggestion {
    std::vector<std::pair<Integer, int>> ramified;
    Integer disc_norm;
    ConditionReport report;
};

/// Even ramification sets S containing p_F with N(prod S) <= size_bound, some
/// member split in F(sqrt(-q)) and q not dividing N(prod S); each passes
/// check_conditions. Throws NoCandidateWithinBound if none does.
std::vector<Suggestion> suggest_discriminants(std::shared_ptr<Setting const> setting, PrimeIdeal const& q_k,
                                              PrimeIdeal const& p_F, Integer const& size_bound,
                                              bool strict_abstract = false, unsigned workers = 1);

/// Prime of a field by (p, index).
PrimeIdeal prime_by_index(NumberField const& K, Integer const& p, int index);

/// "p" or "(p,i)"
std::string label(NumberField const& K, PrimeIdeal const& P);

} // namespace qmc

#endif // QMC_CERTIFIER_HPP
