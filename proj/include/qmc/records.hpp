#ifndef QMC_RECORDS_HPP
#define QMC_RECORDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmc/linalg.hpp"
#include "qmc/poly.hpp"

namespace qmc {

using Json = nlohmann::json;

/// A field as given on input: defining polynomial and optional integral basis
/// (rows in power-basis coordinates).
struct FieldSource {
    IntPoly poly;
    std::optional<RatMat> basis;
};

/// F, k, the images of F's generator in k (power-basis coordinates of k) and the
/// ramification of B as (p, index).
struct InstanceSource {
    FieldSource F;
    FieldSource k;
    std::vector<RatPoly> embeddings;
    std::vector<std::pair<Integer, int>> ramified;
};

/// Parse a whole file as JSON; ParseError carries "file:line:col".
Json read_json_file(std::filesystem::path const& path);

FieldSource field_from_json(Json const& j);
Json field_to_json(FieldSource const& f);
FieldSource load_field(std::filesystem::path const& path);

/// Instance record; "F" and "k" may be inline objects or paths relative to the
/// instance file.
InstanceSource instance_from_json(Json const& j, std::filesystem::path const& base_dir = {});
Json instance_to_json(InstanceSource const& s);
InstanceSource load_instance(std::filesystem::path const& path);

Integer json_integer(Json const& j);
Rational json_rational(Json const& j);
Json int_json(Integer const& n);

/// Compact dump with sorted keys; what the digest is computed over.
std::string canonical_dump(Json const& j);
std::string sha256_hex(std::string const& data);

} // namespace qmc

#endif // QMC_RECORDS_HPP
