#include "qmc/records.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "qmc/errors.hpp"

namespace qmc {

namespace {

void line_col(std::string const& text, std::size_t byte, std::size_t& line, std::size_t& col)
{
    line = 1;
    col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

[[noreturn]] void bad(std::string const& msg) { throw Error(ErrorKind::ParseError, msg); }

Json const& need(Json const& j, char const* key)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

} // namespace

Json read_json_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        bad("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string const text = ss.str();
    try {
        return Json::parse(text);
    } catch (Json::parse_error const& e) {
        std::size_t line = 0, col = 0;
        line_col(text, e.byte, line, col);
        bad(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

Integer json_integer(Json const& j)
{
    try {
        if (j.is_number_integer())
            return Integer(j.get<long long>());
        if (j.is_string())
            return Integer(j.get<std::string>());
    } catch (std::exception const&) {
    }
    bad("expected an integer, got " + j.dump());
}

Rational json_rational(Json const& j)
{
    try {
        if (j.is_number_integer())
            return Rational(j.get<long long>());
        if (j.is_string())
            return Rational(j.get<std::string>());
    } catch (std::exception const&) {
    }
    bad("expected a rational, got " + j.dump());
}

Json int_json(Integer const& n) { return to_string(n); }

FieldSource field_from_json(Json const& j)
{
    FieldSource f;
    Json const& poly = need(j, "poly");
    if (!poly.is_array() || poly.size() < 2)
        bad("\"poly\" must list at least two coefficients");
    for (auto const& c : poly)
        f.poly.push_back(json_integer(c));
    int const n = degree(f.poly);
    if (n < 1 || f.poly.back() != 1)
        bad("\"poly\" must be monic of positive degree (constant term first)");
    if (j.contains("basis") && !j.at("basis").is_null()) {
        Json const& b = j.at("basis");
        if (!b.is_array() || static_cast<int>(b.size()) != n)
            bad("\"basis\" must have one row per degree");
        RatMat m(n, n);
        for (int r = 0; r < n; ++r) {
            if (!b[r].is_array() || static_cast<int>(b[r].size()) != n)
                bad("basis row " + std::to_string(r) + " has the wrong length");
            for (int c = 0; c < n; ++c)
                m(r, c) = json_rational(b[r][c]);
        }
        f.basis = m;
    }
    return f;
}

Json field_to_json(FieldSource const& f)
{
    Json j;
    j["poly"] = Json::array();
    for (auto const& c : f.poly)
        j["poly"].push_back(to_string(c));
    if (f.basis) {
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < f.basis->rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < f.basis->cols(); ++c)
                row.push_back(to_string((*f.basis)(r, c)));
            rows.push_back(row);
        }
        j["basis"] = rows;
    }
    return j;
}

FieldSource load_field(std::filesystem::path const& path)
{
    try {
        return field_from_json(read_json_file(path));
    } catch (Error const& e) {
        if (e.kind() == ErrorKind::ParseError && std::string(e.what()).find(path.string()) == std::string::npos)
            bad(path.string() + ": " + e.what());
        throw;
    }
}

InstanceSource instance_from_json(Json const& j, std::filesystem::path const& base_dir)
{
    auto field = [&](char const* key) {
        Json const& v = need(j, key);
        if (v.is_string())
            return load_field(base_dir / v.get<std::string>());
        return field_from_json(v);
    };
    InstanceSource s;
    s.F = field("F");
    s.k = field("k");
    for (auto const& e : need(j, "embeddings")) {
        RatPoly img;
        if (!e.is_array())
            bad("each embedding is a list of rationals");
        for (auto const& c : e)
            img.push_back(json_rational(c));
        trim(img);
        s.embeddings.push_back(img);
    }
    if (j.contains("ramified"))
        for (auto const& r : j.at("ramified")) {
            if (!r.is_array() || r.size() != 2)
                bad("ramified primes are [p, index] pairs");
            s.ramified.emplace_back(json_integer(r[0]), static_cast<int>(to_ll(json_integer(r[1]))));
        }
    return s;
}

Json instance_to_json(InstanceSource const& s)
{
    Json j;
    j["F"] = field_to_json(s.F);
    j["k"] = field_to_json(s.k);
    j["embeddings"] = Json::array();
    for (auto const& e : s.embeddings) {
        Json row = Json::array();
        for (auto const& c : e)
            row.push_back(to_string(c));
        j["embeddings"].push_back(row);
    }
    j["ramified"] = Json::array();
    for (auto const& [p, i] : s.ramified)
        j["ramified"].push_back(Json::array({to_string(p), std::to_string(i)}));
    return j;
}

InstanceSource load_instance(std::filesystem::path const& path)
{
    return instance_from_json(read_json_file(path), path.parent_path());
}

std::string canonical_dump(Json const& j) { return j.dump(); }

std::string sha256_hex(std::string const& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::PreconditionViolation, "sha256 failed");
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

} // namespace qmc
