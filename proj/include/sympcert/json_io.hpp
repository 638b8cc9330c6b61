#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sympcert/groebner.hpp"
#include "sympcert/poly.hpp"

namespace sympcert {

// Repo-wide polynomial file format:
//   {"order":"lex","vars":[...],"terms":[{"c":"p/q","e":[...]},...]}
// Terms are stored in canonical descending order; serialization is
// byte-deterministic (nlohmann keeps object keys sorted).
inline nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : p.terms()) {
        nlohmann::json e = nlohmann::json::array();
        for (std::size_t i = 0; i < kTableSize; ++i) e.push_back(int(t.m.e[i]));
        terms.push_back(nlohmann::json{{"c", to_string(t.c)}, {"e", e}});
    }
    return nlohmann::json{
        {"order", "lex"}, {"vars", VariableTable::instance().names()}, {"terms", terms}};
}

inline Poly poly_from_json(const nlohmann::json& j) {
    if (j.at("order").get<std::string>() != "lex")
        throw std::invalid_argument("unsupported order in polynomial file");
    auto vars = j.at("vars").get<std::vector<std::string>>();
    // map file columns onto the fixed table
    std::vector<std::size_t> remap(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) remap[i] = var_id(vars[i]);
    std::vector<Term> terms;
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.c = parse_rational(jt.at("c").get<std::string>());
        auto e = jt.at("e").get<std::vector<int>>();
        if (e.size() != vars.size())
            throw std::invalid_argument("exponent vector length mismatch in polynomial file");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] > 255)
                throw std::invalid_argument("exponent out of range in polynomial file");
            t.m.e[remap[i]] = std::uint8_t(e[i]);
        }
        terms.push_back(std::move(t));
    }
    return Poly::from_terms(std::move(terms));
}

inline nlohmann::json gb_to_json(const GroebnerBasis& gb) {
    nlohmann::json gens = nlohmann::json::array(), elems = nlohmann::json::array();
    for (const auto& g : gb.source_generators) gens.push_back(poly_to_json(g));
    for (const auto& g : gb.elements) elems.push_back(poly_to_json(g));
    return nlohmann::json{{"order", "lex"}, {"generators", gens}, {"elements", elems}};
}

inline GroebnerBasis gb_from_json(const nlohmann::json& j) {
    GroebnerBasis gb;
    if (j.at("order").get<std::string>() != "lex")
        throw std::invalid_argument("unsupported order in basis file");
    for (const auto& jp : j.at("generators")) gb.source_generators.push_back(poly_from_json(jp));
    for (const auto& jp : j.at("elements")) gb.elements.push_back(poly_from_json(jp));
    return gb;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Atomic write: tmp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << data;
        if (!out.good()) throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline nlohmann::json load_json(const std::filesystem::path& path) {
    return nlohmann::json::parse(read_file(path));
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string digest_hex(const std::string& data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

}  // namespace sympcert
