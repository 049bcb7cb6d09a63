#pragma once

// JSON documents for every domain type. Parsing reports the path of the
// offending field; serialize then parse is the identity.

#include "holant/dichotomy.hpp"
#include "holant/fkt.hpp"
#include "holant/grid.hpp"
#include "holant/transform.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <regex>
#include <sstream>

namespace holant::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) { throw ParseError(path, what); }

inline const json& at(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field \"" + key + "\"");
    return *it;
}

inline int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(path, "integer out of range");
    return static_cast<int>(v);
}

inline std::vector<int> as_int_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_int(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

inline const std::string& as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get_ref<const std::string&>();
}

inline BigRational parse_rational(const std::string& s, const std::string& path) {
    static const std::regex re(R"(^([+-]?\d+)(/(\d+))?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) fail(path, "bad rational \"" + s + "\"");
    BigInt num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
    BigInt den(m[3].matched ? m[3].str() : std::string("1"));
    if (den == 0) fail(path, "zero denominator in \"" + s + "\"");
    return BigRational(num, den);
}

// Sums of terms c, c*i, i, c*z^k, z^k as printed by Scalar::to_string.
inline Scalar parse_scalar_text(const std::string& text, const std::string& path) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(path, "empty scalar");
    static const std::regex term(R"(([+-]?)(\d+(?:/\d+)?)?(\*?(z\^[0-3]|i|z))?)");
    std::array<BigRational, 4> c{};
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::smatch m;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous) || m.length(0) == 0 ||
            (!m[2].matched && !m[4].matched) || (pos > 0 && !m[1].matched) || (pos > 0 && m[1].length() == 0) ||
            (m[3].matched && m[3].str()[0] == '*' && !m[2].matched))
            fail(path, "bad scalar \"" + text + "\"");
        BigRational coef = m[2].matched ? parse_rational(m[2].str(), path) : BigRational(1);
        if (m[1].str() == "-") coef = -coef;
        int slot = 0;
        if (m[4].matched) {
            std::string b = m[4].str();
            slot = b == "i" ? 2 : b == "z" ? 1 : b.back() - '0';
        }
        c[static_cast<std::size_t>(slot)] += coef;
        pos += static_cast<std::size_t>(m.length(0));
    }
    return Scalar::from_coefficients(c);
}

inline std::string rational_text(const BigRational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

} // namespace detail

// ---------------------------------------------------------------- scalars

// Integers in int64 range are plain numbers; everything else is the basis form
// [c0, c1, c2, c3] over 1, zeta8, zeta8^2 = i, zeta8^3 with rational strings.
inline json to_json(const Scalar& s) {
    if (s.is_rational()) {
        BigRational q = s.coefficient(0);
        if (denominator(q) == 1 && numerator(q) >= std::numeric_limits<long long>::min() && numerator(q) <= std::numeric_limits<long long>::max())
            return static_cast<long long>(numerator(q));
    }
    json a = json::array();
    for (const auto& c : s.coefficients()) a.push_back(detail::rational_text(c));
    return a;
}

inline Scalar parse_scalar(const json& j, const std::string& path = "") {
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    if (j.is_number()) detail::fail(path, "non-integer numbers are not exact; write \"p/q\"");
    if (j.is_string()) return detail::parse_scalar_text(j.get<std::string>(), path);
    if (j.is_array()) {
        if (j.size() != 4) detail::fail(path, "basis form needs 4 coefficients");
        std::array<BigRational, 4> c;
        for (std::size_t k = 0; k < 4; ++k) {
            std::string p = path + "[" + std::to_string(k) + "]";
            if (j[k].is_number_integer())
                c[k] = BigRational(j[k].get<long long>());
            else if (j[k].is_string())
                c[k] = detail::parse_rational(j[k].get<std::string>(), p);
            else
                detail::fail(p, "expected an integer or a \"p/q\" string");
        }
        return Scalar::from_coefficients(c);
    }
    detail::fail(path, "expected a scalar");
}

// ---------------------------------------------------------------- signatures

inline json to_json(const Signature& f) {
    json v = json::array();
    for (const auto& x : f.values()) v.push_back(to_json(x));
    return json{{"arity", f.arity()}, {"values", v}};
}

// {"arity": n, "values": [...]} with 2^n entries, or {"symmetric": [f0..fn]}.
inline Signature parse_signature(const json& j, const std::string& path = "") {
    if (!j.is_object()) detail::fail(path, "expected a signature object");
    if (j.contains("symmetric")) {
        const json& w = j["symmetric"];
        std::string p = path + ".symmetric";
        if (!w.is_array() || w.empty()) detail::fail(p, "expected a nonempty array");
        if (w.size() - 1 > static_cast<std::size_t>(kMaxArity)) detail::fail(p, "arity above " + std::to_string(kMaxArity));
        std::vector<Scalar> v;
        for (std::size_t k = 0; k < w.size(); ++k) v.push_back(parse_scalar(w[k], p + "[" + std::to_string(k) + "]"));
        return Signature::symmetric(v);
    }
    int n = detail::as_int(detail::at(j, "arity", path), path + ".arity");
    if (n < 0 || n > kMaxArity) detail::fail(path + ".arity", "arity must be in [0, " + std::to_string(kMaxArity) + "]");
    const json& w = detail::at(j, "values", path);
    std::string p = path + ".values";
    if (!w.is_array() || w.size() != (std::size_t{1} << n)) detail::fail(p, "expected " + std::to_string(1u << n) + " values");
    std::vector<Scalar> v;
    for (std::size_t k = 0; k < w.size(); ++k) v.push_back(parse_scalar(w[k], p + "[" + std::to_string(k) + "]"));
    return Signature(n, std::move(v));
}

// ---------------------------------------------------------------- registry

inline json to_json(const Registry& r) {
    json a = json::array();
    for (std::size_t k = 0; k < r.size(); ++k) a.push_back({{"name", r.names[k]}, {"signature", to_json(r.sigs[k])}});
    return a;
}

inline Registry parse_registry(const json& j, const std::string& path) {
    if (!j.is_array()) detail::fail(path, "expected an array of named signatures");
    Registry r;
    for (std::size_t k = 0; k < j.size(); ++k) {
        std::string p = path + "[" + std::to_string(k) + "]";
        const std::string& name = detail::as_string(detail::at(j[k], "name", p), p + ".name");
        if (r.find(name) >= 0) detail::fail(p + ".name", "duplicate name \"" + name + "\"");
        r.add(name, parse_signature(detail::at(j[k], "signature", p), p + ".signature"));
    }
    return r;
}

// FNV-1a over the canonical serialization.
inline std::string registry_hash(const Registry& r) {
    std::string text = to_json(r).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace detail {

// "signatures" inline, or "registry_file" naming a registry document; an
// optional "registry_hash" must match.
inline Registry document_registry(const json& j, const std::string& base_dir) {
    Registry r;
    if (j.contains("registry_file")) {
        std::string file = as_string(j["registry_file"], ".registry_file");
        std::string full = file.empty() || file[0] == '/' || base_dir.empty() ? file : base_dir + "/" + file;
        std::ifstream in(full);
        if (!in) fail(".registry_file", "cannot open " + full);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            fail(".registry_file", std::string("malformed JSON in ") + full + ": " + e.what());
        }
        r = parse_registry(doc.is_object() ? at(doc, "signatures", "") : doc, full);
    }
    if (j.contains("signatures")) {
        Registry own = parse_registry(j["signatures"], ".signatures");
        for (std::size_t k = 0; k < own.size(); ++k) {
            if (r.find(own.names[k]) >= 0) fail(".signatures", "\"" + own.names[k] + "\" also defined in the registry file");
            r.add(own.names[k], own.sigs[k]);
        }
    }
    if (j.contains("registry_hash")) {
        const std::string& want = as_string(j["registry_hash"], ".registry_hash");
        if (want != registry_hash(r)) fail(".registry_hash", "registry changed: expected " + want + ", found " + registry_hash(r));
    }
    return r;
}

inline int sig_index(const Registry& r, const json& j, const std::string& path) {
    const std::string& name = as_string(j, path);
    int k = r.find(name);
    if (k < 0) fail(path, "unknown signature \"" + name + "\"");
    return k;
}

} // namespace detail

// ---------------------------------------------------------------- grids

inline json to_json(const SignatureGrid& g) {
    json vs = json::array();
    for (const auto& v : g.vertices) {
        json o{{"sig", g.registry.names[static_cast<std::size_t>(v.sig)]}, {"edges", v.edges}};
        if (v.side >= 0) o["side"] = v.side;
        vs.push_back(std::move(o));
    }
    json out{{"signatures", to_json(g.registry)}, {"registry_hash", registry_hash(g.registry)}, {"edges", g.num_edges}, {"vertices", vs}};
    if (!g.dangling.empty()) out["dangling"] = g.dangling;
    return out;
}

inline SignatureGrid parse_grid(const json& j, const std::string& base_dir = "") {
    SignatureGrid g;
    g.registry = detail::document_registry(j, base_dir);
    g.num_edges = detail::as_int(detail::at(j, "edges", ""), ".edges");
    const json& vs = detail::at(j, "vertices", "");
    if (!vs.is_array()) detail::fail(".vertices", "expected an array");
    for (std::size_t k = 0; k < vs.size(); ++k) {
        std::string p = ".vertices[" + std::to_string(k) + "]";
        int s = detail::sig_index(g.registry, detail::at(vs[k], "sig", p), p + ".sig");
        auto edges = detail::as_int_list(detail::at(vs[k], "edges", p), p + ".edges");
        int side = vs[k].contains("side") ? detail::as_int(vs[k]["side"], p + ".side") : -1;
        if (side < -1 || side > 1) detail::fail(p + ".side", "side must be 0 or 1");
        g.add_vertex(s, edges, side);
    }
    if (j.contains("dangling")) g.dangling = detail::as_int_list(j["dangling"], ".dangling");
    try {
        g.validate();
    } catch (const DomainError& e) {
        detail::fail("", e.what());
    }
    return g;
}

// ---------------------------------------------------------------- #CSP

inline json to_json(const CspInstance& inst) {
    json cs = json::array();
    for (const auto& c : inst.constraints) cs.push_back({{"sig", inst.registry.names[static_cast<std::size_t>(c.sig)]}, {"on", c.on}});
    return json{{"signatures", to_json(inst.registry)}, {"registry_hash", registry_hash(inst.registry)}, {"vars", inst.vars}, {"constraints", cs}};
}

inline CspInstance parse_csp(const json& j, const std::string& base_dir = "") {
    CspInstance inst;
    inst.registry = detail::document_registry(j, base_dir);
    inst.vars = detail::as_int(detail::at(j, "vars", ""), ".vars");
    const json& cs = detail::at(j, "constraints", "");
    if (!cs.is_array()) detail::fail(".constraints", "expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
        std::string p = ".constraints[" + std::to_string(k) + "]";
        int s = detail::sig_index(inst.registry, detail::at(cs[k], "sig", p), p + ".sig");
        inst.constraints.push_back({s, detail::as_int_list(detail::at(cs[k], "on", p), p + ".on")});
    }
    try {
        inst.validate();
    } catch (const DomainError& e) {
        detail::fail("", e.what());
    }
    return inst;
}

// ---------------------------------------------------------------- signature sets

// An array of signatures, or {"signatures": [...]} whose items are signatures
// or {"name", "signature"} pairs.
inline std::vector<Signature> parse_signature_set(const json& j) {
    const json* arr = &j;
    std::string base;
    if (j.is_object()) {
        arr = &detail::at(j, "signatures", "");
        base = ".signatures";
    }
    if (!arr->is_array()) detail::fail(base, "expected an array of signatures");
    std::vector<Signature> out;
    for (std::size_t k = 0; k < arr->size(); ++k) {
        std::string p = base + "[" + std::to_string(k) + "]";
        const json& item = (*arr)[k];
        out.push_back(item.is_object() && item.contains("signature") ? parse_signature(item["signature"], p + ".signature")
                                                                     : parse_signature(item, p));
    }
    return out;
}

inline json to_json(const std::vector<Signature>& F) {
    json a = json::array();
    for (const auto& f : F) a.push_back(to_json(f));
    return json{{"signatures", a}};
}

// ---------------------------------------------------------------- transforms

inline json to_json(const Transform2x2& t) { return json::array({json::array({to_json(t.a), to_json(t.b)}), json::array({to_json(t.c), to_json(t.d)})}); }

// [[a, b], [c, d]]
inline Transform2x2 parse_transform(const json& j, const std::string& path = "") {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
        detail::fail(path, "expected [[a, b], [c, d]]");
    return {parse_scalar(j[0][0], path + "[0][0]"), parse_scalar(j[0][1], path + "[0][1]"), parse_scalar(j[1][0], path + "[1][0]"),
            parse_scalar(j[1][1], path + "[1][1]")};
}

// ---------------------------------------------------------------- graphs and fragments

inline json to_json(const PlanarGraph& g) {
    json es = json::array();
    for (const auto& e : g.edges) es.push_back({{"u", e.u}, {"v", e.v}, {"w", to_json(e.w)}});
    return json{{"vertices", g.n}, {"edges", es}, {"rotation", g.rotation}};
}

inline PlanarGraph parse_planar_graph(const json& j, const std::string& path = "") {
    PlanarGraph g;
    g.n = detail::as_int(detail::at(j, "vertices", path), path + ".vertices");
    if (g.n < 0) detail::fail(path + ".vertices", "negative vertex count");
    const json& es = detail::at(j, "edges", path);
    if (!es.is_array()) detail::fail(path + ".edges", "expected an array");
    for (std::size_t k = 0; k < es.size(); ++k) {
        std::string p = path + ".edges[" + std::to_string(k) + "]";
        int u = detail::as_int(detail::at(es[k], "u", p), p + ".u");
        int v = detail::as_int(detail::at(es[k], "v", p), p + ".v");
        Scalar w = es[k].contains("w") ? parse_scalar(es[k]["w"], p + ".w") : Scalar(1);
        g.add_edge(u, v, w);
    }
    if (j.contains("rotation")) {
        const json& r = j["rotation"];
        if (!r.is_array()) detail::fail(path + ".rotation", "expected an array");
        for (std::size_t k = 0; k < r.size(); ++k) g.rotation.push_back(detail::as_int_list(r[k], path + ".rotation[" + std::to_string(k) + "]"));
    }
    return g;
}

inline json to_json(const MatchgateFragment& f) {
    json j = to_json(f.graph);
    j["dangling"] = f.dangling;
    return j;
}

inline MatchgateFragment parse_fragment(const json& j, const std::string& path = "") {
    MatchgateFragment f;
    f.graph = parse_planar_graph(j, path);
    f.dangling = detail::as_int_list(detail::at(j, "dangling", path), path + ".dangling");
    try {
        f.validate();
    } catch (const DomainError& e) {
        detail::fail(path, e.what());
    }
    return f;
}

// {"entries": [{"name", "signature", "fragment"}]}; every entry is verified.
inline json library_to_json(const std::vector<LibraryEntry>& lib) {
    json es = json::array();
    for (const auto& e : lib) es.push_back({{"name", e.name}, {"signature", to_json(e.sig)}, {"fragment", to_json(e.fragment)}});
    return json{{"entries", es}};
}

inline std::vector<LibraryEntry> parse_library(const json& j) {
    const json& es = detail::at(j, "entries", "");
    if (!es.is_array()) detail::fail(".entries", "expected an array");
    std::vector<LibraryEntry> out;
    for (std::size_t k = 0; k < es.size(); ++k) {
        std::string p = ".entries[" + std::to_string(k) + "]";
        LibraryEntry e{detail::as_string(detail::at(es[k], "name", p), p + ".name"),
                       parse_signature(detail::at(es[k], "signature", p), p + ".signature"),
                       parse_fragment(detail::at(es[k], "fragment", p), p + ".fragment")};
        try {
            validate_entry(e);
        } catch (const DomainError& err) {
            detail::fail(p, err.what());
        }
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------- verdicts

inline json to_json(const DichotomyVerdict& v) {
    json holding = json::array(), wit = json::array();
    for (auto c : v.holding) holding.push_back(to_string(c));
    for (const auto& w : v.witnesses) wit.push_back({{"class", to_string(w.cls)}, {"index", w.index}, {"evidence", w.evidence}});
    return json{{"category", to_string(v.category)}, {"holding", holding}, {"witnesses", wit}};
}

inline DichotomyVerdict parse_verdict(const json& j) {
    auto category = [](const std::string& s) -> std::optional<Category> {
        for (auto c : {Category::PTime, Category::PlanarPTimeOnly, Category::SharpPHard})
            if (s == to_string(c)) return c;
        return std::nullopt;
    };
    auto cls = [](const std::string& s, const std::string& path) {
        for (auto c : {TractableClass::Affine, TractableClass::Product, TractableClass::MatchgateHat, TractableClass::AffineDagger,
                       TractableClass::MatchgateHatDagger})
            if (s == to_string(c)) return c;
        detail::fail(path, "unknown class \"" + s + "\"");
    };
    DichotomyVerdict v;
    auto c = category(detail::as_string(detail::at(j, "category", ""), ".category"));
    if (!c) detail::fail(".category", "unknown category");
    v.category = *c;
    const json& h = detail::at(j, "holding", "");
    if (!h.is_array()) detail::fail(".holding", "expected an array");
    for (std::size_t k = 0; k < h.size(); ++k) {
        std::string p = ".holding[" + std::to_string(k) + "]";
        v.holding.push_back(cls(detail::as_string(h[k], p), p));
    }
    const json& w = detail::at(j, "witnesses", "");
    if (!w.is_array()) detail::fail(".witnesses", "expected an array");
    for (std::size_t k = 0; k < w.size(); ++k) {
        std::string p = ".witnesses[" + std::to_string(k) + "]";
        v.witnesses.push_back({cls(detail::as_string(detail::at(w[k], "class", p), p + ".class"), p + ".class"),
                               detail::as_int(detail::at(w[k], "index", p), p + ".index"),
                               detail::as_string(detail::at(w[k], "evidence", p), p + ".evidence")});
    }
    return v;
}

// ---------------------------------------------------------------- files

inline json read_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(file, std::string("malformed JSON: ") + e.what());
    }
}

inline std::string directory_of(const std::string& file) {
    auto slash = file.find_last_of('/');
    return slash == std::string::npos ? std::string() : file.substr(0, slash);
}

} // namespace holant::io
