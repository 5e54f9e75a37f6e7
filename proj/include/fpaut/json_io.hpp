#ifndef FPAUT_JSON_IO_HPP
#define FPAUT_JSON_IO_HPP

#include "fpaut/peaks.hpp"
#include "fpaut/presentation.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// JSON factor indices are 1-based; everything inside the library is 0-based.

namespace fpaut::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline std::string read_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// FNV-1a, enough to tell inputs apart in a report
inline std::string content_hash(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

namespace detail {

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline long as_int(const json& j, const char* what)
{
    if (!j.is_number_integer())
        throw input_error(std::string(what) + " must be an integer");
    return j.get<long>();
}

inline int factor_index(const FactorSystem& fs, const json& j)
{
    long k = as_int(j, "factor index");
    if (k < 1 || k > fs.n())
        throw input_error("factor index " + std::to_string(k) + " out of range 1.." + std::to_string(fs.n()));
    return static_cast<int>(k - 1);
}

} // namespace detail

// ----------------------------------------------------------- factor systems

inline FactorGroup factor_from_json(const json& j)
{
    std::string kind = detail::field(j, "kind").get<std::string>();
    if (kind == "cyclic")
        return FactorGroup::cyclic(detail::as_int(detail::field(j, "order"), "order"));
    if (kind == "z")
        return FactorGroup::integers();
    if (kind == "table") {
        std::vector<std::string> names;
        if (j.contains("elements"))
            for (const auto& e : j.at("elements"))
                names.push_back(e.is_string() ? e.get<std::string>() : e.dump());
        std::vector<std::vector<Elem>> t;
        for (const auto& row : detail::field(j, "table")) {
            std::vector<Elem> r;
            for (const auto& v : row)
                r.push_back(detail::as_int(v, "table entry"));
            t.push_back(r);
        }
        return FactorGroup::table(names, t);
    }
    throw input_error("unknown factor kind \"" + kind + "\"");
}

inline FactorSystem system_from_json(const json& j)
{
    std::vector<FactorGroup> f;
    for (const auto& g : detail::field(j, "factors"))
        f.push_back(factor_from_json(g));
    if (j.contains("n") && detail::as_int(j.at("n"), "n") != static_cast<long>(f.size()))
        throw input_error("\"n\" does not match the number of factors");
    return FactorSystem(std::move(f));
}

inline json to_json(const FactorSystem& fs)
{
    json fj = json::array();
    for (const auto& g : fs.factors()) {
        json o;
        switch (g.kind()) {
        case FactorKind::cyclic: o = {{"kind", "cyclic"}, {"order", g.order()}}; break;
        case FactorKind::integers: o = {{"kind", "z"}}; break;
        case FactorKind::table:
            o = {{"kind", "table"}};
            if (!g.element_names().empty())
                o["elements"] = g.element_names();
            o["table"] = g.cayley_table();
            break;
        }
        fj.push_back(o);
    }
    return {{"n", fs.n()}, {"factors", fj}};
}

// ----------------------------------------------------------- elements and words

inline Elem elem_from_json(const FactorGroup& g, const json& j)
{
    if (j.is_string()) {
        const auto& names = g.element_names();
        for (std::size_t a = 0; a < names.size(); ++a)
            if (names[a] == j.get<std::string>())
                return static_cast<Elem>(a);
        throw input_error("unknown element name " + j.dump());
    }
    Elem e = detail::as_int(j, "element");
    if (!g.valid(e))
        throw input_error("element " + std::to_string(e) + " out of range");
    return e;
}

inline GWord word_from_json(const FactorSystem& fs, const json& j)
{
    if (!j.is_array())
        throw input_error("a word is a list of [factor, element] pairs");
    GWord w;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 2)
            throw input_error("a syllable is a [factor, element] pair");
        int k = detail::factor_index(fs, s[0]);
        w.push_back({k, elem_from_json(fs.factor(k), s[1])});
    }
    return fs.normalize(w);
}

inline json to_json(const GWord& w)
{
    json j = json::array();
    for (const auto& s : w)
        j.push_back({s.f + 1, s.e});
    return j;
}

inline FactorAut factor_aut_from_json(const FactorGroup& g, const json& j)
{
    if (j.is_null())
        return g.identity_aut();
    FactorAut f = g.identity_aut();
    if (!g.finite()) {
        long s = detail::as_int(j, "automorphism of Z");
        if (s != 1 && s != -1)
            throw input_error("automorphism of Z is 1 or -1");
        f.sign = static_cast<int>(s);
    } else {
        if (!j.is_array() || static_cast<Elem>(j.size()) != g.order())
            throw input_error("finite factor automorphism is the list of images of all elements");
        for (std::size_t a = 0; a < j.size(); ++a)
            f.image[a] = elem_from_json(g, j[a]);
    }
    if (!g.is_automorphism(f))
        throw input_error("factor map is not an automorphism");
    return f;
}

inline json to_json(const FactorGroup& g, const FactorAut& f)
{
    if (!g.finite())
        return f.sign;
    return f.image;
}

inline std::vector<FactorAut> phis_from_json(const FactorSystem& fs, const json& j)
{
    if (!j.is_array() || static_cast<int>(j.size()) != fs.n())
        throw input_error("need one factor automorphism per factor");
    std::vector<FactorAut> r;
    for (int k = 0; k < fs.n(); ++k)
        r.push_back(factor_aut_from_json(fs.factor(k), j[k]));
    return r;
}

inline json phis_to_json(const FactorSystem& fs, const std::vector<FactorAut>& p)
{
    json j = json::array();
    for (int k = 0; k < fs.n(); ++k)
        j.push_back(to_json(fs.factor(k), p[k]));
    return j;
}

// ----------------------------------------------------------- automorphisms and domains

inline Labelling labelling_from_json(const FactorSystem& fs, const json& j)
{
    if (!j.is_array() || static_cast<int>(j.size()) != fs.n())
        throw input_error("need one conjugator per factor");
    Labelling l;
    for (const auto& w : j)
        l.push_back(word_from_json(fs, w));
    return l;
}

inline json to_json(const Labelling& l)
{
    json j = json::array();
    for (const auto& w : l)
        j.push_back(to_json(w));
    return j;
}

inline PureAut aut_from_json(const FactorSystem& fs, const json& j)
{
    std::vector<FactorAut> phi;
    if (j.contains("phis"))
        phi = phis_from_json(fs, j.at("phis"));
    else
        phi = identity_aut(fs).phi;
    return make_aut(fs, phi, labelling_from_json(fs, detail::field(j, "conjugators")));
}

inline json to_json(const FactorSystem& fs, const PureAut& a)
{
    return {{"phis", phis_to_json(fs, a.phi)}, {"conjugators", to_json(a.conj)}};
}

// {"labelling": [...]} or an automorphism {"phis", "conjugators"}
inline Domain domain_from_json(const FactorSystem& fs, const json& j)
{
    // descent only stalls when the conjugators do not come from an automorphism
    try {
        if (j.contains("labelling"))
            return domain_from_labelling(fs, labelling_from_json(fs, j.at("labelling")));
        return make_domain(fs, aut_from_json(fs, j));
    } catch (const search_exhausted& e) {
        throw input_error(std::string("not a pure symmetric automorphism: ") + e.what());
    }
}

// ----------------------------------------------------------- shapes and moves

inline ShapeInstance shape_from_json(int n, const json& j)
{
    ShapeInstance s;
    try {
        s.tag = tag_from_name(detail::field(j, "shape").get<std::string>());
    } catch (const json::exception&) {
        throw input_error("shape name must be a string");
    }
    if (j.contains("indices"))
        for (const auto& k : j.at("indices")) {
            long v = detail::as_int(k, "shape index");
            if (v < 1 || v > n)
                throw input_error("shape index out of range");
            s.idx.push_back(static_cast<int>(v - 1));
        }
    build_tree(n, s); // validates
    return s;
}

inline json to_json(const ShapeInstance& s)
{
    json idx = json::array();
    for (int k : s.idx)
        idx.push_back(k + 1);
    return {{"shape", tag_name(s.tag)}, {"indices", idx}};
}

// A part gives its element either as a word "x" in the current H_op or as an
// element "e" of G_op carried over by the domain's automorphism. A missing
// "base" means the current domain.
inline MultiMove move_from_json(const FactorSystem& fs, const Domain& d, const json& j)
{
    MultiMove m;
    m.base = j.contains("base") ? labelling_from_json(fs, j.at("base")) : d.labelling();
    if (m.base != d.labelling())
        throw input_error("move base is not the labelling of the current domain");
    m.op = detail::factor_index(fs, detail::field(j, "op_factor"));
    for (const auto& p : detail::field(j, "parts")) {
        Part part;
        for (const auto& a : detail::field(p, "leaves"))
            part.leaves.push_back(detail::factor_index(fs, a));
        if (p.contains("x"))
            part.x = word_from_json(fs, p.at("x"));
        else
            part.x = apply(fs, d.aut, fs.letter(m.op, elem_from_json(fs.factor(m.op), detail::field(p, "e"))));
        m.parts.push_back(part);
    }
    return normalize_move(fs, m);
}

inline json to_json(const MultiMove& m)
{
    json parts = json::array();
    for (const auto& p : m.parts) {
        json leaves = json::array();
        for (int a : p.leaves)
            leaves.push_back(a + 1);
        parts.push_back({{"leaves", leaves}, {"x", to_json(p.x)}});
    }
    return {{"base", to_json(m.base)}, {"op_factor", m.op + 1}, {"parts", parts}};
}

// ----------------------------------------------------------- generator words

inline GeneratorWord generator_word_from_json(const FactorSystem& fs, const json& j)
{
    if (!j.is_array())
        throw input_error("a generator word is a list of letters");
    GeneratorWord w;
    for (const auto& l : j) {
        if (l.contains("f")) {
            const auto& f = l.at("f");
            if (!f.is_array() || f.size() != 3)
                throw input_error("an f letter is [i, j, g]");
            int i = detail::factor_index(fs, f[0]);
            int k = detail::factor_index(fs, f[1]);
            w.push_back(f_letter(i, k, elem_from_json(fs.factor(i), f[2])));
        } else if (l.contains("phi")) {
            w.push_back(phi_letter(phis_from_json(fs, l.at("phi"))));
        } else {
            throw input_error("a letter is {\"f\": ...} or {\"phi\": ...}");
        }
        check_letter(fs, w.back());
    }
    return w;
}

inline json to_json(const FactorSystem& fs, const GeneratorWord& w)
{
    json j = json::array();
    for (const auto& l : w) {
        if (l.kind == Letter::F)
            j.push_back({{"f", {l.i + 1, l.j + 1, l.g}}});
        else
            j.push_back({{"phi", phis_to_json(fs, l.phi)}});
    }
    return j;
}

// ----------------------------------------------------------- reports

struct Report {
    std::string command;
    long seed = 0;
    json inputs = json::object();
    json results = json::array();
    json data = json::object();

    void add(const std::string& id, bool pass, json witness = nullptr)
    {
        json r = {{"id", id}, {"pass", pass}};
        r["witness"] = std::move(witness);
        results.push_back(std::move(r));
    }
    void add_input(const std::string& name, const std::string& path)
    {
        inputs[name] = {{"path", path}, {"fnv1a", content_hash(read_bytes(path))}};
    }
    bool all_pass() const
    {
        for (const auto& r : results)
            if (!r.at("pass").get<bool>())
                return false;
        return true;
    }
    json to_json(const std::string& version) const
    {
        json j = {{"command", command}, {"version", version}, {"seed", seed}, {"inputs", inputs}};
        j["results"] = results;
        if (!data.empty())
            j["data"] = data;
        return j;
    }
};

inline json witness_json(const FactorSystem& fs, const RelationReport& r)
{
    json w = {{"params", r.params}};
    if (r.witness) {
        w["lhs"] = to_json(fs, r.witness->first);
        w["rhs"] = to_json(fs, r.witness->second);
    }
    return w;
}

} // namespace fpaut::io

#endif
