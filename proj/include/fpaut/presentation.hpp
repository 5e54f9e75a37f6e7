#ifndef FPAUT_PRESENTATION_HPP
#define FPAUT_PRESENTATION_HPP

#include "fpaut/shapes.hpp"

#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fpaut {

// F(i,j,g) is f_{i_j}(g); PHI is an element of the product of the Aut(G_k)
struct Letter {
    enum Kind { F, PHI } kind = F;
    int i = 0, j = 0;
    Elem g = 0;
    std::vector<FactorAut> phi;
    bool operator==(const Letter&) const = default;
};

using GeneratorWord = std::vector<Letter>;

inline Letter f_letter(int i, int j, Elem g) { return {Letter::F, i, j, g, {}}; }
inline Letter phi_letter(std::vector<FactorAut> phi) { return {Letter::PHI, 0, 0, 0, std::move(phi)}; }

inline void check_letter(const FactorSystem& fs, const Letter& l)
{
    if (l.kind == Letter::F) {
        if (l.i < 0 || l.i >= fs.n() || l.j < 0 || l.j >= fs.n() || l.i == l.j)
            throw input_error("F letter needs distinct factor indices in range");
        if (!fs.factor(l.i).valid(l.g))
            throw input_error("F letter element out of range");
    } else {
        if (static_cast<int>(l.phi.size()) != fs.n())
            throw input_error("PHI letter has the wrong length");
        for (int k = 0; k < fs.n(); ++k)
            if (!fs.factor(k).is_automorphism(l.phi[k]))
                throw input_error("PHI letter component is not an automorphism");
    }
}

inline PureAut letter_aut(const FactorSystem& fs, const Letter& l)
{
    check_letter(fs, l);
    if (l.kind == Letter::F)
        return f_gen(fs, l.i, l.j, l.g);
    return factor_aut(fs, l.phi);
}

inline PureAut eval_generator_word(const FactorSystem& fs, const GeneratorWord& w)
{
    PureAut a = identity_aut(fs);
    for (const auto& l : w)
        a = compose(fs, a, letter_aut(fs, l));
    return canonicalize_aut(fs, a);
}

inline std::string show(const FactorSystem& fs, const Letter& l)
{
    if (l.kind == Letter::F)
        return "f" + std::to_string(l.i + 1) + "_" + std::to_string(l.j + 1) + "(" + fs.factor(l.i).name(l.g) + ")";
    std::string s = "phi(";
    for (int k = 0; k < fs.n(); ++k) {
        if (k)
            s += ",";
        const auto& f = l.phi[k];
        if (!fs.factor(k).finite()) {
            s += f.sign > 0 ? "+" : "-";
            continue;
        }
        s += "[";
        for (std::size_t x = 0; x < f.image.size(); ++x)
            s += (x ? " " : "") + fs.factor(k).name(f.image[x]);
        s += "]";
    }
    return s + ")";
}

inline std::string show(const FactorSystem& fs, const GeneratorWord& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (const auto& l : w)
        s += (s.empty() ? "" : " ") + show(fs, l);
    return s;
}

struct RelationReport {
    std::string id;
    std::string params;
    bool pass = true;
    std::optional<std::pair<PureAut, PureAut>> witness; // both sides, on failure
};

// elements used to instantiate relations over G_k
inline std::vector<Elem> sample_elements(const FactorGroup& g)
{
    if (!g.finite())
        return {-2, -1, 0, 1, 2};
    if (g.order() <= 12)
        return g.elements();
    std::vector<Elem> r{0};
    for (Elem e : g.generators())
        r.push_back(e);
    return r;
}

// Phi samples: each generator of each Aut(G_k), other components trivial
inline std::vector<std::vector<FactorAut>> sample_phis(const FactorSystem& fs)
{
    std::vector<std::vector<FactorAut>> out;
    std::vector<FactorAut> id;
    for (int k = 0; k < fs.n(); ++k)
        id.push_back(fs.factor(k).identity_aut());
    for (int k = 0; k < fs.n(); ++k)
        for (const auto& f : fs.factor(k).automorphism_generators()) {
            auto p = id;
            p[k] = f;
            out.push_back(p);
        }
    return out;
}

inline std::vector<FactorAut> phi_inverse(const FactorSystem& fs, const std::vector<FactorAut>& p)
{
    std::vector<FactorAut> r;
    for (int k = 0; k < fs.n(); ++k)
        r.push_back(fs.factor(k).inverse(p[k]));
    return r;
}

namespace detail {

struct Recorder {
    const FactorSystem& fs;
    std::vector<RelationReport>& out;

    void equal(const std::string& id, const std::string& params, const PureAut& a, const PureAut& b)
    {
        RelationReport r{id, params, outer_equal(fs, a, b), std::nullopt};
        if (!r.pass)
            r.witness = std::make_pair(canonicalize_aut(fs, a), canonicalize_aut(fs, b));
        out.push_back(std::move(r));
    }
    void commute(const std::string& id, const std::string& params, const PureAut& a, const PureAut& b)
    {
        equal(id, params, compose(fs, a, b), compose(fs, b, a));
    }
    void truth(const std::string& id, const std::string& params, bool ok, const PureAut& a)
    {
        RelationReport r{id, params, ok, std::nullopt};
        if (!ok)
            r.witness = std::make_pair(canonicalize_aut(fs, a), identity_aut(fs));
        out.push_back(std::move(r));
    }
};

inline std::string ps(std::initializer_list<std::pair<const char*, long>> kv)
{
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : kv) {
        os << (first ? "" : " ") << k << "=" << v;
        first = false;
    }
    return os.str();
}

} // namespace detail

enum class PresentationCase { n5, n4, n3 };

inline PresentationCase case_for(int n)
{
    return n >= 5 ? PresentationCase::n5 : n == 4 ? PresentationCase::n4 : PresentationCase::n3;
}

inline std::string case_name(PresentationCase c)
{
    return c == PresentationCase::n5 ? "n5" : c == PresentationCase::n4 ? "n4" : "n3";
}

// Relations of the presentation for the given case, instantiated over samples.
// Indices in params are 1-based.
inline std::vector<RelationReport> check_relations(const FactorSystem& fs, PresentationCase pc)
{
    const int n = fs.n();
    if (case_for(n) != pc)
        throw input_error("relation case " + case_name(pc) + " does not match n = " + std::to_string(n));
    std::vector<RelationReport> out;
    detail::Recorder rec{fs, out};
    using detail::ps;
    auto f = [&](int i, int j, Elem g) { return f_gen(fs, i, j, g); };
    std::vector<std::vector<Elem>> S(n);
    for (int k = 0; k < n; ++k)
        S[k] = sample_elements(fs.factor(k));
    const auto phis = sample_phis(fs);

    std::string r_prod, r_phi;
    if (pc == PresentationCase::n5) {
        r_prod = "4";
        r_phi = "5";
    } else if (pc == PresentationCase::n4) {
        r_prod = "3";
        r_phi = "4";
    } else {
        r_prod = "2";
        r_phi = "3";
    }

    // [f_{i_j}(g), f_{i_k}(h)] = 1
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (j == i || k == i)
                    continue;
                for (Elem g : S[i])
                    for (Elem h : S[i])
                        rec.commute("1", ps({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"g", g}, {"h", h}}),
                                    f(i, j, g), f(i, k, h));
            }

    if (pc != PresentationCase::n3) {
        // [f_{i_j}(g), f_{k_l}(h)] = 1, all distinct
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = i + 1; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        std::set<int> d{i, j, k, l};
                        if (d.size() < 4)
                            continue;
                        for (Elem g : S[i])
                            for (Elem h : S[k])
                                rec.commute("2",
                                            ps({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"l", l + 1}, {"g", g},
                                                {"h", h}}),
                                            f(i, j, g), f(k, l, h));
                    }
    }

    if (pc == PresentationCase::n5) {
        // [f_{j_k}(g), f_{i_j}(h) f_{i_k}(h)] = 1
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k)
                        continue;
                    for (Elem g : S[j])
                        for (Elem h : S[i])
                            rec.commute("3",
                                        ps({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"g", g}, {"h", h}}),
                                        f(j, k, g), compose(fs, f(i, j, h), f(i, k, h)));
                }
    }

    // f_{i_v1}(g) ... f_{i_v(n-1)}(g) = ad_{G_i}(g)
    for (int i = 0; i < n; ++i)
        for (Elem g : S[i]) {
            PureAut p = identity_aut(fs);
            for (int v = 0; v < n; ++v)
                if (v != i)
                    p = compose(fs, p, f(i, v, g));
            rec.equal(r_prod, ps({{"i", i + 1}, {"g", g}}), p, ad_aut(fs, i, g));
        }

    // phi^-1 f_{i_j}(g) phi = f_{i_j}(phi(g))
    for (std::size_t t = 0; t < phis.size(); ++t) {
        PureAut ph = factor_aut(fs, phis[t]);
        PureAut phinv = factor_aut(fs, phi_inverse(fs, phis[t]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                for (Elem g : S[i])
                    rec.equal(r_phi,
                              ps({{"phi", static_cast<long>(t)}, {"i", i + 1}, {"j", j + 1}, {"g", g}}),
                              compose_all(fs, {phinv, f(i, j, g), ph}),
                              f(i, j, fs.factor(i).apply(phis[t][i], g)));
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// vertex stabilizers

// i_B(g): every G_b, b in B, conjugated as by f_{i_b}(g)
inline PureAut block_aut(const FactorSystem& fs, int i, const std::vector<int>& b, Elem g)
{
    return whitehead(fs, b, i, fs.factor(i).inv(g));
}

struct StabilizerData {
    int centre = -1;                             // i for families with an i-block decomposition
    std::vector<std::vector<int>> blocks;         // i-blocks
    std::vector<std::pair<int, int>> extra;       // a_b factors (operating factor, leaf)
    bool phi = true;
};

// generators of the stabilizer as listed for each family
inline StabilizerData stabilizer_data(int n, const ShapeInstance& s)
{
    const auto& x = s.idx;
    StabilizerData d;
    auto rest = [&](std::initializer_list<int> used) {
        std::vector<std::vector<int>> r;
        for (int v = 0; v < n; ++v)
            if (std::find(used.begin(), used.end(), v) == used.end())
                r.push_back({v});
        return r;
    };
    switch (s.tag) {
    case ShapeTag::alpha:
    case ShapeTag::rho: break;
    case ShapeTag::beta:
    case ShapeTag::tau: d.extra = {{x[0], x[1]}}; break;
    case ShapeTag::epsilon: d.extra = {{x[0], x[1]}, {x[2], x[3]}}; break;
    case ShapeTag::A:
        d.centre = x[0];
        d.blocks = rest({x[0]});
        break;
    case ShapeTag::gamma:
        d.centre = x[0];
        d.blocks = rest({x[0], x[1], x[2]});
        d.blocks.insert(d.blocks.begin(), {x[1], x[2]});
        break;
    case ShapeTag::sigma:
        d.centre = x[0];
        d.blocks = rest({x[0], x[1], x[2], x[3], x[4]});
        d.blocks.insert(d.blocks.begin(), {{x[1], x[2]}, {x[3], x[4]}});
        break;
    case ShapeTag::B:
        d.centre = x[0];
        d.blocks = rest({x[0], x[1], x[2]});
        d.blocks.insert(d.blocks.begin(), {x[1], x[2]});
        d.extra = {{x[1], x[2]}};
        break;
    case ShapeTag::delta:
        d.centre = x[0];
        d.blocks = rest({x[0], x[1], x[2], x[3], x[4]});
        d.blocks.insert(d.blocks.begin(), {{x[1], x[2]}, {x[3], x[4]}});
        d.extra = {{x[1], x[2]}};
        break;
    case ShapeTag::C:
        d.centre = x[0];
        d.blocks = rest({x[0], x[1], x[2], x[3], x[4]});
        d.blocks.insert(d.blocks.begin(), {{x[1], x[2]}, {x[3], x[4]}});
        d.extra = {{x[1], x[2]}, {x[3], x[4]}};
        break;
    }
    return d;
}

// Does the single letter f_{a_b}(g), g != 1, belong to the listed stabilizer?
inline bool predicted_single_member(const StabilizerData& d, int a, int b)
{
    for (auto [p, q] : d.extra)
        if (p == a && q == b)
            return true;
    if (a == d.centre)
        for (const auto& blk : d.blocks)
            if (blk.size() == 1 && blk[0] == b)
                return true;
    return false;
}

inline std::vector<RelationReport> check_stabilizer(const FactorSystem& fs, const ShapeInstance& s)
{
    const int n = fs.n();
    std::vector<RelationReport> out;
    detail::Recorder rec{fs, out};
    using detail::ps;
    const ShapeTree tree = build_tree(n, s);
    const LabelledVertex v = base_vertex(fs, s);
    auto fixes = [&](const PureAut& a) { return same_vertex(fs, v, apply_outer(fs, v, a)); };
    const auto d = stabilizer_data(n, s);
    const auto phis = sample_phis(fs);

    std::vector<std::vector<Elem>> S(n);
    for (int k = 0; k < n; ++k)
        S[k] = sample_elements(fs.factor(k));

    // (a) generators fix the vertex
    for (std::size_t t = 0; t < phis.size(); ++t) {
        PureAut p = factor_aut(fs, phis[t]);
        rec.truth("gen-phi", ps({{"phi", static_cast<long>(t)}}), fixes(p), p);
    }
    if (d.centre >= 0)
        for (std::size_t b = 0; b < d.blocks.size(); ++b)
            for (Elem g : S[d.centre]) {
                PureAut a = block_aut(fs, d.centre, d.blocks[b], g);
                rec.truth("gen-block", ps({{"block", static_cast<long>(b)}, {"g", g}}), fixes(a), a);
            }
    for (auto [p, q] : d.extra)
        for (Elem g : S[p]) {
            PureAut a = f_gen(fs, p, q, g);
            rec.truth("gen-f", ps({{"i", p + 1}, {"j", q + 1}, {"g", g}}), fixes(a), a);
        }

    // negative control: single letters fix the vertex exactly when listed
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b)
                continue;
            for (Elem g : S[a]) {
                if (g == 0)
                    continue;
                PureAut w = f_gen(fs, a, b, g);
                bool in = in_stabilizer(fs, tree, w);
                rec.truth("membership", ps({{"i", a + 1}, {"j", b + 1}, {"g", g}}),
                          in == predicted_single_member(d, a, b), w);
            }
        }

    // (b) relations
    if (d.centre >= 0) {
        const int i = d.centre;
        const auto& Gi = fs.factor(i);
        for (Elem g : S[i]) {
            PureAut p = identity_aut(fs);
            for (const auto& blk : d.blocks)
                p = compose(fs, p, block_aut(fs, i, blk, g));
            rec.equal("blocks-inner", ps({{"g", g}}), p, ad_aut(fs, i, g));
            if (Gi.central(g))
                rec.equal("centre-trivial", ps({{"g", g}}), p, identity_aut(fs));
        }
        for (std::size_t b1 = 0; b1 < d.blocks.size(); ++b1)
            for (std::size_t b2 = b1 + 1; b2 < d.blocks.size(); ++b2)
                for (Elem g : S[i])
                    for (Elem h : S[i])
                        rec.commute("blocks-commute",
                                    ps({{"b1", static_cast<long>(b1)}, {"b2", static_cast<long>(b2)}, {"g", g},
                                        {"h", h}}),
                                    block_aut(fs, i, d.blocks[b1], g), block_aut(fs, i, d.blocks[b2], h));
        for (auto [p, q] : d.extra)
            for (std::size_t b = 0; b < d.blocks.size(); ++b)
                for (Elem g : S[p])
                    for (Elem h : S[i])
                        rec.commute("extra-blocks-commute",
                                    ps({{"i", p + 1}, {"j", q + 1}, {"block", static_cast<long>(b)}, {"g", g},
                                        {"h", h}}),
                                    f_gen(fs, p, q, g), block_aut(fs, i, d.blocks[b], h));
    }
    for (std::size_t e1 = 0; e1 < d.extra.size(); ++e1)
        for (std::size_t e2 = e1 + 1; e2 < d.extra.size(); ++e2) {
            auto [p1, q1] = d.extra[e1];
            auto [p2, q2] = d.extra[e2];
            for (Elem g : S[p1])
                for (Elem h : S[p2])
                    rec.commute("extra-commute",
                                ps({{"i", p1 + 1}, {"j", q1 + 1}, {"k", p2 + 1}, {"l", q2 + 1}, {"g", g}, {"h", h}}),
                                f_gen(fs, p1, q1, g), f_gen(fs, p2, q2, h));
        }
    for (std::size_t t = 0; t < phis.size(); ++t) {
        PureAut ph = factor_aut(fs, phis[t]);
        PureAut phinv = factor_aut(fs, phi_inverse(fs, phis[t]));
        if (d.centre >= 0)
            for (std::size_t b = 0; b < d.blocks.size(); ++b)
                for (Elem g : S[d.centre])
                    rec.equal("phi-block", ps({{"phi", static_cast<long>(t)}, {"block", static_cast<long>(b)}, {"g", g}}),
                              compose_all(fs, {phinv, block_aut(fs, d.centre, d.blocks[b], g), ph}),
                              block_aut(fs, d.centre, d.blocks[b], fs.factor(d.centre).apply(phis[t][d.centre], g)));
        for (auto [p, q] : d.extra)
            for (Elem g : S[p])
                rec.equal("phi-f", ps({{"phi", static_cast<long>(t)}, {"i", p + 1}, {"j", q + 1}, {"g", g}}),
                          compose_all(fs, {phinv, f_gen(fs, p, q, g), ph}),
                          f_gen(fs, p, q, fs.factor(p).apply(phis[t][p], g)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// n = 3: the free product of G_{1_2}, G_{2_3}, G_{3_1} extended by Phi

struct SemidirectForm {
    std::vector<std::pair<int, Elem>> word; // (i, g) stands for f_{i_{i+1}}(g), indices mod 3
    std::vector<FactorAut> phi;
    bool operator==(const SemidirectForm&) const = default;
};

inline SemidirectForm semidirect_normal_form(const FactorSystem& fs, const GeneratorWord& w)
{
    if (fs.n() != 3)
        throw input_error("semidirect normal form needs n = 3");
    std::vector<FactorAut> phi;
    for (int k = 0; k < 3; ++k)
        phi.push_back(fs.factor(k).identity_aut());
    std::vector<std::pair<int, Elem>> out;
    auto push = [&](int i, Elem g) {
        const auto& G = fs.factor(i);
        if (g == 0)
            return;
        if (!out.empty() && out.back().first == i) {
            Elem p = G.mul(out.back().second, g);
            if (p == 0)
                out.pop_back();
            else
                out.back().second = p;
        } else {
            out.push_back({i, g});
        }
    };
    // the Phi part accumulated so far sits to the right of `out`; moving a
    // letter f(h) left past it turns it into f(phi^-1(h))
    for (const auto& l : w) {
        check_letter(fs, l);
        if (l.kind == Letter::PHI) {
            for (int k = 0; k < 3; ++k)
                phi[k] = fs.factor(k).then(phi[k], l.phi[k]);
            continue;
        }
        int i = l.i;
        Elem g = l.g;
        const auto& G = fs.factor(i);
        Elem moved = G.apply(G.inverse(phi[i]), g);
        if (l.j == (i + 1) % 3) {
            push(i, moved);
        } else {
            // f_{i_k}(h) = f_{i_j}(h^-1) ad_{G_i}(h), and ad_{G_i}(h) lands left of the Phi part
            push(i, G.inv(moved));
            phi[i] = G.then(G.inner(moved), phi[i]);
        }
    }
    return {out, phi};
}

inline GeneratorWord semidirect_word(const FactorSystem& fs, const SemidirectForm& s)
{
    GeneratorWord w;
    for (auto [i, g] : s.word)
        w.push_back(f_letter(i, (i + 1) % 3, g));
    w.push_back(phi_letter(s.phi));
    (void)fs;
    return w;
}

inline std::vector<RelationReport> semidirect_check_n3(const FactorSystem& fs, int samples = 200, unsigned seed = 1)
{
    if (fs.n() != 3 || !fs.all_finite())
        throw input_error("semidirect check needs n = 3 with finite factors");
    std::vector<RelationReport> out;
    detail::Recorder rec{fs, out};
    using detail::ps;
    const auto phis = sample_phis(fs);

    {
        auto nf = semidirect_normal_form(fs, {});
        bool ok = nf.word.empty() && is_outer_trivial(fs, factor_aut(fs, nf.phi));
        rec.truth("identity", "", ok, identity_aut(fs));
    }
    // phi^-1 f_{i_j}(g) phi normalizes to f_{i_j}(phi(g)) with trivial Phi part
    for (std::size_t t = 0; t < phis.size(); ++t)
        for (int i = 0; i < 3; ++i)
            for (Elem g : fs.factor(i).elements()) {
                GeneratorWord w{phi_letter(phi_inverse(fs, phis[t])), f_letter(i, (i + 1) % 3, g),
                                phi_letter(phis[t])};
                auto nf = semidirect_normal_form(fs, w);
                Elem pg = fs.factor(i).apply(phis[t][i], g);
                SemidirectForm want;
                if (pg != 0)
                    want.word.push_back({i, pg});
                for (int k = 0; k < 3; ++k)
                    want.phi.push_back(fs.factor(k).identity_aut());
                rec.truth("phi-action", ps({{"phi", static_cast<long>(t)}, {"i", i + 1}, {"g", g}}), nf == want,
                          eval_generator_word(fs, w));
            }

    // random words: the normal form evaluates to the same outer class, and two
    // words share a normal form exactly when they are outer-equal
    std::mt19937_64 rng(seed);
    auto random_letter = [&]() {
        std::uniform_int_distribution<int> kind(0, 4), fac(0, 2), side(1, 2);
        if (kind(rng) == 0) {
            std::vector<FactorAut> p;
            for (int k = 0; k < 3; ++k) {
                auto all = fs.factor(k).automorphisms();
                std::uniform_int_distribution<std::size_t> d(0, all.size() - 1);
                p.push_back(all[d(rng)]);
            }
            return phi_letter(p);
        }
        int i = fac(rng);
        std::uniform_int_distribution<Elem> e(1, fs.factor(i).order() - 1);
        return f_letter(i, (i + side(rng)) % 3, e(rng));
    };
    std::vector<std::pair<SemidirectForm, PureAut>> seen;
    for (int s = 0; s < samples; ++s) {
        GeneratorWord w;
        std::uniform_int_distribution<int> len(0, 6);
        int L = len(rng);
        for (int t = 0; t < L; ++t)
            w.push_back(random_letter());
        auto nf = semidirect_normal_form(fs, w);
        PureAut a = eval_generator_word(fs, w);
        PureAut b = eval_generator_word(fs, semidirect_word(fs, nf));
        rec.equal("round-trip", ps({{"sample", s}}), a, b);
        seen.push_back({nf, a});
    }
    for (std::size_t p = 0; p < seen.size(); ++p)
        for (std::size_t q = p + 1; q < seen.size(); ++q) {
            bool same_nf = seen[p].first == seen[q].first;
            bool same_out = seen[p].second == seen[q].second;
            if (same_nf != same_out)
                rec.truth("uniqueness", ps({{"a", static_cast<long>(p)}, {"b", static_cast<long>(q)}}), false,
                          seen[p].second);
        }
    rec.truth("uniqueness", ps({{"pairs", static_cast<long>(seen.size() * (seen.size() - 1) / 2)}}), true,
              identity_aut(fs));
    return out;
}

// ---------------------------------------------------------------------------
// factorization into generators

struct Factorization {
    GeneratorWord word;
    std::vector<MultiMove> moves;
};

// PHI letter for an automorphism that fixes the base domain, after canonicalization
inline Letter phi_part(const FactorSystem& fs, const PureAut& theta)
{
    PureAut c = canonicalize_aut(fs, theta);
    for (const auto& w : c.conj)
        if (!w.empty())
            throw std::logic_error("automorphism does not fix the base domain");
    return phi_letter(c.phi);
}

inline Factorization rewrite_in_generators(const FactorSystem& fs, const PureAut& psi, bool phi_last = false,
                                           const DescentOptions& opt = {})
{
    Domain d = make_domain(fs, psi);
    Factorization r;
    r.moves = factorize_domain(fs, d, opt);
    Domain cur = base_domain(fs);
    std::vector<GeneratorWord> steps;
    for (const auto& m : r.moves) {
        PureAut w = standard_whitehead(fs, cur, m);
        GeneratorWord s;
        for (int a = 0; a < fs.n(); ++a)
            if (!w.conj[a].empty())
                s.push_back(f_letter(m.op, a, fs.factor(m.op).inv(w.conj[a][0].e)));
        steps.push_back(s);
        cur = apply_move(fs, cur, m);
    }
    // psi = theta . W_m ... W_1 with theta in the stabilizer of the base domain
    Letter theta = phi_part(fs, compose(fs, psi, cur.inv));
    if (!phi_last) {
        r.word.push_back(theta);
        for (std::size_t t = steps.size(); t-- > 0;)
            r.word.insert(r.word.end(), steps[t].begin(), steps[t].end());
    } else {
        // phi f(h) = f(phi^-1(h)) phi
        for (std::size_t t = steps.size(); t-- > 0;)
            for (auto l : steps[t]) {
                const auto& G = fs.factor(l.i);
                l.g = G.apply(G.inverse(theta.phi[l.i]), l.g);
                r.word.push_back(l);
            }
        r.word.push_back(theta);
    }
    if (!outer_equal(fs, eval_generator_word(fs, r.word), psi))
        throw std::logic_error("factorization does not evaluate to its input");
    return r;
}

} // namespace fpaut

#endif
