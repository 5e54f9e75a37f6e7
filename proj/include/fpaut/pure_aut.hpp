#ifndef FPAUT_PURE_AUT_HPP
#define FPAUT_PURE_AUT_HPP

#include "fpaut/word.hpp"

#include <set>
#include <vector>

namespace fpaut {

using Labelling = std::vector<GWord>;

struct Canonical {
    Labelling key;
    GWord transport; // key[k] is the coset representative of G_k * raw[k] * transport
};

// Normal form of an alpha-labelling (G_1^{g_1}, ..., G_n^{g_n}) modulo per-factor
// twists g_k -> h_k g_k and a common right multiplier g_k -> g_k g.
inline Canonical canonicalize_alpha_full(const FactorSystem& fs, const Labelling& raw)
{
    const int n = fs.n();
    if (static_cast<int>(raw.size()) != n)
        throw input_error("conjugator tuple has the wrong length");
    Labelling s(n);
    for (int k = 0; k < n; ++k)
        s[k] = fs.strip_lead(k, raw[k]);
    GWord t = fs.inv(s[n - 1]);
    for (int k = 0; k < n; ++k)
        s[k] = fs.strip_lead(k, fs.mul(s[k], t));
    // residual freedom h in G_n; the unique shortest choice for the first entry
    GWord h;
    if (!s[0].empty() && s[0].back().f == n - 1)
        h = fs.letter(n - 1, fs.factor(n - 1).inv(s[0].back().e));
    if (!h.empty()) {
        for (int k = 0; k < n; ++k)
            s[k] = fs.strip_lead(k, fs.mul(s[k], h));
        t = fs.mul(t, h);
    }
    return {s, t};
}

inline Labelling canonicalize_alpha(const FactorSystem& fs, const Labelling& raw)
{
    return canonicalize_alpha_full(fs, raw).key;
}

inline Labelling alpha0(const FactorSystem& fs) { return Labelling(fs.n()); }

inline bool is_alpha0(const Labelling& key)
{
    for (const auto& w : key)
        if (!w.empty())
            return false;
    return true;
}

inline Labelling coset_normalize(const FactorSystem& fs, Labelling l)
{
    for (int k = 0; k < fs.n(); ++k)
        l[k] = fs.strip_lead(k, l[k]);
    return l;
}

// The unique z with H'_k = H_k^z for every k, if the two labellings are related
// by a common conjugation.
inline std::optional<GWord> common_conjugator(const FactorSystem& fs, const Labelling& from,
                                              const Labelling& to)
{
    auto a = canonicalize_alpha_full(fs, from);
    auto b = canonicalize_alpha_full(fs, to);
    if (a.key != b.key)
        return std::nullopt;
    GWord z = fs.mul(a.transport, fs.inv(b.transport));
    for (int k = 0; k < fs.n(); ++k)
        if (fs.strip_lead(k, fs.mul(from[k], z)) != fs.strip_lead(k, to[k]))
            return std::nullopt;
    return z;
}

// x |-> c_k^-1 phi_k(x) c_k on G_k; c_k never starts with a G_k syllable
struct PureAut {
    std::vector<FactorAut> phi;
    std::vector<GWord> conj;

    bool operator==(const PureAut&) const = default;
};

inline PureAut normalize_aut(const FactorSystem& fs, PureAut a)
{
    for (int k = 0; k < fs.n(); ++k) {
        auto& c = a.conj[k];
        if (!c.empty() && c.front().f == k) {
            const auto& G = fs.factor(k);
            Elem h = c.front().e;
            // c = h c': x -> c'^-1 (h^-1 phi(x) h) c'
            a.phi[k] = G.then(a.phi[k], G.inner(h));
            c.erase(c.begin());
        }
    }
    return a;
}

inline PureAut identity_aut(const FactorSystem& fs)
{
    PureAut a;
    for (int k = 0; k < fs.n(); ++k) {
        a.phi.push_back(fs.factor(k).identity_aut());
        a.conj.emplace_back();
    }
    return a;
}

inline PureAut make_aut(const FactorSystem& fs, std::vector<FactorAut> phi, std::vector<GWord> conj)
{
    if (static_cast<int>(phi.size()) != fs.n() || static_cast<int>(conj.size()) != fs.n())
        throw input_error("automorphism data has the wrong length");
    for (int k = 0; k < fs.n(); ++k) {
        if (!fs.factor(k).is_automorphism(phi[k]))
            throw input_error("factor map is not an automorphism");
        for (const auto& s : conj[k])
            fs.check(s);
        conj[k] = fs.normalize(conj[k]);
    }
    return normalize_aut(fs, PureAut{std::move(phi), std::move(conj)});
}

inline GWord apply(const FactorSystem& fs, const PureAut& a, const GWord& w)
{
    GWord out;
    for (const auto& s : w) {
        const auto& c = a.conj[s.f];
        GWord img = fs.letter(s.f, fs.factor(s.f).apply(a.phi[s.f], s.e));
        out = fs.mul(out, fs.conj(img, c));
    }
    return out;
}

// right-action product: first a, then b
inline PureAut compose(const FactorSystem& fs, const PureAut& a, const PureAut& b)
{
    PureAut r;
    for (int k = 0; k < fs.n(); ++k) {
        r.phi.push_back(fs.factor(k).then(a.phi[k], b.phi[k]));
        r.conj.push_back(fs.mul(b.conj[k], apply(fs, b, a.conj[k])));
    }
    return normalize_aut(fs, std::move(r));
}

inline PureAut compose_all(const FactorSystem& fs, const std::vector<PureAut>& word)
{
    PureAut r = identity_aut(fs);
    for (const auto& a : word)
        r = compose(fs, r, a);
    return r;
}

// conjugate every G_a (a in leaves) by e in G_i: x -> e^-1 x e
inline PureAut whitehead(const FactorSystem& fs, const std::vector<int>& leaves, int i, Elem e)
{
    PureAut a = identity_aut(fs);
    for (int k : leaves) {
        if (k == i)
            throw input_error("Whitehead automorphism cannot move its operating factor");
        a.conj[k] = fs.letter(i, e);
    }
    return a;
}

// f_{i_j}(g) = ({G_j}, g^-1)
inline PureAut f_gen(const FactorSystem& fs, int i, int j, Elem g)
{
    if (i == j)
        throw input_error("f letter needs distinct factors");
    return whitehead(fs, {j}, i, fs.factor(i).inv(g));
}

// ad_{G_i}(g): x -> g^-1 x g on G_i, identity elsewhere
inline PureAut ad_aut(const FactorSystem& fs, int i, Elem g)
{
    PureAut a = identity_aut(fs);
    a.phi[i] = fs.factor(i).inner(g);
    return a;
}

inline PureAut factor_aut(const FactorSystem& fs, std::vector<FactorAut> phi)
{
    return make_aut(fs, std::move(phi), std::vector<GWord>(fs.n()));
}

inline PureAut inner_aut(const FactorSystem& fs, const GWord& g)
{
    PureAut a = identity_aut(fs);
    for (int k = 0; k < fs.n(); ++k)
        a.conj[k] = g;
    return normalize_aut(fs, std::move(a));
}

// Canonical representative of the outer class: the unique automorphism in the
// class whose conjugators are the canonical alpha key.
inline PureAut canonicalize_aut(const FactorSystem& fs, const PureAut& a)
{
    PureAut b = normalize_aut(fs, a);
    auto c = canonicalize_alpha_full(fs, b.conj);
    for (int k = 0; k < fs.n(); ++k)
        b.conj[k] = fs.mul(b.conj[k], c.transport);
    return normalize_aut(fs, std::move(b));
}

inline bool outer_equal(const FactorSystem& fs, const PureAut& a, const PureAut& b)
{
    return canonicalize_aut(fs, a) == canonicalize_aut(fs, b);
}

inline bool is_outer_trivial(const FactorSystem& fs, const PureAut& a)
{
    return outer_equal(fs, a, identity_aut(fs));
}

// labelling of alpha_0 . a
inline Labelling labelling_of(const FactorSystem& fs, const PureAut& a)
{
    return coset_normalize(fs, a.conj);
}

// inverse of an automorphism that fixes alpha_0, i.e. one in Phi . Inn(G)
inline std::optional<PureAut> invert_stabilizer_element(const FactorSystem& fs, const PureAut& a)
{
    PureAut b = normalize_aut(fs, a);
    auto c = canonicalize_alpha_full(fs, b.conj);
    if (!is_alpha0(c.key))
        return std::nullopt;
    // b(x) = z^-1 phi(x) z with common z; inverse y -> phi^-1(z y z^-1)
    GWord z = fs.inv(c.transport);
    PureAut inv;
    for (int k = 0; k < fs.n(); ++k) {
        const auto& G = fs.factor(k);
        FactorAut f = G.identity_aut();
        if (G.finite()) {
            for (Elem e = 0; e < G.order(); ++e)
                f.image[e] = fs.as_elem(fs.mul(z, apply(fs, b, fs.letter(k, e)), fs.inv(z)));
        } else {
            f.sign = fs.as_elem(fs.mul(z, apply(fs, b, fs.letter(k, 1)), fs.inv(z))) > 0 ? 1 : -1;
        }
        inv.phi.push_back(G.inverse(f));
    }
    inv.conj.assign(fs.n(), GWord{});
    GWord pz = apply(fs, inv, z);
    for (int k = 0; k < fs.n(); ++k)
        inv.conj[k] = fs.inv(pz);
    return normalize_aut(fs, std::move(inv));
}

} // namespace fpaut

#endif
