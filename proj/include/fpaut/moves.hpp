#ifndef FPAUT_MOVES_HPP
#define FPAUT_MOVES_HPP

#include "fpaut/pure_aut.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace fpaut {

struct Part {
    std::vector<int> leaves;
    GWord x;
    bool operator==(const Part&) const = default;
};

// Relative multiple Whitehead automorphism at the exact labelling `base`:
// every H_a with a in parts[t].leaves is replaced by H_a^{x_t}, x_t in H_op.
struct MultiMove {
    Labelling base;
    int op = 0;
    std::vector<Part> parts;
    bool operator==(const MultiMove&) const = default;
};

// A domain together with an automorphism realising it and that automorphism's
// inverse; the labelling is (aut(G_1), ..., aut(G_n)).
struct Domain {
    PureAut aut;
    PureAut inv;
    const Labelling& labelling() const { return aut.conj; }
};

inline Domain base_domain(const FactorSystem& fs) { return {identity_aut(fs), identity_aut(fs)}; }

inline bool in_subgroup(const FactorSystem& fs, const Labelling& l, int k, const GWord& x)
{
    return fs.in_factor(fs.mul(l[k], x, fs.inv(l[k])), k);
}

// x in H_k from e in G_k
inline GWord transport_to(const FactorSystem& fs, const Labelling& l, int k, Elem e)
{
    return fs.conj(fs.letter(k, e), l[k]);
}

inline Elem transport_from(const FactorSystem& fs, const Labelling& l, int k, const GWord& x)
{
    GWord e = fs.mul(l[k], x, fs.inv(l[k]));
    if (!fs.in_factor(e, k))
        throw input_error("move element is not in the operating subgroup");
    return fs.as_elem(e);
}

inline std::vector<int> all_leaves(const MultiMove& m)
{
    std::vector<int> r;
    for (const auto& p : m.parts)
        r.insert(r.end(), p.leaves.begin(), p.leaves.end());
    std::sort(r.begin(), r.end());
    return r;
}

inline bool move_contains(const MultiMove& m, int a)
{
    for (const auto& p : m.parts)
        if (std::find(p.leaves.begin(), p.leaves.end(), a) != p.leaves.end())
            return true;
    return false;
}

// element applied to leaf a (identity if a is not moved)
inline GWord move_element(const MultiMove& m, int a)
{
    for (const auto& p : m.parts)
        if (std::find(p.leaves.begin(), p.leaves.end(), a) != p.leaves.end())
            return p.x;
    return {};
}

// validates, drops trivial parts, merges parts with equal elements, sorts
inline MultiMove normalize_move(const FactorSystem& fs, MultiMove m)
{
    const int n = fs.n();
    if (static_cast<int>(m.base.size()) != n)
        throw input_error("move base has the wrong length");
    if (m.op < 0 || m.op >= n)
        throw input_error("operating factor out of range");
    std::vector<Part> kept;
    std::set<int> seen;
    for (auto& p : m.parts) {
        std::sort(p.leaves.begin(), p.leaves.end());
        p.leaves.erase(std::unique(p.leaves.begin(), p.leaves.end()), p.leaves.end());
        for (int a : p.leaves) {
            if (a < 0 || a >= n)
                throw input_error("move leaf out of range");
            if (a == m.op)
                throw input_error("operating factor inside a move part");
            if (!seen.insert(a).second)
                throw input_error("move parts are not disjoint");
        }
        if (!in_subgroup(fs, m.base, m.op, p.x))
            throw input_error("move element is not in the operating subgroup");
        if (p.x.empty() || p.leaves.empty())
            continue;
        bool merged = false;
        for (auto& q : kept)
            if (q.x == p.x) {
                q.leaves.insert(q.leaves.end(), p.leaves.begin(), p.leaves.end());
                std::sort(q.leaves.begin(), q.leaves.end());
                merged = true;
                break;
            }
        if (!merged)
            kept.push_back(std::move(p));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Part& a, const Part& b) { return a.leaves.front() < b.leaves.front(); });
    m.parts = std::move(kept);
    return m;
}

inline bool is_empty_move(const MultiMove& m) { return m.parts.empty(); }

inline Labelling apply_move(const FactorSystem& fs, const Labelling& l, const MultiMove& m)
{
    if (l != m.base)
        throw input_error("move applied to a labelling other than its base");
    Labelling r = l;
    for (const auto& p : m.parts)
        for (int a : p.leaves)
            r[a] = fs.strip_lead(a, fs.mul(r[a], p.x));
    return r;
}

// DomainKey form: the base must be the canonical labelling of the key
inline Labelling apply_move_key(const FactorSystem& fs, const Labelling& key, const MultiMove& m)
{
    return canonicalize_alpha(fs, apply_move(fs, key, m));
}

// the standard Whitehead automorphism W with domain(aut . W) = domain . m
inline PureAut standard_whitehead(const FactorSystem& fs, const Domain& d, const MultiMove& m)
{
    PureAut w = identity_aut(fs);
    for (const auto& p : m.parts) {
        GWord e = apply(fs, d.inv, p.x);
        if (!fs.in_factor(e, m.op))
            throw std::logic_error("domain inverse does not map the operating subgroup back");
        for (int a : p.leaves)
            w.conj[a] = e;
    }
    return w;
}

inline PureAut whitehead_inverse(const FactorSystem& fs, const PureAut& w, int op)
{
    PureAut r = w;
    for (auto& c : r.conj)
        if (!c.empty())
            c = fs.letter(op, fs.factor(op).inv(c[0].e));
    return r;
}

inline Domain apply_move(const FactorSystem& fs, const Domain& d, const MultiMove& m)
{
    if (d.labelling() != m.base)
        throw input_error("move applied to a domain other than its base");
    PureAut w = standard_whitehead(fs, d, m);
    Domain r{compose(fs, w, d.aut), compose(fs, d.inv, whitehead_inverse(fs, w, m.op))};
    return r;
}

inline MultiMove inverse_move(const FactorSystem& fs, const MultiMove& m)
{
    MultiMove r;
    r.base = apply_move(fs, m.base, m);
    r.op = m.op;
    for (const auto& p : m.parts)
        r.parts.push_back({p.leaves, fs.inv(p.x)});
    return r;
}

// the same move expressed at a labelling that differs from the base by a common conjugation
inline MultiMove rebase(const FactorSystem& fs, const MultiMove& m, const Labelling& new_base)
{
    auto z = common_conjugator(fs, m.base, new_base);
    if (!z)
        throw input_error("rebase target is a different domain");
    MultiMove r = m;
    r.base = new_base;
    for (auto& p : r.parts)
        p.x = fs.conj(p.x, *z);
    return r;
}

// automorphism a with (H_k . a) = labelling after the move, as an element acting on G
inline PureAut move_to_aut(const FactorSystem& fs, const Domain& d, const MultiMove& m)
{
    PureAut w = standard_whitehead(fs, d, m);
    return compose(fs, compose(fs, d.inv, w), d.aut);
}

// ----- combinators of the move notation, at the level of leaf indices -----

inline MultiMove move_intersect(const FactorSystem& fs, MultiMove m, const std::set<int>& b)
{
    for (auto& p : m.parts) {
        std::vector<int> keep;
        for (int a : p.leaves)
            if (b.count(a))
                keep.push_back(a);
        p.leaves = keep;
    }
    return normalize_move(fs, std::move(m));
}

inline MultiMove move_subtract(const FactorSystem& fs, MultiMove m, const std::set<int>& b)
{
    for (auto& p : m.parts) {
        std::vector<int> keep;
        for (int a : p.leaves)
            if (!b.count(a))
                keep.push_back(a);
        p.leaves = keep;
    }
    return normalize_move(fs, std::move(m));
}

// works on the raw part list: j indexes m.parts
inline MultiMove move_plus(const FactorSystem& fs, MultiMove m, std::size_t j, const std::set<int>& b)
{
    if (j >= m.parts.size())
        throw input_error("part index out of range");
    if (b.count(m.op))
        throw input_error("set contains the operating factor");
    for (std::size_t t = 0; t < m.parts.size(); ++t) {
        auto& p = m.parts[t];
        std::vector<int> keep;
        for (int a : p.leaves)
            if (!b.count(a))
                keep.push_back(a);
        if (t == j)
            keep.insert(keep.end(), b.begin(), b.end());
        p.leaves = keep;
    }
    return normalize_move(fs, std::move(m));
}

// complement of the moved leaves and the operating factor
inline std::vector<int> move_complement(const FactorSystem& fs, const MultiMove& m)
{
    std::vector<int> r;
    for (int a = 0; a < fs.n(); ++a)
        if (a != m.op && !move_contains(m, a))
            r.push_back(a);
    return r;
}

// part j replaced by the complement set, keeping x_j
inline MultiMove move_bar(const FactorSystem& fs, MultiMove m, std::size_t j)
{
    if (j >= m.parts.size())
        throw input_error("part index out of range");
    m.parts[j].leaves = move_complement(fs, m);
    return normalize_move(fs, std::move(m));
}

// x_j replaced by 1
inline MultiMove move_tilde(const FactorSystem& fs, MultiMove m, std::size_t j)
{
    if (j >= m.parts.size())
        throw input_error("part index out of range");
    m.parts[j].x.clear();
    return normalize_move(fs, std::move(m));
}

inline MultiMove move_left_scale(const FactorSystem& fs, MultiMove m, const GWord& y)
{
    for (auto& p : m.parts)
        p.x = fs.mul(y, p.x);
    return normalize_move(fs, std::move(m));
}

inline MultiMove move_right_scale(const FactorSystem& fs, MultiMove m, const GWord& y)
{
    for (auto& p : m.parts)
        p.x = fs.mul(p.x, y);
    return normalize_move(fs, std::move(m));
}

// A^x: the same leaf indices seen from the moved domain
inline MultiMove move_conjugate_labels(const FactorSystem& fs, const MultiMove& m, MultiMove next)
{
    next.base = apply_move(fs, m.base, m);
    return normalize_move(fs, std::move(next));
}

inline MultiMove move_project(const FactorSystem& fs, const MultiMove& m, std::size_t j)
{
    if (j >= m.parts.size())
        throw input_error("part index out of range");
    MultiMove r{m.base, m.op, {m.parts[j]}};
    return normalize_move(fs, r);
}

inline MultiMove single_move(const FactorSystem& fs, const Labelling& base, int op,
                             std::vector<int> leaves, const GWord& x)
{
    return normalize_move(fs, MultiMove{base, op, {Part{std::move(leaves), x}}});
}

} // namespace fpaut

#endif
