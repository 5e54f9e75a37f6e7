#ifndef FPAUT_GEOMETRY_HPP
#define FPAUT_GEOMETRY_HPP

#include "fpaut/moves.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace fpaut {

// Distances in the Bass-Serre tree of a domain alpha_0 . psi are read off the
// conjugators d_k of psi^-1: the vertex fixed by G_i corresponds to G_i d_i in
// the standard tree.
inline int pair_distance(const FactorSystem& fs, const Labelling& inv_conj, int i, int j)
{
    if (i == j)
        throw input_error("distance needs distinct factors");
    GWord w = fs.strip_both(i, j, fs.mul(inv_conj[i], fs.inv(inv_conj[j])));
    return 2 + 2 * static_cast<int>(w.size());
}

inline long height_from_inverse(const FactorSystem& fs, const Labelling& inv_conj)
{
    long h = 0;
    for (int i = 0; i < fs.n(); ++i)
        for (int j = i + 1; j < fs.n(); ++j)
            h += pair_distance(fs, inv_conj, i, j) - 2;
    return h;
}

inline int tree_distance(const FactorSystem& fs, const Domain& d, int i, int j)
{
    return pair_distance(fs, d.inv.conj, i, j);
}

struct HeightReport {
    std::map<std::pair<int, int>, int> distance;
    long height = 0;
};

inline HeightReport height_report(const FactorSystem& fs, const Domain& d)
{
    HeightReport r;
    for (int i = 0; i < fs.n(); ++i)
        for (int j = i + 1; j < fs.n(); ++j) {
            int dist = tree_distance(fs, d, i, j);
            r.distance[{i, j}] = dist;
            r.height += dist - 2;
        }
    return r;
}

inline long height(const FactorSystem& fs, const Domain& d) { return height_from_inverse(fs, d.inv.conj); }

// e_j . z runs from the centre v.z to the vertex H_j.z
struct TreeEdge {
    bool forward;
    int leaf;
    GWord z;
    bool operator==(const TreeEdge&) const = default;
};

using EdgePath = std::vector<TreeEdge>;

inline EdgePath geodesic_edges(const FactorSystem& fs, const Domain& d, int i, int j)
{
    if (i == j)
        throw input_error("geodesic needs distinct factors");
    const auto& di = d.inv.conj[i];
    const auto& dj = d.inv.conj[j];
    GWord u = fs.mul(di, fs.inv(dj));
    GWord p, q;
    if (!u.empty() && u.front().f == i) {
        p = {u.front()};
        u.erase(u.begin());
    }
    if (!u.empty() && u.back().f == j) {
        q = {u.back()};
        u.pop_back();
    }
    // walk in the standard tree, then move translations over with aut
    EdgePath t0;
    GWord tail = fs.mul(q, dj);
    std::vector<GWord> y(u.size() + 1);
    y[u.size()] = tail;
    for (std::size_t t = u.size(); t-- > 0;)
        y[t] = fs.mul(GWord{u[t]}, y[t + 1]);
    t0.push_back({false, i, y[0]});
    for (std::size_t t = 0; t < u.size(); ++t) {
        t0.push_back({true, u[t].f, y[t]});
        t0.push_back({false, u[t].f, y[t + 1]});
    }
    t0.push_back({true, j, tail});
    for (auto& e : t0)
        e.z = apply(fs, d.aut, e.z);
    return t0;
}

// vertex reached at the end of an edge: {is_centre, leaf, coset element}
inline bool edges_meet(const FactorSystem& fs, const Labelling& l, const TreeEdge& a, const TreeEdge& b)
{
    bool a_ends_centre = !a.forward;
    bool b_starts_centre = b.forward;
    if (a_ends_centre != b_starts_centre)
        return false;
    if (a_ends_centre)
        return a.z == b.z;
    return a.leaf == b.leaf && in_subgroup(fs, l, a.leaf, fs.mul(b.z, fs.inv(a.z)));
}

struct PatternEdge {
    bool forward;
    int leaf;
    GWord offset;
};

using LambdaPattern = std::vector<PatternEdge>;

inline LambdaPattern pattern_edge(int a) { return {{true, a, {}}}; }

// \bar e_i e_a
inline LambdaPattern pattern_turn(int i, int a) { return {{false, i, {}}, {true, a, {}}}; }

// (e_i x^-1) \bar e_i e_a
inline LambdaPattern pattern_through(const FactorSystem& fs, int i, const GWord& x, int a)
{
    return {{true, i, fs.inv(x)}, {false, i, {}}, {true, a, {}}};
}

inline LambdaPattern reversed(const LambdaPattern& p)
{
    LambdaPattern r(p.rbegin(), p.rend());
    for (auto& e : r)
        e.forward = !e.forward;
    return r;
}

inline bool matches_at(const FactorSystem& fs, const EdgePath& w, std::size_t t, const LambdaPattern& p)
{
    if (t + p.size() > w.size())
        return false;
    GWord z;
    for (std::size_t r = 0; r < p.size(); ++r) {
        const auto& e = w[t + r];
        if (e.forward != p[r].forward || e.leaf != p[r].leaf)
            return false;
        if (r == 0)
            z = fs.mul(fs.inv(p[0].offset), e.z);
        else if (fs.mul(p[r].offset, z) != e.z)
            return false;
    }
    return true;
}

// occurrences of the pattern, a translate of it, or its reverse; every start position counts
inline int lambda_count(const FactorSystem& fs, const EdgePath& w, const LambdaPattern& p)
{
    if (p.empty())
        return 0;
    LambdaPattern rp = reversed(p);
    int c = 0;
    for (std::size_t t = 0; t < w.size(); ++t)
        if (matches_at(fs, w, t, p) || matches_at(fs, w, t, rp))
            ++c;
    return c;
}

// Occurrences of (e_i x_j^-1) e_i-bar e_a, read on the path after the turns
// e_i-bar e_a have been cancelled (the order in which the reductions are made).
// A centre whose other edge goes to a moved leaf b then carries the i-edge
// e_i x_b^-1 z instead of e_i z. Each passage through an H_i vertex is counted
// at most once; when both neighbouring centres are turns the later one gets it.
inline int lambda_count_through(const FactorSystem& fs, const EdgePath& w, const MultiMove& m, int a)
{
    const int i = m.op;
    auto partner = [&](std::size_t t) -> std::optional<std::size_t> {
        // the other path edge at the centre of edge t
        if (w[t].forward)
            return t > 0 ? std::optional<std::size_t>(t - 1) : std::nullopt;
        return t + 1 < w.size() ? std::optional<std::size_t>(t + 1) : std::nullopt;
    };
    auto turn_leaf = [&](std::size_t t) -> int {
        auto p = partner(t);
        if (p && move_contains(m, w[*p].leaf))
            return w[*p].leaf;
        return -1;
    };
    auto effective = [&](std::size_t t) {
        int b = turn_leaf(t);
        return b < 0 ? w[t].z : fs.mul(fs.inv(move_element(m, b)), w[t].z);
    };
    int c = 0;
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
        if (!(w[t].forward && w[t].leaf == i && !w[t + 1].forward && w[t + 1].leaf == i))
            continue;
        int l = turn_leaf(t), r = turn_leaf(t + 1);
        if (l < 0 && r < 0)
            continue;
        if (effective(t) != effective(t + 1))
            continue;
        int owner = r >= 0 ? r : l;
        if (owner == a)
            ++c;
    }
    return c;
}

// Closed formula for the change of height under a relative multiple Whitehead move.
inline long height_delta(const FactorSystem& fs, const Domain& d, const MultiMove& m)
{
    if (d.labelling() != m.base)
        throw input_error("height_delta: move is not based at this domain");
    const int n = fs.n();
    const int i = m.op;
    long total = 0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            EdgePath w = geodesic_edges(fs, d, p, q);
            for (const auto& part : m.parts)
                for (int a : part.leaves) {
                    long s = 2L * lambda_count(fs, w, pattern_edge(a));
                    s -= 2L * lambda_count(fs, w, pattern_turn(i, a));
                    s -= 2L * lambda_count_through(fs, w, m, a);
                    for (int b : part.leaves)
                        if (b != a)
                            s -= 2L * lambda_count(fs, w, pattern_turn(a, b));
                    for (const auto& other : m.parts) {
                        if (&other == &part)
                            continue;
                        for (int c : other.leaves)
                            s -= lambda_count(fs, w, pattern_turn(a, c));
                    }
                    total += s;
                }
        }
    return total;
}

} // namespace fpaut

#endif
