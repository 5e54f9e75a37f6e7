#ifndef FPAUT_TEST_ORACLE_HPP
#define FPAUT_TEST_ORACLE_HPP

// Independent checks used only by the tests: an explicit Bass-Serre tree ball
// built from cosets, and a brute-force normal form for alpha labellings.

#include "fpaut/descent.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>

namespace fpaut::oracle {

// Tree of the labelling H_k = G_k^{l_k}: centres are group elements g, leaves
// are cosets H_k g, stored as (k, strip_lead_k(l_k g)).
struct TreeBall {
    const FactorSystem& fs;
    Labelling l;
    Elem z_bound;

    using Node = std::pair<int, GWord>; // k = -1 for a centre

    Node leaf_of(int k, const GWord& g) const { return {k, fs.strip_lead(k, fs.mul(l[k], g))}; }

    std::vector<Node> neighbours(const Node& v) const
    {
        std::vector<Node> out;
        if (v.first < 0) {
            for (int k = 0; k < fs.n(); ++k)
                out.push_back(leaf_of(k, v.second));
            return out;
        }
        int k = v.first;
        const auto& G = fs.factor(k);
        std::vector<Elem> hs;
        if (G.finite())
            hs = G.elements();
        else
            for (Elem e = -z_bound; e <= z_bound; ++e)
                hs.push_back(e);
        for (Elem h : hs)
            out.push_back({-1, fs.mul(fs.inv(l[k]), fs.letter(k, h), v.second)});
        return out;
    }

    // vertex fixed by G_i: the leaf H_i l_i^-1
    Node vertex_of_factor(int i) const { return leaf_of(i, fs.inv(l[i])); }

    // nullopt if the ball was searched completely without reaching j;
    // -1 if the node budget ran out first
    std::optional<int> distance(int i, int j, int radius, std::size_t budget = 400000) const
    {
        Node s = vertex_of_factor(i), t = vertex_of_factor(j);
        std::map<Node, int> seen{{s, 0}};
        std::deque<Node> q{s};
        while (!q.empty()) {
            Node v = q.front();
            q.pop_front();
            int dv = seen[v];
            if (v == t)
                return dv;
            if (dv >= radius)
                continue;
            for (auto& w : neighbours(v))
                if (seen.emplace(w, dv + 1).second)
                    q.push_back(w);
            if (seen.size() > budget)
                return -1;
        }
        return std::nullopt;
    }
};

// smallest tuple of coset representatives over the residual G_n freedom
inline std::optional<Labelling> brute_canonical(const FactorSystem& fs, const Labelling& raw)
{
    const int n = fs.n();
    const auto& Gn = fs.factor(n - 1);
    Labelling s(n);
    for (int k = 0; k < n; ++k)
        s[k] = fs.strip_lead(k, raw[k]);
    GWord t = fs.inv(s[n - 1]);
    for (int k = 0; k < n; ++k)
        s[k] = fs.strip_lead(k, fs.mul(s[k], t));
    std::vector<Elem> hs;
    if (Gn.finite())
        hs = Gn.elements();
    else
        for (Elem e = -6; e <= 6; ++e)
            hs.push_back(e);
    std::optional<Labelling> best;
    for (Elem h : hs) {
        Labelling c(n);
        for (int k = 0; k < n; ++k)
            c[k] = fs.strip_lead(k, fs.mul(s[k], fs.letter(n - 1, h)));
        if (!best || fs.tuple_less(c, *best))
            best = c;
    }
    return best;
}

} // namespace fpaut::oracle

#endif
