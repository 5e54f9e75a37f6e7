#ifndef FPAUT_COMPLEX_HPP
#define FPAUT_COMPLEX_HPP

#include "fpaut/shapes.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

namespace fpaut {

using BigInt = boost::multiprecision::cpp_int;

// integer matrix given by its nonzero entries, row-major
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, long>> row;
};

struct CellComplex {
    int n = 0;
    std::vector<ShapeInstance> vertices;
    std::vector<std::pair<int, int>> edges; // (from, to) in collapse direction
    std::vector<std::array<int, 3>> faces;  // sorted vertex triples
    SparseMatrix d1;                        // vertices x edges
    SparseMatrix d2;                        // edges x faces

    std::size_t cells() const { return vertices.size() + edges.size() + faces.size(); }
};

// closed-form number of vertices of each shape family, for n >= 5 (below that
// some families coincide and the catalog keeps one representative)
inline long formula_vertex_count(ShapeTag t, int n)
{
    auto falling = [n](int k) { // n (n-1) ... (n-k+1)
        long r = 1;
        for (int a = 0; a < k; ++a)
            r *= n - a;
        return r;
    };
    switch (t) {
    case ShapeTag::rho: return falling(2) / 2;
    case ShapeTag::sigma: return falling(5) / 8;
    case ShapeTag::tau: return falling(4) / 2;
    case ShapeTag::alpha: return 1;
    case ShapeTag::beta: return falling(2);
    case ShapeTag::gamma: return falling(3) / 2;
    case ShapeTag::delta: return falling(5) / 2;
    case ShapeTag::epsilon: return falling(4) / 2;
    case ShapeTag::A: return n;
    case ShapeTag::B: return falling(3);
    case ShapeTag::C: return falling(5) / 2;
    }
    return 0;
}

inline CellComplex build_domain_complex(int n)
{
    if (n < 3 || n > 7)
        throw input_error("fundamental domain complex is built for 3 <= n <= 7");
    ShapeCatalog cat(n);
    CellComplex c;
    c.n = n;
    c.vertices = cat.shapes();
    const int V = static_cast<int>(c.vertices.size());
    std::map<std::pair<int, int>, int> edge_id;
    std::vector<std::set<int>> nb(V);
    for (int v = 0; v < V; ++v)
        for (int w : cat.collapses(v)) {
            auto key = std::minmax(v, w);
            if (edge_id.count(key))
                throw std::logic_error("two edges on one vertex pair");
            edge_id[key] = static_cast<int>(c.edges.size());
            c.edges.push_back({v, w});
            nb[v].insert(w);
            nb[w].insert(v);
        }
    for (int a = 0; a < V; ++a)
        for (int b : nb[a])
            if (b > a)
                for (int d : nb[b])
                    if (d > b && nb[a].count(d))
                        c.faces.push_back({a, b, d});

    const int E = static_cast<int>(c.edges.size());
    c.d1 = {V, E, std::vector<std::map<int, long>>(V)};
    for (int e = 0; e < E; ++e) {
        c.d1.row[c.edges[e].first][e] -= 1;
        c.d1.row[c.edges[e].second][e] += 1;
    }
    const int F = static_cast<int>(c.faces.size());
    c.d2 = {E, F, std::vector<std::map<int, long>>(E)};
    // [a,b,d] -> [b,d] - [a,d] + [a,b], each against the stored orientation
    auto add = [&](int p, int q, long s, int f) {
        int e = edge_id.at(std::minmax(p, q));
        long sign = c.edges[e].first == p ? 1 : -1;
        c.d2.row[e][f] += s * sign;
    };
    for (int f = 0; f < F; ++f) {
        auto [a, b, d] = c.faces[f];
        add(b, d, 1, f);
        add(a, d, -1, f);
        add(a, b, 1, f);
    }
    return c;
}

// d1 * d2 == 0
inline bool boundary_squared_zero(const CellComplex& c)
{
    for (int v = 0; v < c.d1.rows; ++v) {
        std::map<int, long> acc;
        for (auto [e, x] : c.d1.row[v])
            for (auto [f, y] : c.d2.row[e])
                acc[f] += x * y;
        for (auto [f, s] : acc)
            if (s != 0)
                return false;
    }
    return true;
}

struct overflow_in_elimination : std::overflow_error {
    using std::overflow_error::overflow_error;
};

namespace detail {

inline long checked_mul_add(long acc, long a, long b)
{
    long p, r;
    if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &r))
        throw overflow_in_elimination("int64 overflow during elimination");
    return r;
}
inline BigInt checked_mul_add(const BigInt& acc, const BigInt& a, const BigInt& b) { return acc + a * b; }

inline bool is_unit(long v) { return v == 1 || v == -1; }
inline bool is_unit(const BigInt& v) { return v == 1 || v == -1; }

// dense Smith normal form of a small residue; returns the nonzero invariants
inline std::vector<BigInt> dense_invariants(std::vector<std::vector<BigInt>> m)
{
    std::vector<BigInt> diag;
    const std::size_t R = m.size();
    const std::size_t C = R ? m[0].size() : 0;
    std::size_t t = 0;
    while (t < R && t < C) {
        // smallest nonzero entry in the remaining block
        std::size_t pr = R, pc = C;
        for (std::size_t r = t; r < R; ++r)
            for (std::size_t c = t; c < C; ++c)
                if (m[r][c] != 0 && (pr == R || abs(m[r][c]) < abs(m[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr == R)
            break;
        std::swap(m[t], m[pr]);
        for (auto& row : m)
            std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t r = t + 1; r < R; ++r)
                if (m[r][t] != 0) {
                    BigInt q = m[r][t] / m[t][t];
                    for (std::size_t c = t; c < C; ++c)
                        m[r][c] -= q * m[t][c];
                    if (m[r][t] != 0) {
                        std::swap(m[t], m[r]);
                        clean = false;
                    }
                }
            for (std::size_t c = t + 1; c < C; ++c)
                if (m[t][c] != 0) {
                    BigInt q = m[t][c] / m[t][t];
                    for (std::size_t r = t; r < R; ++r)
                        m[r][c] -= q * m[r][t];
                    if (m[t][c] != 0) {
                        for (auto& row : m)
                            std::swap(row[t], row[c]);
                        clean = false;
                    }
                }
            if (clean) {
                // the pivot must divide the whole remaining block
                for (std::size_t r = t + 1; r < R && clean; ++r)
                    for (std::size_t c = t + 1; c < C; ++c)
                        if (m[r][c] % m[t][t] != 0) {
                            for (std::size_t k = t; k < C; ++k)
                                m[t][k] += m[r][k];
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    // divisibility chain
    for (std::size_t a = 0; a < diag.size(); ++a)
        for (std::size_t b = a + 1; b < diag.size(); ++b) {
            BigInt g = gcd(diag[a], diag[b]);
            BigInt l = diag[a] / g * diag[b];
            diag[a] = g;
            diag[b] = l;
        }
    return diag;
}

template <class S>
std::vector<BigInt> sparse_invariants(const SparseMatrix& in)
{
    std::vector<std::map<int, S>> rows(in.rows);
    std::vector<std::set<int>> col(in.cols);
    for (int r = 0; r < in.rows; ++r)
        for (auto [c, v] : in.row[r])
            if (v != 0) {
                rows[r][c] = S(v);
                col[c].insert(r);
            }
    std::vector<bool> alive(in.rows, true);
    std::vector<BigInt> inv;
    for (;;) {
        int pr = -1, pc = -1;
        std::size_t best = 0;
        for (int r = 0; r < in.rows; ++r) {
            if (!alive[r])
                continue;
            for (auto& [c, v] : rows[r])
                if (is_unit(v)) {
                    std::size_t cost = (rows[r].size() - 1) * (col[c].size() - 1);
                    if (pr < 0 || cost < best) {
                        pr = r;
                        pc = c;
                        best = cost;
                    }
                }
            if (pr >= 0 && best == 0)
                break;
        }
        if (pr < 0)
            break;
        S p = rows[pr][pc];
        std::vector<int> targets(col[pc].begin(), col[pc].end());
        for (int r : targets) {
            if (r == pr)
                continue;
            S f = rows[r][pc] * p; // p is its own inverse
            for (auto& [c, v] : rows[pr]) {
                S nv = checked_mul_add(rows[r].count(c) ? rows[r][c] : S(0), -f, v);
                if (nv == 0) {
                    rows[r].erase(c);
                    col[c].erase(r);
                } else {
                    rows[r][c] = nv;
                    col[c].insert(r);
                }
            }
        }
        for (auto& [c, v] : rows[pr])
            col[c].erase(pr);
        rows[pr].clear();
        alive[pr] = false;
        inv.push_back(1);
    }
    std::vector<int> rr, cc;
    std::map<int, int> cpos;
    for (int r = 0; r < in.rows; ++r)
        if (alive[r] && !rows[r].empty()) {
            rr.push_back(r);
            for (auto& [c, v] : rows[r])
                if (!cpos.count(c))
                    cpos[c] = 0;
        }
    for (auto& [c, k] : cpos) {
        k = static_cast<int>(cc.size());
        cc.push_back(c);
    }
    if (!rr.empty()) {
        std::vector<std::vector<BigInt>> dense(rr.size(), std::vector<BigInt>(cc.size()));
        for (std::size_t a = 0; a < rr.size(); ++a)
            for (auto& [c, v] : rows[rr[a]])
                dense[a][cpos[c]] = BigInt(v);
        for (auto& d : dense_invariants(std::move(dense)))
            inv.push_back(d);
    }
    return inv;
}

} // namespace detail

// nonzero Smith invariants, exact
inline std::vector<BigInt> smith_invariants(const SparseMatrix& m)
{
    try {
        return detail::sparse_invariants<long>(m);
    } catch (const overflow_in_elimination&) {
        return detail::sparse_invariants<BigInt>(m);
    }
}

struct Homology1 {
    long free_rank = 0;
    std::vector<BigInt> torsion; // invariants > 1
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

inline Homology1 homology_h1(const CellComplex& c)
{
    auto i1 = smith_invariants(c.d1);
    auto i2 = smith_invariants(c.d2);
    Homology1 h;
    h.free_rank = static_cast<long>(c.edges.size()) - static_cast<long>(i1.size()) - static_cast<long>(i2.size());
    for (auto& d : i2)
        if (d > 1)
            h.torsion.push_back(d);
    return h;
}

inline int connected_components(const CellComplex& c)
{
    const int V = static_cast<int>(c.vertices.size());
    std::vector<std::vector<int>> adj(V);
    for (auto [a, b] : c.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(V, false);
    int comps = 0;
    for (int s = 0; s < V; ++s) {
        if (seen[s])
            continue;
        ++comps;
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
        }
    }
    return comps;
}

// The path of shapes from v to alpha used to connect the domain.
inline std::vector<ShapeInstance> path_to_alpha(const ShapeCatalog& cat, const ShapeInstance& v)
{
    const auto& x = v.idx;
    auto S = [](ShapeTag t, std::vector<int> idx) { return ShapeInstance{t, std::move(idx)}; };
    const ShapeInstance alpha = S(ShapeTag::alpha, {});
    std::vector<ShapeInstance> p{v};
    switch (v.tag) {
    case ShapeTag::alpha: break;
    case ShapeTag::rho:
    case ShapeTag::A: p.push_back(alpha); break;
    case ShapeTag::beta: p.insert(p.end(), {S(ShapeTag::rho, {x[0], x[1]}), alpha}); break;
    case ShapeTag::gamma: p.insert(p.end(), {S(ShapeTag::rho, {x[1], x[2]}), alpha}); break;
    case ShapeTag::B:
        p.insert(p.end(), {S(ShapeTag::beta, {x[1], x[2]}), S(ShapeTag::rho, {x[1], x[2]}), alpha});
        break;
    case ShapeTag::sigma:
    case ShapeTag::tau: p.insert(p.end(), {S(ShapeTag::A, {x[0]}), alpha}); break;
    case ShapeTag::C:
        p.insert(p.end(), {S(ShapeTag::sigma, {x[0], x[1], x[2], x[3], x[4]}), S(ShapeTag::A, {x[0]}), alpha});
        break;
    case ShapeTag::delta:
        p.insert(p.end(), {S(ShapeTag::tau, {x[1], x[2], x[3], x[4]}), S(ShapeTag::A, {x[1]}), alpha});
        break;
    case ShapeTag::epsilon:
        p.insert(p.end(), {S(ShapeTag::tau, {x[0], x[1], x[2], x[3]}), S(ShapeTag::A, {x[0]}), alpha});
        break;
    }
    std::vector<ShapeInstance> out;
    for (auto& s : p) {
        auto c = cat.canonical(s);
        if (out.empty() || out.back() != c)
            out.push_back(c);
    }
    return out;
}

} // namespace fpaut

#endif
