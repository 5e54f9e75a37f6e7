#ifndef FPAUT_SHAPES_HPP
#define FPAUT_SHAPES_HPP

#include "fpaut/descent.hpp"

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace fpaut {

// Listed in the order used to pick a representative when two tags describe the
// same labelled tree (small n).
enum class ShapeTag { rho, sigma, tau, alpha, beta, gamma, delta, epsilon, A, B, C };

inline constexpr std::array<ShapeTag, 11> all_tags{ShapeTag::rho,   ShapeTag::sigma,   ShapeTag::tau,
                                                   ShapeTag::alpha, ShapeTag::beta,    ShapeTag::gamma,
                                                   ShapeTag::delta, ShapeTag::epsilon, ShapeTag::A,
                                                   ShapeTag::B,     ShapeTag::C};

inline const char* tag_name(ShapeTag t)
{
    switch (t) {
    case ShapeTag::rho: return "rho";
    case ShapeTag::sigma: return "sigma";
    case ShapeTag::tau: return "tau";
    case ShapeTag::alpha: return "alpha";
    case ShapeTag::beta: return "beta";
    case ShapeTag::gamma: return "gamma";
    case ShapeTag::delta: return "delta";
    case ShapeTag::epsilon: return "epsilon";
    case ShapeTag::A: return "A";
    case ShapeTag::B: return "B";
    default: return "C";
    }
}

inline ShapeTag tag_from_name(const std::string& s)
{
    for (ShapeTag t : all_tags)
        if (s == tag_name(t))
            return t;
    throw input_error("unknown shape tag '" + s + "'");
}

inline int tag_arity(ShapeTag t)
{
    switch (t) {
    case ShapeTag::alpha: return 0;
    case ShapeTag::A: return 1;
    case ShapeTag::rho:
    case ShapeTag::beta: return 2;
    case ShapeTag::gamma:
    case ShapeTag::B: return 3;
    case ShapeTag::tau:
    case ShapeTag::epsilon: return 4;
    default: return 5;
    }
}

struct ShapeInstance {
    ShapeTag tag = ShapeTag::alpha;
    std::vector<int> idx; // 0-based factor indices in the tag's argument order
    bool operator==(const ShapeInstance&) const = default;
    auto operator<=>(const ShapeInstance&) const = default;
};

inline std::string show(const ShapeInstance& s)
{
    std::string r = tag_name(s.tag);
    if (s.idx.empty())
        return r;
    r += "_";
    for (std::size_t t = 0; t < s.idx.size(); ++t) {
        if (t)
            r += ",";
        r += std::to_string(s.idx[t] + 1);
    }
    return r;
}

// label[v] is the factor carried by vertex v, or -1 for a trivial vertex
struct ShapeTree {
    std::vector<int> label;
    std::vector<std::vector<int>> adj;
    int root = 0;

    int add(int lab)
    {
        label.push_back(lab);
        adj.emplace_back();
        return static_cast<int>(label.size()) - 1;
    }
    void link(int a, int b)
    {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int vertex_of(int factor) const
    {
        for (std::size_t v = 0; v < label.size(); ++v)
            if (label[v] == factor)
                return static_cast<int>(v);
        return -1;
    }
    bool valid() const
    {
        for (std::size_t v = 0; v < label.size(); ++v)
            if (label[v] < 0 && adj[v].size() < 3)
                return false;
        return true;
    }
};

// The basepoint is the vertex carrying the suppressed leaves.
inline ShapeTree build_tree(int n, const ShapeInstance& s)
{
    if (static_cast<int>(s.idx.size()) != tag_arity(s.tag))
        throw input_error("shape " + std::string(tag_name(s.tag)) + " has the wrong number of indices");
    std::vector<bool> used(n, false);
    for (int k : s.idx) {
        if (k < 0 || k >= n || used[k])
            throw input_error("shape indices must be distinct factors");
        used[k] = true;
    }
    ShapeTree t;
    const auto& x = s.idx;
    auto hub = [&](int lab) {
        int r = t.add(lab);
        t.root = r;
        for (int k = 0; k < n; ++k)
            if (!used[k])
                t.link(r, t.add(k));
        return r;
    };
    auto pendant = [&](int from, int lab) {
        int v = t.add(lab);
        t.link(from, v);
        return v;
    };
    auto cherry = [&](int from, int a, int b) {
        int u = pendant(from, -1);
        pendant(u, a);
        pendant(u, b);
    };
    switch (s.tag) {
    case ShapeTag::alpha: hub(-1); break;
    case ShapeTag::rho: cherry(hub(-1), x[0], x[1]); break;
    case ShapeTag::beta: pendant(pendant(hub(-1), x[0]), x[1]); break;
    case ShapeTag::tau: {
        int c = hub(-1);
        pendant(pendant(c, x[0]), x[1]);
        cherry(c, x[2], x[3]);
        break;
    }
    case ShapeTag::epsilon: {
        int c = hub(-1);
        pendant(pendant(c, x[0]), x[1]);
        pendant(pendant(c, x[2]), x[3]);
        break;
    }
    case ShapeTag::A: hub(x[0]); break;
    case ShapeTag::gamma: cherry(hub(x[0]), x[1], x[2]); break;
    case ShapeTag::B: pendant(pendant(hub(x[0]), x[1]), x[2]); break;
    case ShapeTag::sigma: {
        int c = hub(x[0]);
        cherry(c, x[1], x[2]);
        cherry(c, x[3], x[4]);
        break;
    }
    case ShapeTag::delta: {
        int c = hub(x[0]);
        pendant(pendant(c, x[1]), x[2]);
        cherry(c, x[3], x[4]);
        break;
    }
    case ShapeTag::C: {
        int c = hub(x[0]);
        pendant(pendant(c, x[1]), x[2]);
        pendant(pendant(c, x[3]), x[4]);
        break;
    }
    }
    return t;
}

// isomorphism-invariant string of a labelled unrooted tree
inline std::string tree_code(const ShapeTree& t)
{
    std::function<std::string(int, int)> rooted = [&](int v, int parent) {
        std::vector<std::string> ch;
        for (int w : t.adj[v])
            if (w != parent)
                ch.push_back(rooted(w, v));
        std::sort(ch.begin(), ch.end());
        std::string s = "(" + std::to_string(t.label[v]);
        for (auto& c : ch)
            s += c;
        return s + ")";
    };
    std::string best;
    for (std::size_t v = 0; v < t.label.size(); ++v) {
        auto s = rooted(static_cast<int>(v), -1);
        if (best.empty() || s < best)
            best = s;
    }
    return best;
}

// All vertices of the fundamental domain for a given n, with lookup by tree.
class ShapeCatalog {
public:
    explicit ShapeCatalog(int n) : n_(n)
    {
        if (n < 3)
            throw input_error("shapes need n >= 3");
        if (n > 9)
            throw input_error("shape enumeration is limited to n <= 9");
        for (ShapeTag tag : all_tags) {
            int r = tag_arity(tag);
            std::vector<int> idx(r);
            std::function<void(int, std::vector<bool>&)> rec = [&](int pos, std::vector<bool>& used) {
                if (pos == r) {
                    ShapeInstance s{tag, idx};
                    ShapeTree t = build_tree(n_, s);
                    if (!t.valid())
                        return;
                    auto code = tree_code(t);
                    if (index_.count(code))
                        return;
                    index_[code] = static_cast<int>(shapes_.size());
                    shapes_.push_back(s);
                    return;
                }
                for (int k = 0; k < n_; ++k) {
                    if (used[k])
                        continue;
                    used[k] = true;
                    idx[pos] = k;
                    rec(pos + 1, used);
                    used[k] = false;
                }
            };
            std::vector<bool> used(n_, false);
            rec(0, used);
        }
    }

    int n() const { return n_; }
    const std::vector<ShapeInstance>& shapes() const& { return shapes_; }
    std::vector<ShapeInstance> shapes() && { return std::move(shapes_); }

    std::optional<int> find(const ShapeTree& t) const
    {
        auto it = index_.find(tree_code(t));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    // index of the catalog representative of s
    int index_of(const ShapeInstance& s) const
    {
        auto r = find(build_tree(n_, s));
        if (!r)
            throw input_error("shape " + show(s) + " is not a vertex for n = " + std::to_string(n_));
        return *r;
    }

    const ShapeInstance& canonical(const ShapeInstance& s) const { return shapes_[index_of(s)]; }

    std::map<ShapeTag, int> counts() const
    {
        std::map<ShapeTag, int> c;
        for (const auto& s : shapes_)
            ++c[s.tag];
        return c;
    }

    // catalog indices of all proper collapses of shape v
    std::vector<int> collapses(int v) const
    {
        ShapeTree t = build_tree(n_, shapes_[v]);
        std::vector<std::pair<int, int>> coll;
        for (std::size_t a = 0; a < t.label.size(); ++a)
            for (int b : t.adj[a])
                if (static_cast<int>(a) < b && (t.label[a] < 0 || t.label[b] < 0))
                    coll.push_back({static_cast<int>(a), b});
        std::vector<int> out;
        const std::size_t m = coll.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            std::vector<int> comp(t.label.size());
            std::iota(comp.begin(), comp.end(), 0);
            std::function<int(int)> root = [&](int x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
            for (std::size_t e = 0; e < m; ++e)
                if (mask >> e & 1)
                    comp[root(coll[e].first)] = root(coll[e].second);
            std::map<int, int> newid;
            ShapeTree q;
            bool ok = true;
            for (std::size_t a = 0; a < t.label.size(); ++a) {
                int r = root(static_cast<int>(a));
                if (!newid.count(r))
                    newid[r] = q.add(-1);
                int& lab = q.label[newid[r]];
                if (t.label[a] >= 0) {
                    if (lab >= 0)
                        ok = false;
                    lab = t.label[a];
                }
            }
            if (!ok)
                continue;
            for (std::size_t a = 0; a < t.label.size(); ++a)
                for (int b : t.adj[a]) {
                    int ra = newid[root(static_cast<int>(a))], rb = newid[root(b)];
                    if (static_cast<int>(a) < b && ra != rb)
                        q.link(ra, rb);
                }
            auto f = find(q);
            if (!f)
                throw std::logic_error("collapse of " + show(shapes_[v]) + " is not a catalogued shape");
            if (*f != v && std::find(out.begin(), out.end(), *f) == out.end())
                out.push_back(*f);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int n_;
    std::vector<ShapeInstance> shapes_;
    std::map<std::string, int> index_;
};

inline std::vector<ShapeInstance> enumerate_shapes(int n) { return ShapeCatalog(n).shapes(); }

namespace detail {

// h in G_k with h.w in G_m (or the identity when w already lies in G_m), if any
inline std::optional<Elem> absorb_left(const FactorSystem& fs, int k, int m, const GWord& w)
{
    GWord r = w;
    Elem h = 0;
    if (!r.empty() && r.front().f == k) {
        h = fs.factor(k).inv(r.front().e);
        r.erase(r.begin());
    }
    if (fs.in_factor(r, m))
        return h;
    return std::nullopt;
}

} // namespace detail

// Conjugators g_v witnessing that the labelling (G_k^{c_k}) of theta is equivalent
// to (G_1, ..., G_n) on this tree; nullopt if theta does not stabilise the vertex.
// Edge condition: g_t g_o^-1 in G_o for o nearer the basepoint, g_t = g_o if o is trivial.
inline std::optional<std::vector<GWord>> stabilizer_witness(const FactorSystem& fs, const ShapeTree& t,
                                                            const PureAut& theta)
{
    const PureAut a = normalize_aut(fs, theta);
    const auto& c = a.conj;
    const int V = static_cast<int>(t.label.size());
    std::vector<int> parent(V, -1), order{t.root};
    for (std::size_t q = 0; q < order.size(); ++q)
        for (int w : t.adj[order[q]])
            if (w != parent[order[q]] && w != t.root) {
                parent[w] = order[q];
                order.push_back(w);
            }
    std::vector<GWord> g(V);

    // constraints below a trivial vertex reached with conjugator `base` times a free h in G_k
    auto free_candidates = [&](int k, const GWord& base) {
        std::vector<Elem> hs{0};
        for (int v = 0; v < V; ++v) {
            int m = t.label[v];
            if (m < 0 || m == k)
                continue;
            GWord w = fs.mul(base, fs.inv(c[m]));
            if (!w.empty() && w.front().f == k) {
                Elem h = fs.factor(k).inv(w.front().e);
                if (std::find(hs.begin(), hs.end(), h) == hs.end())
                    hs.push_back(h);
            }
        }
        return hs;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t q) -> bool {
        if (q == order.size())
            return true;
        int v = order[q];
        int m = t.label[v];
        std::vector<GWord> cands;
        if (v == t.root) {
            if (m >= 0) {
                cands.push_back(c[m]);
            } else {
                int k0 = -1;
                for (int w : t.adj[v])
                    if (t.label[w] >= 0) {
                        k0 = t.label[w];
                        break;
                    }
                if (k0 < 0)
                    throw std::logic_error("basepoint without a labelled neighbour");
                for (Elem h : free_candidates(k0, c[k0]))
                    cands.push_back(fs.mul(fs.letter(k0, h), c[k0]));
            }
        } else {
            int o = parent[v];
            int k = t.label[o];
            if (k < 0) {
                cands.push_back(g[o]);
            } else if (m < 0) {
                for (Elem h : free_candidates(k, g[o]))
                    cands.push_back(fs.mul(fs.letter(k, h), g[o]));
            } else {
                // g_v in G_m c_m and in G_k g_o
                auto h = detail::absorb_left(fs, k, m, fs.mul(g[o], fs.inv(c[m])));
                if (h)
                    cands.push_back(fs.mul(fs.letter(k, *h), g[o]));
            }
        }
        for (auto& cand : cands) {
            if (m >= 0 && !fs.strip_lead(m, fs.mul(cand, fs.inv(c[m]))).empty())
                continue;
            g[v] = cand;
            if (assign(q + 1))
                return true;
        }
        return false;
    };
    if (!assign(0))
        return std::nullopt;
    return g;
}

inline bool in_stabilizer(const FactorSystem& fs, const ShapeTree& t, const PureAut& theta)
{
    return stabilizer_witness(fs, t, theta).has_value();
}

inline bool in_stabilizer(const FactorSystem& fs, const ShapeInstance& s, const PureAut& theta)
{
    return in_stabilizer(fs, build_tree(fs.n(), s), theta);
}

// A vertex of the complex: the shape with labelling (aut(G_1), ..., aut(G_n)).
struct LabelledVertex {
    ShapeInstance shape;
    PureAut aut;
};

inline LabelledVertex base_vertex(const FactorSystem& fs, const ShapeInstance& s)
{
    return {s, identity_aut(fs)};
}

inline Labelling vertex_labelling(const FactorSystem& fs, const LabelledVertex& v)
{
    return labelling_of(fs, v.aut);
}

inline LabelledVertex apply_outer(const FactorSystem& fs, const LabelledVertex& v, const PureAut& psi)
{
    return {v.shape, canonicalize_aut(fs, compose(fs, v.aut, psi))};
}

// T.a and T.b agree iff b a^-1 stabilises T
inline bool same_vertex(const FactorSystem& fs, const LabelledVertex& a, const LabelledVertex& b)
{
    if (a.shape != b.shape)
        return false;
    return in_stabilizer(fs, a.shape, compose(fs, b.aut, invert(fs, a.aut)));
}

} // namespace fpaut

#endif
