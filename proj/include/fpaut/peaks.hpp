#ifndef FPAUT_PEAKS_HPP
#define FPAUT_PEAKS_HPP

#include "fpaut/descent.hpp"
#include "fpaut/geometry.hpp"
#include "fpaut/shapes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fpaut {

inline bool same_domain(const FactorSystem& fs, const Domain& a, const Domain& b)
{
    return canonicalize_alpha(fs, a.labelling()) == canonicalize_alpha(fs, b.labelling());
}

// theta with alpha_0 . theta the domain d2 seen from d1
inline PureAut connecting_aut(const FactorSystem& fs, const Domain& d1, const Domain& d2)
{
    return normalize_aut(fs, compose(fs, d2.aut, d1.inv));
}

// A move with operating factor op taking d1 to d2, if the two domains share their A_op vertex.
// Of the possible moves the one touching the fewest leaves is returned.
inline std::optional<MultiMove> solve_type_a(const FactorSystem& fs, const Domain& d1, const Domain& d2, int op)
{
    const int n = fs.n();
    PureAut th = connecting_aut(fs, d1, d2);
    const auto& c = th.conj;
    std::vector<Elem> u(n, 0);
    for (int k = 0; k < n; ++k) {
        if (k == op)
            continue;
        GWord w = fs.strip_lead(k, fs.mul(c[k], fs.inv(c[op])));
        if (!fs.in_factor(w, op))
            return std::nullopt;
        u[k] = fs.as_elem(w);
    }
    const auto& G = fs.factor(op);
    std::vector<Elem> shifts{0};
    for (int k = 0; k < n; ++k)
        if (k != op && std::find(shifts.begin(), shifts.end(), u[k]) == shifts.end())
            shifts.push_back(u[k]);
    Elem best = 0;
    int best_count = n + 1;
    for (Elem h : shifts) {
        int cnt = 0;
        for (int k = 0; k < n; ++k)
            if (k != op && G.mul(u[k], G.inv(h)) != 0)
                ++cnt;
        if (cnt < best_count) {
            best_count = cnt;
            best = h;
        }
    }
    MultiMove m{d1.labelling(), op, {}};
    for (int k = 0; k < n; ++k) {
        if (k == op)
            continue;
        Elem e = G.mul(u[k], G.inv(best));
        if (e != 0)
            m.parts.push_back({{k}, apply(fs, d1.aut, fs.letter(op, e))});
    }
    m = normalize_move(fs, m);
    if (!same_domain(fs, apply_move(fs, d1, m), d2))
        throw std::logic_error("solve_type_a: move does not reach the target domain");
    return m;
}

inline std::optional<MultiMove> solve_type_a(const FactorSystem& fs, const Domain& d1, const Domain& d2)
{
    for (int op = 0; op < fs.n(); ++op)
        if (auto m = solve_type_a(fs, d1, d2, op))
            return m;
    return std::nullopt;
}

// ---------------------------------------------------------------- edge types

enum class EdgeKind { same, A, B, C, none };

inline const char* edge_kind_name(EdgeKind k)
{
    switch (k) {
    case EdgeKind::same: return "same";
    case EdgeKind::A: return "A";
    case EdgeKind::B: return "B";
    case EdgeKind::C: return "C";
    default: return "none";
    }
}

struct EdgeType {
    EdgeKind kind = EdgeKind::none;
    std::optional<ShapeInstance> shape; // a shared vertex witnessing the type
    std::optional<MultiMove> move;      // for Type A
    std::vector<GWord> witness;         // conjugators on the shared tree, for B and C
};

// the strongest available type: A before B before C
inline EdgeType edge_type(const FactorSystem& fs, const Domain& d1, const Domain& d2)
{
    EdgeType r;
    if (same_domain(fs, d1, d2)) {
        r.kind = EdgeKind::same;
        return r;
    }
    for (int op = 0; op < fs.n(); ++op)
        if (auto m = solve_type_a(fs, d1, d2, op)) {
            r.kind = EdgeKind::A;
            r.shape = ShapeInstance{ShapeTag::A, {op}};
            r.move = m;
            return r;
        }
    PureAut th = connecting_aut(fs, d1, d2);
    for (ShapeTag tag : {ShapeTag::B, ShapeTag::C}) {
        if (fs.n() < (tag == ShapeTag::B ? 4 : 5))
            continue;
        // every instance, so that the rooted reading of the tree is available
        const int n = fs.n();
        const int ar = tag_arity(tag);
        std::vector<int> idx(ar);
        std::function<bool(int, std::vector<bool>&)> rec = [&](int p, std::vector<bool>& used) -> bool {
            if (p == ar) {
                ShapeInstance s{tag, idx};
                auto w = stabilizer_witness(fs, build_tree(n, s), th);
                if (!w)
                    return false;
                r.kind = tag == ShapeTag::B ? EdgeKind::B : EdgeKind::C;
                r.shape = s;
                r.witness = *w;
                return true;
            }
            for (int k = 0; k < n; ++k) {
                if (used[k])
                    continue;
                if (tag == ShapeTag::C && p == 3 && k < idx[1])
                    continue; // the two branches are unordered
                used[k] = true;
                idx[p] = k;
                bool ok = rec(p + 1, used);
                used[k] = false;
                if (ok)
                    return true;
            }
            return false;
        };
        std::vector<bool> used(n, false);
        if (rec(0, used))
            return r;
    }
    return r;
}

// Replaces a Type B or C edge by a path of Type A edges through the shared tree:
// first the move on the root factor, then one move per two-step branch.
inline std::vector<Domain> retype_to_a(const FactorSystem& fs, const Domain& d1, const Domain& d2, const EdgeType& et)
{
    if (et.kind == EdgeKind::same)
        return {d1};
    if (et.kind == EdgeKind::A)
        return {d1, d2};
    if (et.kind == EdgeKind::none || !et.shape)
        throw input_error("edge has no shared vertex");
    ShapeTree t = build_tree(fs.n(), *et.shape);
    const auto& g = et.witness;
    const int root = t.root;
    const int i = t.label[root];
    if (i < 0)
        throw std::logic_error("retype needs a labelled basepoint");
    auto elem_over = [&](int v, int o) {
        GWord w = fs.mul(g[v], fs.inv(g[o]));
        if (!fs.in_factor(w, t.label[o]))
            throw std::logic_error("witness edge condition fails");
        return fs.as_elem(w);
    };
    MultiMove first{d1.labelling(), i, {}};
    struct Branch {
        int j, k;
        Elem a;
    };
    std::vector<Branch> branches;
    for (int v : t.adj[root]) {
        Elem a = elem_over(v, root);
        std::vector<int> leaves{t.label[v]};
        for (int w : t.adj[v])
            if (w != root) {
                leaves.push_back(t.label[w]);
                branches.push_back({v, w, a});
            }
        if (a != 0)
            first.parts.push_back({leaves, apply(fs, d1.aut, fs.letter(i, a))});
    }
    std::vector<Domain> path{d1};
    Domain cur = d1;
    first = normalize_move(fs, first);
    if (!is_empty_move(first)) {
        cur = apply_move(fs, cur, first);
        path.push_back(cur);
    }
    for (const auto& br : branches) {
        int j = t.label[br.j];
        Elem b = elem_over(br.k, br.j);
        if (b == 0)
            continue;
        GWord aj = fs.letter(i, br.a);
        GWord x0 = fs.conj(fs.letter(j, b), aj);
        MultiMove m{cur.labelling(), j, {{{t.label[br.k]}, apply(fs, d1.aut, x0)}}};
        cur = apply_move(fs, cur, normalize_move(fs, m));
        path.push_back(cur);
    }
    if (!same_domain(fs, path.back(), d2))
        throw std::logic_error("retyped path does not end at the target domain");
    path.back() = d2;
    for (std::size_t s = 0; s + 1 < path.size(); ++s)
        if (!solve_type_a(fs, path[s], path[s + 1]))
            throw std::logic_error("retyped path has a non Type A edge");
    return path;
}

// ---------------------------------------------------------------- peaks

// alpha_1 = mid . in and alpha_3 = mid . out
struct Peak {
    Domain mid;
    MultiMove in;
    MultiMove out;
};

enum class PeakCase { same_factor, c1a, c1b, c2a, c2b, c3, c4 };

inline const char* peak_case_name(PeakCase c)
{
    switch (c) {
    case PeakCase::same_factor: return "same";
    case PeakCase::c1a: return "1a";
    case PeakCase::c1b: return "1b";
    case PeakCase::c2a: return "2a";
    case PeakCase::c2b: return "2b";
    case PeakCase::c3: return "3";
    default: return "4";
    }
}

inline std::set<int> leaf_set(const MultiMove& m)
{
    auto v = all_leaves(m);
    return {v.begin(), v.end()};
}

inline std::size_t part_of(const MultiMove& m, int a)
{
    for (std::size_t t = 0; t < m.parts.size(); ++t)
        if (std::find(m.parts[t].leaves.begin(), m.parts[t].leaves.end(), a) != m.parts[t].leaves.end())
            return t;
    throw std::logic_error("leaf not moved");
}

inline PeakCase classify_peak(const Peak& p)
{
    if (p.in.base != p.mid.labelling() || p.out.base != p.mid.labelling())
        throw input_error("peak moves are not based at the middle domain");
    const int i = p.in.op, j = p.out.op;
    if (i == j)
        return PeakCase::same_factor;
    bool i_in_b = move_contains(p.out, i);
    bool j_in_a = move_contains(p.in, j);
    if (i_in_b && j_in_a)
        return PeakCase::c4;
    if (j_in_a)
        return PeakCase::c3;
    auto A = leaf_set(p.in);
    if (i_in_b) {
        const auto& bq = p.out.parts[part_of(p.out, i)].leaves;
        for (int a : A)
            if (std::find(bq.begin(), bq.end(), a) == bq.end())
                return PeakCase::c2b;
        return PeakCase::c2a;
    }
    for (int b : leaf_set(p.out))
        if (A.count(b))
            return PeakCase::c1b;
    return PeakCase::c1a;
}

struct PeakRewrite {
    PeakCase kind = PeakCase::same_factor;
    int alternative = 0;
    std::vector<Domain> path; // alpha_1 ... alpha_3
    std::vector<long> heights;
};

namespace detail {

// the leaves and elements of m, with every element conjugated by y, at a new base
inline MultiMove conjugated_at(const FactorSystem& fs, const MultiMove& m, const GWord& y, const Labelling& base)
{
    MultiMove r{base, m.op, m.parts};
    for (auto& part : r.parts)
        part.x = fs.conj(part.x, y);
    return normalize_move(fs, r);
}

inline MultiMove same_at(const FactorSystem& fs, const MultiMove& m, const Labelling& base)
{
    return conjugated_at(fs, m, {}, base);
}

// the same domain change as m written with part p fixed: every other part gets
// x_t x_p^-1 and the unmoved leaves get x_p^-1
inline MultiMove bar_shifted(const FactorSystem& fs, const MultiMove& m, std::size_t p)
{
    GWord xi = fs.inv(m.parts.at(p).x);
    MultiMove r{m.base, m.op, {}};
    for (std::size_t t = 0; t < m.parts.size(); ++t)
        if (t != p)
            r.parts.push_back({m.parts[t].leaves, fs.mul(m.parts[t].x, xi)});
    r.parts.push_back({move_complement(fs, m), xi});
    return normalize_move(fs, r);
}

inline std::vector<std::vector<Domain>> peak_alternatives(const FactorSystem& fs, const Peak& p, PeakCase kind)
{
    const Domain& mid = p.mid;
    const MultiMove& A = p.in;
    const MultiMove& B = p.out;
    Domain a1 = apply_move(fs, mid, A);
    Domain a3 = apply_move(fs, mid, B);
    auto at = [&](const Domain& d, const MultiMove& m) { return apply_move(fs, d, m); };
    std::vector<std::vector<Domain>> alts;
    const int i = A.op, j = B.op;
    switch (kind) {
    case PeakCase::same_factor:
        alts.push_back({a1, a3});
        break;
    case PeakCase::c1a:
        alts.push_back({a1, at(a1, same_at(fs, B, a1.labelling())), a3});
        break;
    case PeakCase::c1b: {
        MultiMove ab = move_subtract(fs, A, leaf_set(B));
        Domain a4 = at(mid, ab);
        alts.push_back({a1, a4, at(a3, same_at(fs, ab, a3.labelling())), a3});
        MultiMove ba = move_subtract(fs, B, leaf_set(A));
        Domain a5 = at(mid, ba);
        alts.push_back({a1, at(a1, same_at(fs, ba, a1.labelling())), a5, a3});
        break;
    }
    case PeakCase::c2a: {
        const GWord& yq = B.parts[part_of(B, i)].x;
        alts.push_back({a1, at(a3, conjugated_at(fs, A, yq, a3.labelling())), a3});
        break;
    }
    case PeakCase::c2b: {
        std::size_t q = part_of(B, i);
        const GWord& yq = B.parts[q].x;
        const auto& bq = B.parts[q].leaves;
        MultiMove cap = move_intersect(fs, A, {bq.begin(), bq.end()});
        Domain a4 = at(mid, cap);
        alts.push_back({a1, a4, at(a3, conjugated_at(fs, cap, yq, a3.labelling())), a3});
        MultiMove plus = move_plus(fs, B, q, leaf_set(A));
        Domain a5 = at(mid, plus);
        alts.push_back({a1, at(a5, conjugated_at(fs, A, yq, a5.labelling())), a5, a3});
        break;
    }
    case PeakCase::c4: {
        std::size_t pp = part_of(A, j), q = part_of(B, i);
        const GWord& xp = A.parts[pp].x;
        const GWord& yq = B.parts[q].x;
        const auto& ap = A.parts[pp].leaves;
        const auto& bq = B.parts[q].leaves;
        MultiMove n1 = move_intersect(fs, bar_shifted(fs, A, pp), {bq.begin(), bq.end()});
        Domain a4 = at(mid, n1);
        alts.push_back({a1, a4, at(a3, conjugated_at(fs, n1, yq, a3.labelling())), a3});
        MultiMove n2 = move_intersect(fs, bar_shifted(fs, B, q), {ap.begin(), ap.end()});
        Domain a5 = at(mid, n2);
        alts.push_back({a1, at(a1, conjugated_at(fs, n2, xp, a1.labelling())), a5, a3});
        break;
    }
    case PeakCase::c3:
        throw std::logic_error("case 3 is handled by reversal");
    }
    return alts;
}

inline std::vector<Domain> squeeze(const FactorSystem& fs, const std::vector<Domain>& path)
{
    std::vector<Domain> r;
    for (const auto& d : path)
        if (r.empty() || !same_domain(fs, r.back(), d))
            r.push_back(d);
    return r;
}

} // namespace detail

inline Peak reversed(const Peak& p) { return {p.mid, p.out, p.in}; }

// Rewrites alpha_1 - alpha_2 - alpha_3 as a path of Type A edges whose interior
// lies strictly below alpha_2.
inline PeakRewrite reduce_peak(const FactorSystem& fs, const Peak& p)
{
    if (is_empty_move(p.in) || is_empty_move(p.out))
        throw input_error("peak has an empty move");
    PeakCase kind = classify_peak(p);
    const long h2 = height(fs, p.mid);
    Domain a1 = apply_move(fs, p.mid, p.in);
    Domain a3 = apply_move(fs, p.mid, p.out);
    long h1 = height(fs, a1), h3 = height(fs, a3);
    if (h2 < h1 || h2 < h3 || h2 == std::min(h1, h3))
        throw input_error("middle domain is not a peak");
    if (kind == PeakCase::c3) {
        PeakRewrite r = reduce_peak(fs, reversed(p));
        std::reverse(r.path.begin(), r.path.end());
        std::reverse(r.heights.begin(), r.heights.end());
        r.kind = PeakCase::c3;
        return r;
    }
    auto alts = detail::peak_alternatives(fs, p, kind);
    std::optional<PeakRewrite> best;
    long best_top = 0;
    for (std::size_t t = 0; t < alts.size(); ++t) {
        auto path = detail::squeeze(fs, alts[t]);
        // a rewrite must join the same endpoints through Type A edges
        if (!same_domain(fs, path.front(), a1) || !same_domain(fs, path.back(), a3))
            throw std::logic_error("peak rewrite has wrong endpoints");
        for (std::size_t s = 0; s + 1 < path.size(); ++s)
            if (!solve_type_a(fs, path[s], path[s + 1]))
                throw std::logic_error(std::string("peak rewrite in case ") + peak_case_name(kind) +
                                       " has a non Type A edge");
        long top = -1;
        for (std::size_t s = 1; s + 1 < path.size(); ++s)
            top = std::max(top, height(fs, path[s]));
        if (top >= h2)
            continue;
        if (!best || top < best_top) {
            PeakRewrite r;
            r.kind = kind;
            r.alternative = static_cast<int>(t);
            r.path = path;
            for (const auto& d : path)
                r.heights.push_back(height(fs, d));
            best = r;
            best_top = top;
        }
    }
    if (!best)
        throw std::logic_error(std::string("no reducing rewrite in case ") + peak_case_name(kind));
    return *best;
}

inline Peak make_peak(const FactorSystem& fs, const Domain& a1, const Domain& a2, const Domain& a3)
{
    auto in = solve_type_a(fs, a2, a1);
    auto out = solve_type_a(fs, a2, a3);
    if (!in || !out)
        throw input_error("peak edges are not of Type A");
    return {a2, *in, *out};
}

// ---------------------------------------------------------------- loops

struct LoopStep {
    std::size_t index;
    PeakCase kind;
    long peak_height;
    std::vector<long> before; // heights of the loop, sorted decreasing
    std::vector<long> after;
};

struct ReductionTrace {
    std::vector<LoopStep> steps;
    std::vector<Domain> final_loop;
    int removed_backtracks = 0;
};

inline std::vector<long> height_profile(const FactorSystem& fs, const std::vector<Domain>& cyc)
{
    std::vector<long> h;
    for (const auto& d : cyc)
        h.push_back(height(fs, d));
    std::sort(h.rbegin(), h.rend());
    return h;
}

namespace detail {

// drops repeated vertices and backtracks x - y - x of a cyclic vertex list
inline int tidy_cycle(const FactorSystem& fs, std::vector<Domain>& cyc)
{
    int removed = 0;
    bool changed = true;
    while (changed && cyc.size() > 1) {
        changed = false;
        const std::size_t m = cyc.size();
        for (std::size_t k = 0; k < m; ++k) {
            if (same_domain(fs, cyc[k], cyc[(k + 1) % m])) {
                cyc.erase(cyc.begin() + static_cast<long>((k + 1) % m));
                changed = true;
                break;
            }
        }
        if (changed || cyc.size() < 3) {
            if (!changed && cyc.size() == 2) {
                // x - y - x
                cyc.pop_back();
                ++removed;
            }
            continue;
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (same_domain(fs, cyc[k], cyc[(k + 2) % m])) {
                std::size_t a = (k + 1) % m, b = (k + 2) % m;
                std::vector<Domain> next;
                for (std::size_t t = 0; t < m; ++t)
                    if (t != a && t != b)
                        next.push_back(cyc[t]);
                cyc = next;
                ++removed;
                changed = true;
                break;
            }
        }
    }
    return removed;
}

} // namespace detail

// Peak reduction of a closed path of Type A moves starting at `start`.
inline ReductionTrace reduce_loop(const FactorSystem& fs, const Domain& start, const std::vector<MultiMove>& moves,
                                  std::size_t max_steps = 10000)
{
    std::vector<Domain> cyc{start};
    for (const auto& m : moves)
        cyc.push_back(apply_move(fs, cyc.back(), m));
    if (!same_domain(fs, cyc.back(), start))
        throw input_error("loop does not close");
    cyc.pop_back();
    ReductionTrace tr;
    tr.removed_backtracks += detail::tidy_cycle(fs, cyc);
    for (std::size_t step = 0; cyc.size() > 1; ++step) {
        if (step >= max_steps)
            throw std::logic_error("loop reduction did not terminate");
        const std::size_t m = cyc.size();
        std::vector<long> h(m);
        for (std::size_t k = 0; k < m; ++k)
            h[k] = height(fs, cyc[k]);
        long top = *std::max_element(h.begin(), h.end());
        std::optional<std::size_t> pk;
        for (std::size_t k = 0; k < m && !pk; ++k)
            if (h[k] == top && (h[(k + m - 1) % m] < top || h[(k + 1) % m] < top))
                pk = k;
        if (!pk)
            throw std::logic_error("loop lies on a plateau with no peak");
        std::size_t k = *pk;
        const Domain& prev = cyc[(k + m - 1) % m];
        const Domain& next = cyc[(k + 1) % m];
        Peak p = make_peak(fs, prev, cyc[k], next);
        PeakRewrite r = reduce_peak(fs, p);
        LoopStep ls{k, r.kind, top, height_profile(fs, cyc), {}};
        std::vector<Domain> out;
        for (std::size_t t = 0; t < m; ++t) {
            if (t != k) {
                out.push_back(cyc[t]);
                continue;
            }
            for (std::size_t s = 1; s + 1 < r.path.size(); ++s)
                out.push_back(r.path[s]);
        }
        cyc = out;
        tr.removed_backtracks += detail::tidy_cycle(fs, cyc);
        ls.after = height_profile(fs, cyc);
        if (!(ls.after < ls.before))
            throw std::logic_error("height profile did not decrease");
        tr.steps.push_back(ls);
    }
    tr.final_loop = cyc;
    return tr;
}

// ---------------------------------------------------------------- generators

inline Elem random_nontrivial(const FactorGroup& g, std::mt19937_64& rng)
{
    if (g.finite())
        return std::uniform_int_distribution<Elem>(1, g.order() - 1)(rng);
    Elem e = std::uniform_int_distribution<Elem>(1, 2)(rng);
    return std::bernoulli_distribution(0.5)(rng) ? e : -e;
}

// a random nonempty Type A move at d with at most max_parts parts
inline MultiMove random_move(const FactorSystem& fs, const Domain& d, std::mt19937_64& rng, int max_parts = 2)
{
    const int n = fs.n();
    int op = std::uniform_int_distribution<int>(0, n - 1)(rng);
    std::vector<int> others;
    for (int a = 0; a < n; ++a)
        if (a != op)
            others.push_back(a);
    std::shuffle(others.begin(), others.end(), rng);
    int take = std::uniform_int_distribution<int>(1, static_cast<int>(others.size()))(rng);
    int np = std::uniform_int_distribution<int>(1, std::max(1, std::min(max_parts, take)))(rng);
    MultiMove m{d.labelling(), op, {}};
    for (int t = 0; t < np; ++t)
        m.parts.push_back({{}, apply(fs, d.aut, fs.letter(op, random_nontrivial(fs.factor(op), rng)))});
    for (int t = 0; t < take; ++t)
        m.parts[t < np ? t : std::uniform_int_distribution<int>(0, np - 1)(rng)].leaves.push_back(others[t]);
    return normalize_move(fs, m);
}

inline PureAut random_generator_product(const FactorSystem& fs, std::mt19937_64& rng, int len)
{
    PureAut a = identity_aut(fs);
    std::uniform_int_distribution<int> fac(0, fs.n() - 1);
    for (int t = 0; t < len; ++t) {
        int i = fac(rng), j = fac(rng);
        while (j == i)
            j = fac(rng);
        a = compose(fs, a, f_gen(fs, i, j, random_nontrivial(fs.factor(i), rng)));
    }
    return a;
}

// Peaks sampled around random domains, up to per_case of each case (case 3 is
// folded into 2a/2b by reversal).
inline std::map<PeakCase, std::vector<Peak>> collect_peaks(const FactorSystem& fs, std::mt19937_64& rng, int per_case,
                                                           int max_domains = 5000)
{
    std::map<PeakCase, std::vector<Peak>> out;
    auto full = [&] {
        for (PeakCase c : {PeakCase::same_factor, PeakCase::c1a, PeakCase::c1b, PeakCase::c2a, PeakCase::c2b,
                           PeakCase::c4}) {
            if (fs.n() == 3 && (c == PeakCase::c1a || c == PeakCase::c1b || c == PeakCase::c2b))
                continue; // these need four factors
            if (static_cast<int>(out[c].size()) < per_case)
                return false;
        }
        return true;
    };
    for (int t = 0; t < max_domains && !full(); ++t) {
        Domain mid = make_domain(fs, random_generator_product(fs, rng, 2 + t % 4));
        long h2 = height(fs, mid);
        std::vector<std::pair<MultiMove, long>> down;
        for (int s = 0; s < 40 && down.size() < 8; ++s) {
            MultiMove m = random_move(fs, mid, rng, 3);
            long h = height(fs, apply_move(fs, mid, m));
            if (!is_empty_move(m) && h <= h2)
                down.push_back({m, h});
        }
        for (std::size_t a = 0; a < down.size(); ++a)
            for (std::size_t b = 0; b < down.size(); ++b) {
                if (a == b || h2 == std::min(down[a].second, down[b].second))
                    continue;
                Peak p{mid, down[a].first, down[b].first};
                PeakCase c = classify_peak(p);
                if (c == PeakCase::c3) {
                    p = reversed(p);
                    c = classify_peak(p);
                }
                if (static_cast<int>(out[c].size()) < per_case)
                    out[c].push_back(p);
            }
    }
    return out;
}

// A closed walk at the base domain: a random walk out followed by the descent path home.
inline std::vector<MultiMove> random_loop(const FactorSystem& fs, std::mt19937_64& rng, int max_len = 8)
{
    for (;;) {
        int out = std::uniform_int_distribution<int>(1, std::max(1, max_len / 2))(rng);
        Domain d = base_domain(fs);
        std::vector<MultiMove> moves;
        for (int t = 0; t < out; ++t) {
            MultiMove m = random_move(fs, d, rng);
            if (is_empty_move(m))
                continue;
            moves.push_back(m);
            d = apply_move(fs, d, m);
        }
        if (moves.empty())
            continue;
        auto r = descend(fs, d.inv);
        if (static_cast<int>(moves.size() + r.steps.size()) > max_len)
            continue;
        for (const auto& s : r.steps) {
            MultiMove m{d.labelling(), s.op, {}};
            for (const auto& [leaves, e] : s.parts)
                m.parts.push_back({leaves, apply(fs, d.aut, fs.letter(s.op, e))});
            m = normalize_move(fs, m);
            moves.push_back(m);
            d = apply_move(fs, d, m);
        }
        return moves;
    }
}

// two moves on disjoint factor sets, applied in both orders
inline std::vector<MultiMove> commutator_loop(const FactorSystem& fs, std::mt19937_64& rng)
{
    if (fs.n() < 4)
        throw input_error("commuting moves need at least four factors");
    for (;;) {
        Domain d = base_domain(fs);
        MultiMove a = random_move(fs, d, rng, 1);
        MultiMove b = random_move(fs, d, rng, 1);
        if (a.op == b.op || move_contains(a, b.op) || move_contains(b, a.op))
            continue;
        bool overlap = false;
        for (int x : all_leaves(a))
            overlap = overlap || move_contains(b, x);
        if (overlap)
            continue;
        std::vector<MultiMove> moves;
        Domain cur = d;
        auto push = [&](const MultiMove& m) {
            MultiMove r = detail::same_at(fs, m, cur.labelling());
            moves.push_back(r);
            cur = apply_move(fs, cur, r);
        };
        push(a);
        push(b);
        push(inverse_move(fs, a));
        push(inverse_move(fs, b));
        return moves;
    }
}

} // namespace fpaut

#endif
