#ifndef FPAUT_DESCENT_HPP
#define FPAUT_DESCENT_HPP

#include "fpaut/geometry.hpp"

#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fpaut {

struct search_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// standard Whitehead automorphism: leaves in parts[t].first conjugated by e_t in G_op
struct StdStep {
    int op = 0;
    std::vector<std::pair<std::vector<int>, Elem>> parts;
};

inline PureAut std_step_aut(const FactorSystem& fs, const StdStep& s)
{
    PureAut w = identity_aut(fs);
    for (const auto& [leaves, e] : s.parts)
        for (int a : leaves)
            w.conj[a] = fs.letter(s.op, e);
    return w;
}

namespace detail {

// inverse conjugators after post-composing with W^-1
inline Labelling inverse_after(const FactorSystem& fs, const Labelling& d, int op, const std::vector<Elem>& val)
{
    const int n = fs.n();
    const auto& G = fs.factor(op);
    Labelling r(n);
    for (int k = 0; k < n; ++k) {
        GWord w;
        if (val[k] != 0)
            w = fs.letter(op, G.inv(val[k]));
        for (const auto& s : d[k]) {
            Elem e = val[s.f];
            GWord img{s};
            if (e != 0)
                img = fs.mul(fs.letter(op, e), img, fs.letter(op, G.inv(e)));
            w = fs.mul(w, img);
        }
        r[k] = fs.strip_lead(k, w);
    }
    return r;
}

inline std::vector<Elem> candidates(const FactorSystem& fs, const Labelling& d, int op)
{
    const auto& G = fs.factor(op);
    std::vector<Elem> out;
    if (G.finite()) {
        for (Elem e = 1; e < G.order(); ++e)
            out.push_back(e);
        return out;
    }
    std::set<Elem> c;
    auto collect = [&](const GWord& w) {
        for (const auto& s : w)
            if (s.f == op) {
                c.insert(s.e);
                c.insert(G.inv(s.e));
            }
    };
    for (const auto& w : d)
        collect(w);
    for (int p = 0; p < fs.n(); ++p)
        for (int q = 0; q < fs.n(); ++q)
            if (p != q)
                collect(fs.mul(d[p], fs.inv(d[q])));
    out.assign(c.begin(), c.end());
    std::sort(out.begin(), out.end(), [&](Elem a, Elem b) { return G.order_key(a) < G.order_key(b); });
    return out;
}

inline StdStep to_step(int op, const std::vector<Elem>& val)
{
    StdStep s;
    s.op = op;
    std::vector<Elem> seen;
    for (std::size_t k = 0; k < val.size(); ++k) {
        if (val[k] == 0)
            continue;
        auto it = std::find(seen.begin(), seen.end(), val[k]);
        if (it == seen.end()) {
            seen.push_back(val[k]);
            s.parts.push_back({{static_cast<int>(k)}, val[k]});
        } else {
            s.parts[it - seen.begin()].first.push_back(static_cast<int>(k));
        }
    }
    return s;
}

} // namespace detail

struct DescentOptions {
    long exhaustive_cap = 400000;
};

// Best move for the domain whose inverse conjugators are d: lowest resulting
// height, first found on ties. Returns nullopt if nothing reaches below `bar`.
inline std::optional<std::pair<StdStep, long>> find_step(const FactorSystem& fs, const Labelling& d, long bar,
                                                         const std::set<Labelling>* visited = nullptr,
                                                         const DescentOptions& opt = {})
{
    const int n = fs.n();
    std::optional<std::pair<StdStep, long>> best;
    auto consider = [&](int op, const std::vector<Elem>& val, long h) {
        if (h >= bar && !(visited && h == bar))
            return;
        if (best && h >= best->second)
            return;
        if (visited) {
            auto key = canonicalize_alpha(fs, detail::inverse_after(fs, d, op, val));
            if (visited->count(key))
                return;
        }
        best = std::make_pair(detail::to_step(op, val), h);
    };
    auto eval = [&](int op, const std::vector<Elem>& val) {
        return height_from_inverse(fs, detail::inverse_after(fs, d, op, val));
    };

    for (int op = 0; op < n; ++op) {
        auto cand = detail::candidates(fs, d, op);
        for (Elem e : cand) {
            std::vector<Elem> val(n, 0);
            long h0 = height_from_inverse(fs, d);
            for (int a = 0; a < n; ++a) {
                if (a == op)
                    continue;
                std::vector<Elem> one(n, 0);
                one[a] = e;
                if (eval(op, one) - h0 < 0)
                    val[a] = e;
            }
            long h = eval(op, val);
            // local add/remove improvement
            for (bool improved = true; improved;) {
                improved = false;
                for (int a = 0; a < n; ++a) {
                    if (a == op)
                        continue;
                    auto alt = val;
                    alt[a] = alt[a] == 0 ? e : 0;
                    long ha = eval(op, alt);
                    if (ha < h) {
                        val = alt;
                        h = ha;
                        improved = true;
                    }
                }
            }
            bool any = std::any_of(val.begin(), val.end(), [](Elem v) { return v != 0; });
            if (any)
                consider(op, val, h);
            // single leaves are also candidates for level moves
            if (visited)
                for (int a = 0; a < n; ++a) {
                    if (a == op)
                        continue;
                    std::vector<Elem> one(n, 0);
                    one[a] = e;
                    consider(op, one, eval(op, one));
                }
        }
    }
    if (best && best->second < bar)
        return best;

    // exhaustive over assignments leaf -> (none | candidate)
    for (int op = 0; op < n; ++op) {
        auto cand = detail::candidates(fs, d, op);
        cand.insert(cand.begin(), 0);
        long combos = 1;
        for (int a = 0; a < n - 1; ++a) {
            combos *= static_cast<long>(cand.size());
            if (combos > opt.exhaustive_cap)
                break;
        }
        if (combos > opt.exhaustive_cap)
            continue;
        std::vector<std::size_t> idx(n, 0);
        for (long c = 0; c < combos; ++c) {
            long r = c;
            std::vector<Elem> val(n, 0);
            for (int a = 0; a < n; ++a) {
                if (a == op)
                    continue;
                val[a] = cand[r % cand.size()];
                r /= static_cast<long>(cand.size());
            }
            if (c == 0)
                continue;
            consider(op, val, eval(op, val));
        }
    }
    return best;
}

struct DescentResult {
    std::vector<StdStep> steps;
    PureAut final_aut; // W_m^-1 ... W_1^-1 chi
};

// Height descent on the domain alpha_0 . chi^-1, post-composing chi by W^-1.
inline DescentResult descend(const FactorSystem& fs, PureAut chi, const DescentOptions& opt = {})
{
    DescentResult out;
    long h = height_from_inverse(fs, chi.conj);
    long budget = 4 * h + 16;
    std::set<Labelling> visited{canonicalize_alpha(fs, chi.conj)};
    while (h > 0) {
        auto step = find_step(fs, chi.conj, h, nullptr, opt);
        if (!step) {
            if (budget-- <= 0)
                throw search_exhausted("descent stalled on a plateau");
            step = find_step(fs, chi.conj, h, &visited, opt);
            if (!step) {
                std::ostringstream os;
                os << "no descending or level move from a domain of height " << h;
                throw search_exhausted(os.str());
            }
        }
        PureAut w = std_step_aut(fs, step->first);
        chi = compose(fs, chi, whitehead_inverse(fs, w, step->first.op));
        out.steps.push_back(step->first);
        visited.insert(canonicalize_alpha(fs, chi.conj));
        h = height_from_inverse(fs, chi.conj);
        if (h != step->second)
            throw std::logic_error("descent: predicted height differs from the realised one");
    }
    out.final_aut = chi;
    return out;
}

inline PureAut invert(const FactorSystem& fs, const PureAut& psi, const DescentOptions& opt = {})
{
    auto r = descend(fs, psi, opt);
    auto tail = invert_stabilizer_element(fs, r.final_aut);
    if (!tail)
        throw std::logic_error("descent ended away from the base domain");
    std::vector<PureAut> word;
    for (const auto& s : r.steps)
        word.push_back(whitehead_inverse(fs, std_step_aut(fs, s), s.op));
    word.push_back(*tail);
    return compose_all(fs, word);
}

inline Domain make_domain(const FactorSystem& fs, const PureAut& psi)
{
    PureAut a = normalize_aut(fs, psi);
    return {a, invert(fs, a)};
}

inline Domain domain_from_labelling(const FactorSystem& fs, const Labelling& l)
{
    PureAut a = identity_aut(fs);
    a.conj = coset_normalize(fs, l);
    return make_domain(fs, a);
}

// Moves from the exact base labelling (G_1, ..., G_n) to a labelling of d's domain.
inline std::vector<MultiMove> factorize_domain(const FactorSystem& fs, const Domain& d, const DescentOptions& opt = {})
{
    std::vector<Domain> path{d};
    std::vector<MultiMove> down;
    auto r = descend(fs, d.inv, opt);
    for (const auto& s : r.steps) {
        const Domain& cur = path.back();
        MultiMove m{cur.labelling(), s.op, {}};
        for (const auto& [leaves, e] : s.parts)
            m.parts.push_back({leaves, apply(fs, cur.aut, fs.letter(s.op, e))});
        m = normalize_move(fs, m);
        down.push_back(m);
        path.push_back(apply_move(fs, cur, m));
    }
    auto z = common_conjugator(fs, path.back().labelling(), alpha0(fs));
    if (!z)
        throw std::logic_error("factorization did not reach the base domain");
    std::vector<MultiMove> up;
    for (std::size_t t = down.size(); t-- > 0;) {
        MultiMove inv = inverse_move(fs, down[t]);
        Labelling nb = inv.base;
        for (int k = 0; k < fs.n(); ++k)
            nb[k] = fs.strip_lead(k, fs.mul(nb[k], *z));
        up.push_back(rebase(fs, inv, nb));
    }
    return up;
}

} // namespace fpaut

#endif
