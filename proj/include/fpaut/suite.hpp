#ifndef FPAUT_SUITE_HPP
#define FPAUT_SUITE_HPP

#include "fpaut/complex.hpp"
#include "fpaut/peaks.hpp"
#include "fpaut/presentation.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

// Property checks shared by `fpaut selftest` and the acceptance runner.

namespace fpaut::suite {

// permutations of {0,1,2} in a fixed order, composed left to right
inline FactorGroup symmetric3()
{
    std::vector<std::vector<int>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::vector<Elem>> t(6, std::vector<Elem>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::vector<int> c(3);
            for (int x = 0; x < 3; ++x)
                c[x] = perms[b][perms[a][x]];
            t[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
        }
    return FactorGroup::table({"e", "s", "t", "u", "r", "rr"}, t);
}

// order 0 stands for Z
inline FactorSystem cyclic_system(const std::vector<Elem>& orders)
{
    std::vector<FactorGroup> f;
    for (Elem m : orders)
        f.push_back(m == 0 ? FactorGroup::integers() : FactorGroup::cyclic(m));
    return FactorSystem(f);
}

inline FactorSystem s3_system(int n)
{
    std::vector<FactorGroup> f{symmetric3()};
    for (int k = 1; k < n; ++k)
        f.push_back(FactorGroup::cyclic(2));
    return FactorSystem(f);
}

struct Check {
    std::string id;
    bool pass = true;
    std::string detail;
};

using Checks = std::vector<Check>;

inline std::string describe(const FactorSystem& fs)
{
    std::ostringstream os;
    os << "(";
    for (int k = 0; k < fs.n(); ++k) {
        const auto& g = fs.factor(k);
        if (k)
            os << ",";
        if (!g.finite())
            os << "Z";
        else if (g.kind() == FactorKind::table)
            os << "T" << g.order();
        else
            os << g.order();
    }
    os << ")";
    return os.str();
}

inline std::vector<int> others(const FactorSystem& fs, std::initializer_list<int> skip)
{
    std::vector<int> r;
    for (int a = 0; a < fs.n(); ++a)
        if (std::find(skip.begin(), skip.end(), a) == skip.end())
            r.push_back(a);
    return r;
}

inline std::vector<int> random_subset(const std::vector<int>& from, std::mt19937_64& rng, bool nonempty = true)
{
    std::vector<int> r;
    while (r.empty()) {
        for (int a : from)
            if (std::bernoulli_distribution(0.5)(rng))
                r.push_back(a);
        if (!nonempty || from.empty())
            break;
    }
    return r;
}

inline Domain random_domain(const FactorSystem& fs, std::mt19937_64& rng, int max_len = 4)
{
    int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    return make_domain(fs, random_generator_product(fs, rng, len));
}

// the move with the given leaf groups and G_op elements at domain d
inline MultiMove move_at(const FactorSystem& fs, const Domain& d, int op,
                         const std::vector<std::pair<std::vector<int>, Elem>>& parts)
{
    MultiMove m{d.labelling(), op, {}};
    for (const auto& [leaves, e] : parts)
        m.parts.push_back({leaves, apply(fs, d.aut, fs.letter(op, e))});
    return normalize_move(fs, m);
}

// a move given by leaf indices and words, replayed at another domain
inline MultiMove replay(const FactorSystem& fs, const Domain& d, int op,
                        const std::vector<std::pair<std::vector<int>, GWord>>& parts)
{
    MultiMove m{d.labelling(), op, {}};
    for (const auto& [leaves, x] : parts)
        m.parts.push_back({leaves, x});
    return normalize_move(fs, m);
}

inline Domain run(const FactorSystem& fs, Domain d, const std::vector<std::function<MultiMove(const Domain&)>>& steps)
{
    for (const auto& s : steps)
        d = apply_move(fs, d, s(d));
    return d;
}

// ----------------------------------------------------------------- Whitehead identities

// Each identity is checked as an equality of domains reached from a random domain.
inline Checks whitehead_identities(const FactorSystem& fs, std::mt19937_64& rng, int samples)
{
    using PartsW = std::vector<std::pair<std::vector<int>, GWord>>;
    std::map<std::string, std::pair<int, int>> tally; // id -> (run, failed)
    auto record = [&](const std::string& id, bool ok) {
        auto& t = tally[id];
        ++t.first;
        if (!ok)
            ++t.second;
    };
    const int n = fs.n();
    for (int s = 0; s < samples; ++s) {
        Domain d = random_domain(fs, rng);
        int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const auto& G = fs.factor(i);
        auto H = [&](Elem e) { return apply(fs, d.aut, fs.letter(i, e)); };
        auto rest = others(fs, {i});
        auto A = random_subset(rest, rng);
        Elem x1 = random_nontrivial(G, rng), x2 = random_nontrivial(G, rng);

        // (A,x1)(A^x1,x2) = (A,x1 x2)
        {
            Domain l = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, PartsW{{A, H(x1)}}); },
                                   [&](const Domain& c) { return replay(fs, c, i, PartsW{{A, H(x2)}}); }});
            Domain r = apply_move(fs, d, replay(fs, d, i, PartsW{{A, H(G.mul(x1, x2))}}));
            record("whitehead-1", same_domain(fs, l, r));
        }
        // (A,x)(A^x,x^-1) = 1
        {
            Domain l = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, PartsW{{A, H(x1)}}); },
                                   [&](const Domain& c) { return replay(fs, c, i, PartsW{{A, H(G.inv(x1))}}); }});
            record("whitehead-2", same_domain(fs, l, d));
        }
        // A, B disjoint: (A,x)(B,x) = (B,x)(A,x) = (A u B, x)
        {
            std::vector<int> a, b;
            for (int k : rest)
                (std::bernoulli_distribution(0.5)(rng) ? a : b).push_back(k);
            Domain l = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, PartsW{{a, H(x1)}}); },
                                   [&](const Domain& c) { return replay(fs, c, i, PartsW{{b, H(x1)}}); }});
            Domain r = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, PartsW{{b, H(x1)}}); },
                                   [&](const Domain& c) { return replay(fs, c, i, PartsW{{a, H(x1)}}); }});
            std::vector<int> ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            Domain u = apply_move(fs, d, replay(fs, d, i, PartsW{{ab, H(x1)}}));
            record("whitehead-3", same_domain(fs, l, r) && same_domain(fs, l, u));
        }
        // x in H_i, y in H_j, A, B disjoint and avoiding i, j: the moves commute
        {
            int j = i;
            while (j == i)
                j = std::uniform_int_distribution<int>(0, n - 1)(rng);
            const auto& Gj = fs.factor(j);
            GWord y = apply(fs, d.aut, fs.letter(j, random_nontrivial(Gj, rng)));
            std::vector<int> a, b;
            for (int k : others(fs, {i, j})) {
                int c = std::uniform_int_distribution<int>(0, 2)(rng);
                if (c == 0)
                    a.push_back(k);
                else if (c == 1)
                    b.push_back(k);
            }
            Domain l = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, PartsW{{a, H(x1)}}); },
                                   [&](const Domain& c) { return replay(fs, c, j, PartsW{{b, y}}); }});
            Domain r = run(fs, d, {[&](const Domain& c) { return replay(fs, c, j, PartsW{{b, y}}); },
                                   [&](const Domain& c) { return replay(fs, c, i, PartsW{{a, H(x1)}}); }});
            record("disjoint-commute", same_domain(fs, l, r));
        }
        // a multiple move (A, x) with k parts and a set B avoiding i
        std::vector<std::vector<int>> parts;
        std::vector<Elem> xs;
        {
            int k = std::uniform_int_distribution<int>(1, std::min<int>(3, static_cast<int>(rest.size())))(rng);
            parts.assign(k, {});
            for (int a : rest) {
                int c = std::uniform_int_distribution<int>(-1, k - 1)(rng);
                if (c >= 0)
                    parts[c].push_back(a);
            }
            for (int c = 0; c < k; ++c) {
                if (parts[c].empty())
                    parts[c].push_back(-1);
                xs.push_back(random_nontrivial(G, rng));
            }
            // fill placeholder parts from the unused leaves, dropping the rest
            std::vector<int> unused;
            for (int a : rest) {
                bool used = false;
                for (auto& p : parts)
                    used = used || std::find(p.begin(), p.end(), a) != p.end();
                if (!used)
                    unused.push_back(a);
            }
            for (int c = k; c-- > 0;)
                if (parts[c] == std::vector<int>{-1}) {
                    if (unused.empty()) {
                        parts.erase(parts.begin() + c);
                        xs.erase(xs.begin() + c);
                    } else {
                        parts[c] = {unused.back()};
                        unused.pop_back();
                    }
                }
        }
        auto B = random_subset(rest, rng, false);
        std::set<int> Bs(B.begin(), B.end());
        auto cap = [&](const std::vector<int>& p) {
            std::vector<int> r;
            for (int a : p)
                if (Bs.count(a))
                    r.push_back(a);
            return r;
        };
        auto minus = [&](const std::vector<int>& p) {
            std::vector<int> r;
            for (int a : p)
                if (!Bs.count(a))
                    r.push_back(a);
            return r;
        };
        auto bold = [&](const std::function<std::vector<int>(const std::vector<int>&)>& f,
                        const std::function<Elem(std::size_t)>& elem) {
            PartsW r;
            for (std::size_t c = 0; c < parts.size(); ++c)
                r.push_back({f(parts[c]), H(elem(c))});
            return r;
        };
        auto id_set = [](const std::vector<int>& p) { return p; };
        auto xof = [&](std::size_t c) { return xs[c]; };
        Domain whole = apply_move(fs, d, replay(fs, d, i, bold(id_set, xof)));
        // (A,x) = (A-B,x)(A n B,x) = (A n B,x)(A-B,x)
        {
            Domain l = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, bold(minus, xof)); },
                                   [&](const Domain& c) { return replay(fs, c, i, bold(cap, xof)); }});
            Domain r = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, bold(cap, xof)); },
                                   [&](const Domain& c) { return replay(fs, c, i, bold(minus, xof)); }});
            record("notation-1", same_domain(fs, l, whole) && same_domain(fs, r, whole));
        }
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng);
        auto plus = [&] {
            PartsW r = bold(minus, xof);
            auto& pj = r[j].first;
            pj.insert(pj.end(), B.begin(), B.end());
            return r;
        };
        // (A +_j B, x) = (A-B,x)(B,x_j)
        {
            Domain l = apply_move(fs, d, replay(fs, d, i, plus()));
            Domain r = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, bold(minus, xof)); },
                                   [&](const Domain& c) { return replay(fs, c, i, PartsW{{B, H(xs[j])}}); }});
            record("notation-2", same_domain(fs, l, r));
        }
        std::vector<int> abar;
        for (int a : rest) {
            bool used = false;
            for (auto& p : parts)
                used = used || std::find(p.begin(), p.end(), a) != p.end();
            if (!used)
                abar.push_back(a);
        }
        Elem xj_inv = G.inv(xs[j]);
        // bar A_j: part j replaced by the complement; tilde x_j: x_j replaced by 1
        auto bar_parts = [&](bool left) {
            PartsW r;
            for (std::size_t c = 0; c < parts.size(); ++c) {
                if (c == j)
                    r.push_back({abar, H(xj_inv)});
                else
                    r.push_back({parts[c], H(left ? G.mul(xj_inv, xs[c]) : G.mul(xs[c], xj_inv))});
            }
            return r;
        };
        // (bar A_j, x_j^-1 tilde x_j) = (A, x_j^-1 x)(bar A, x_j^-1), and the right-hand version
        for (bool left : {true, false}) {
            Domain l = apply_move(fs, d, replay(fs, d, i, bar_parts(left)));
            Domain r = run(fs, d,
                           {[&](const Domain& c) {
                                return replay(fs, c, i,
                                              bold(id_set, [&](std::size_t q) {
                                                  return left ? G.mul(xj_inv, xs[q]) : G.mul(xs[q], xj_inv);
                                              }));
                            },
                            [&](const Domain& c) { return replay(fs, c, i, PartsW{{abar, H(xj_inv)}}); }});
            record(left ? "notation-3-left" : "notation-3-right", same_domain(fs, l, r));
        }
        // (A,x) = (A +_j B, x)((bar A_j n B)^{x_j}, x_j^-1 tilde x_j)
        //       = (bar A_j n B, tilde x_j x_j^-1)((A +_j B)', x)
        auto bar_cap = [&](bool left) {
            PartsW r = bar_parts(left);
            for (auto& [leaves, x] : r)
                leaves = cap(leaves);
            return r;
        };
        {
            Domain l = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, plus()); },
                                   [&](const Domain& c) { return replay(fs, c, i, bar_cap(true)); }});
            record("notation-4-first", same_domain(fs, l, whole));
            Domain r = run(fs, d, {[&](const Domain& c) { return replay(fs, c, i, bar_cap(false)); },
                                   [&](const Domain& c) { return replay(fs, c, i, plus()); }});
            record("notation-4-second", same_domain(fs, r, whole));
        }
    }
    Checks out;
    for (const auto& [id, t] : tally)
        out.push_back({id, t.second == 0, std::to_string(t.first) + " instances, " + std::to_string(t.second) + " failed"});
    return out;
}

// ----------------------------------------------------------------- geometry

inline Check height_delta_check(const FactorSystem& fs, std::mt19937_64& rng, int samples)
{
    int bad = 0;
    for (int s = 0; s < samples; ++s) {
        Domain d = random_domain(fs, rng);
        MultiMove m = random_move(fs, d, rng, 3);
        long direct = height(fs, apply_move(fs, d, m)) - height(fs, d);
        if (height_delta(fs, d, m) != direct)
            ++bad;
    }
    return {"height-delta " + describe(fs), bad == 0,
            std::to_string(samples) + " pairs, " + std::to_string(bad) + " mismatches"};
}

inline Check height_zero_check(const FactorSystem& fs, std::mt19937_64& rng, int samples)
{
    int bad = 0, tested = 0;
    if (height(fs, base_domain(fs)) != 0)
        ++bad;
    while (tested < samples) {
        Domain d = random_domain(fs, rng, 5);
        bool base = is_alpha0(canonicalize_alpha(fs, d.labelling()));
        long h = height(fs, d);
        if (base) {
            if (h != 0)
                ++bad;
            continue;
        }
        ++tested;
        if (h <= 0)
            ++bad;
    }
    return {"height-zero " + describe(fs), bad == 0,
            std::to_string(samples) + " non-base domains, " + std::to_string(bad) + " violations"};
}

// ----------------------------------------------------------------- peaks and loops

inline Checks peak_checks(const FactorSystem& fs, std::mt19937_64& rng, int per_case)
{
    auto peaks = collect_peaks(fs, rng, per_case);
    for (PeakCase c : {PeakCase::c2a, PeakCase::c2b})
        for (const auto& p : peaks[c])
            peaks[PeakCase::c3].push_back(reversed(p));
    Checks out;
    for (auto& [kind, list] : peaks) {
        if (list.empty())
            continue;
        int bad = 0;
        std::string first;
        for (const auto& p : list) {
            try {
                PeakRewrite r = reduce_peak(fs, p);
                Domain a1 = apply_move(fs, p.mid, p.in), a3 = apply_move(fs, p.mid, p.out);
                long h2 = height(fs, p.mid);
                bool ok = same_domain(fs, r.path.front(), a1) && same_domain(fs, r.path.back(), a3);
                for (std::size_t s = 1; s + 1 < r.path.size(); ++s)
                    ok = ok && height(fs, r.path[s]) < h2;
                if (kind == PeakCase::c1a && r.path.size() == 3)
                    ok = ok && r.heights[1] == r.heights[0] + r.heights[2] - h2;
                if (!ok)
                    ++bad;
            } catch (const std::exception& e) {
                if (first.empty())
                    first = e.what();
                ++bad;
            }
        }
        std::string detail = std::to_string(list.size()) + " peaks, " + std::to_string(bad) + " failed";
        if (!first.empty())
            detail += " (" + first + ")";
        out.push_back({std::string("peak-") + peak_case_name(kind) + " " + describe(fs),
                       bad == 0 && static_cast<int>(list.size()) >= per_case, detail});
    }
    return out;
}

inline Check loop_check(const FactorSystem& fs, std::mt19937_64& rng, int count, int max_len = 8)
{
    int bad = 0;
    std::size_t steps = 0;
    std::string first;
    for (int t = 0; t < count; ++t) {
        auto moves = random_loop(fs, rng, max_len);
        try {
            auto tr = reduce_loop(fs, base_domain(fs), moves);
            steps += tr.steps.size();
            if (tr.final_loop.size() != 1)
                ++bad;
            for (const auto& s : tr.steps)
                if (!(s.after < s.before))
                    ++bad;
        } catch (const std::exception& e) {
            if (first.empty())
                first = e.what();
            ++bad;
        }
    }
    std::string detail = std::to_string(count) + " loops, " + std::to_string(steps) + " peak reductions, " +
                         std::to_string(bad) + " failed";
    if (!first.empty())
        detail += " (" + first + ")";
    return {"loops " + describe(fs), bad == 0, detail};
}

inline Check roundtrip_check(const FactorSystem& fs, std::mt19937_64& rng, int count, int max_len = 6)
{
    int bad = 0;
    std::string first;
    auto phis = sample_phis(fs);
    for (int t = 0; t < count; ++t) {
        int len = std::uniform_int_distribution<int>(1, max_len)(rng);
        GeneratorWord w;
        for (int s = 0; s < len; ++s) {
            if (!phis.empty() && std::bernoulli_distribution(0.2)(rng)) {
                w.push_back(phi_letter(phis[std::uniform_int_distribution<std::size_t>(0, phis.size() - 1)(rng)]));
                continue;
            }
            int i = std::uniform_int_distribution<int>(0, fs.n() - 1)(rng);
            int j = i;
            while (j == i)
                j = std::uniform_int_distribution<int>(0, fs.n() - 1)(rng);
            w.push_back(f_letter(i, j, random_nontrivial(fs.factor(i), rng)));
        }
        PureAut psi = eval_generator_word(fs, w);
        try {
            auto f = rewrite_in_generators(fs, psi);
            if (!outer_equal(fs, eval_generator_word(fs, f.word), psi))
                ++bad;
        } catch (const std::exception& e) {
            if (first.empty())
                first = e.what();
            ++bad;
        }
    }
    std::string detail = std::to_string(count) + " automorphisms, " + std::to_string(bad) + " failed";
    if (!first.empty())
        detail += " (" + first + ")";
    return {"round-trip " + describe(fs), bad == 0, detail};
}

// ----------------------------------------------------------------- presentations

inline Check relation_check(const FactorSystem& fs, PresentationCase pc)
{
    auto r = check_relations(fs, pc);
    int bad = 0;
    std::string first;
    for (const auto& x : r)
        if (!x.pass) {
            if (first.empty())
                first = x.id + " " + x.params;
            ++bad;
        }
    std::string detail = std::to_string(r.size()) + " relation instances, " + std::to_string(bad) + " failed";
    if (!first.empty())
        detail += " (" + first + ")";
    return {"relations-" + case_name(pc) + " " + describe(fs), bad == 0, detail};
}

inline Check semidirect_check(const FactorSystem& fs, int samples, unsigned seed)
{
    auto r = semidirect_check_n3(fs, samples, seed);
    int bad = 0;
    for (const auto& x : r)
        bad += x.pass ? 0 : 1;
    return {"semidirect-n3 " + describe(fs), bad == 0,
            std::to_string(r.size()) + " checks, " + std::to_string(bad) + " failed"};
}

inline Check stabilizer_check(const FactorSystem& fs, const ShapeInstance& s)
{
    auto r = check_stabilizer(fs, s);
    int bad = 0;
    std::string first;
    for (const auto& x : r)
        if (!x.pass) {
            if (first.empty())
                first = x.id + " " + x.params;
            ++bad;
        }
    std::string detail = std::to_string(r.size()) + " checks, " + std::to_string(bad) + " failed";
    if (!first.empty())
        detail += " (" + first + ")";
    return {"stabilizer " + show(s) + " " + describe(fs), bad == 0, detail};
}

inline FactorSystem truncate(const FactorSystem& fs, int n)
{
    return FactorSystem(std::vector<FactorGroup>(fs.factors().begin(), fs.factors().begin() + n));
}

} // namespace fpaut::suite

#endif
