#ifndef FPAUT_WORD_HPP
#define FPAUT_WORD_HPP

#include "fpaut/factor_group.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace fpaut {

// factor indices are 0-based in code, 1-based in JSON
struct Syl {
    int f;
    Elem e;
    bool operator==(const Syl&) const = default;
    auto operator<=>(const Syl&) const = default;
};

using GWord = std::vector<Syl>;

class FactorSystem {
public:
    FactorSystem() = default;
    explicit FactorSystem(std::vector<FactorGroup> factors) : f_(std::move(factors))
    {
        if (f_.size() < 3)
            throw input_error("a factor system needs n >= 3 factors");
    }

    int n() const { return static_cast<int>(f_.size()); }
    const FactorGroup& factor(int k) const { return f_[k]; }
    const std::vector<FactorGroup>& factors() const { return f_; }
    bool all_finite() const
    {
        for (const auto& g : f_)
            if (!g.finite())
                return false;
        return true;
    }

    bool operator==(const FactorSystem& o) const { return f_ == o.f_; }

    void check(const Syl& s) const
    {
        if (s.f < 0 || s.f >= n())
            throw input_error("syllable factor index out of range");
        if (!f_[s.f].valid(s.e))
            throw input_error("syllable element out of range");
    }

    GWord normalize(const std::vector<Syl>& raw) const
    {
        GWord w;
        for (const auto& s : raw) {
            check(s);
            push(w, s);
        }
        return w;
    }

    GWord mul(const GWord& u, const GWord& v) const
    {
        GWord w = u;
        for (const auto& s : v)
            push(w, s);
        return w;
    }

    GWord mul(const GWord& u, const GWord& v, const GWord& t) const { return mul(mul(u, v), t); }

    GWord inv(const GWord& u) const
    {
        GWord w;
        w.reserve(u.size());
        for (auto it = u.rbegin(); it != u.rend(); ++it)
            w.push_back({it->f, f_[it->f].inv(it->e)});
        return w;
    }

    // g^-1 x g
    GWord conj(const GWord& x, const GWord& g) const { return mul(inv(g), x, g); }

    GWord letter(int k, Elem e) const
    {
        if (e == 0)
            return {};
        return {Syl{k, e}};
    }

    // drop a leading syllable from factor k: representative of the coset G_k w
    GWord strip_lead(int k, const GWord& w) const
    {
        if (!w.empty() && w.front().f == k)
            return GWord(w.begin() + 1, w.end());
        return w;
    }

    GWord strip_trail(int k, const GWord& w) const
    {
        if (!w.empty() && w.back().f == k)
            return GWord(w.begin(), w.end() - 1);
        return w;
    }

    // representative of G_i w G_j
    GWord strip_both(int i, int j, const GWord& w) const { return strip_trail(j, strip_lead(i, w)); }

    bool in_factor(const GWord& w, int k) const { return w.empty() || (w.size() == 1 && w[0].f == k); }

    // element of G_k, assuming in_factor
    Elem as_elem(const GWord& w) const { return w.empty() ? 0 : w[0].e; }

    // (length, syllables) order
    bool less(const GWord& a, const GWord& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        for (std::size_t t = 0; t < a.size(); ++t) {
            if (a[t].f != b[t].f)
                return a[t].f < b[t].f;
            auto ka = f_[a[t].f].order_key(a[t].e), kb = f_[b[t].f].order_key(b[t].e);
            if (ka != kb)
                return ka < kb;
        }
        return false;
    }

    bool tuple_less(const std::vector<GWord>& a, const std::vector<GWord>& b) const
    {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (less(a[k], b[k]))
                return true;
            if (less(b[k], a[k]))
                return false;
        }
        return false;
    }

    std::string show(const GWord& w) const
    {
        if (w.empty())
            return "1";
        std::string s;
        for (const auto& y : w) {
            if (!s.empty())
                s += ".";
            s += "g" + std::to_string(y.f + 1) + "[" + f_[y.f].name(y.e) + "]";
        }
        return s;
    }

private:
    std::vector<FactorGroup> f_;

    void push(GWord& w, const Syl& s) const
    {
        if (s.e == 0)
            return;
        if (!w.empty() && w.back().f == s.f) {
            Elem p = f_[s.f].mul(w.back().e, s.e);
            if (p == 0)
                w.pop_back();
            else
                w.back().e = p;
        } else {
            w.push_back(s);
        }
    }
};

inline std::size_t syllable_length(const GWord& w) { return w.size(); }

} // namespace fpaut

#endif
