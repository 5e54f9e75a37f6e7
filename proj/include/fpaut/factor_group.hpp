#ifndef FPAUT_FACTOR_GROUP_HPP
#define FPAUT_FACTOR_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fpaut {

using Elem = std::int64_t;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FactorKind { table, cyclic, integers };

inline Elem checked_add(Elem a, Elem b)
{
    Elem r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer factor exponent overflow");
    return r;
}

inline Elem checked_neg(Elem a)
{
    if (a == INT64_MIN)
        throw std::overflow_error("integer factor exponent overflow");
    return -a;
}

// An automorphism of one factor. Finite factors store the full image table,
// the infinite cyclic factor only needs a sign.
struct FactorAut {
    std::vector<Elem> image;
    int sign = 1;

    bool operator==(const FactorAut&) const = default;
    auto operator<=>(const FactorAut&) const = default;
};

class FactorGroup {
public:
    static FactorGroup cyclic(Elem m)
    {
        if (m < 2)
            throw input_error("cyclic factor must have order >= 2");
        FactorGroup g;
        g.kind_ = FactorKind::cyclic;
        g.order_ = m;
        g.gens_ = {1};
        return g;
    }

    static FactorGroup integers()
    {
        FactorGroup g;
        g.kind_ = FactorKind::integers;
        g.order_ = 0;
        g.gens_ = {1};
        return g;
    }

    static FactorGroup table(std::vector<std::string> names, std::vector<std::vector<Elem>> t)
    {
        const auto n = static_cast<Elem>(t.size());
        if (n < 2)
            throw input_error("table factor must be non-trivial");
        if (!names.empty() && static_cast<Elem>(names.size()) != n)
            throw input_error("element name count does not match table size");
        for (const auto& row : t) {
            if (static_cast<Elem>(row.size()) != n)
                throw input_error("Cayley table is not square");
            for (Elem v : row)
                if (v < 0 || v >= n)
                    throw input_error("Cayley table entry out of range");
        }
        for (Elem a = 0; a < n; ++a)
            if (t[0][a] != a || t[a][0] != a)
                throw input_error("element 0 must be the identity of a table factor");
        FactorGroup g;
        g.kind_ = FactorKind::table;
        g.order_ = n;
        g.table_ = std::move(t);
        g.names_ = std::move(names);
        g.inv_.assign(n, -1);
        for (Elem a = 0; a < n; ++a) {
            for (Elem b = 0; b < n; ++b)
                if (g.table_[a][b] == 0) {
                    if (g.table_[b][a] != 0)
                        throw input_error("Cayley table: one-sided inverse");
                    g.inv_[a] = b;
                    break;
                }
            if (g.inv_[a] < 0)
                throw input_error("Cayley table: element without inverse");
        }
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]])
                        throw input_error("Cayley table is not associative");
        g.gens_ = g.greedy_generators();
        return g;
    }

    FactorKind kind() const { return kind_; }
    bool finite() const { return kind_ != FactorKind::integers; }
    // 0 for the infinite cyclic group
    Elem order() const { return order_; }

    bool valid(Elem a) const
    {
        if (kind_ == FactorKind::integers)
            return true;
        return a >= 0 && a < order_;
    }

    Elem mul(Elem a, Elem b) const
    {
        switch (kind_) {
        case FactorKind::table: return table_[a][b];
        case FactorKind::cyclic: return (a + b) % order_;
        default: return checked_add(a, b);
        }
    }

    Elem inv(Elem a) const
    {
        switch (kind_) {
        case FactorKind::table: return inv_[a];
        case FactorKind::cyclic: return a == 0 ? 0 : order_ - a;
        default: return checked_neg(a);
        }
    }

    Elem power(Elem a, Elem k) const
    {
        if (k < 0) {
            a = inv(a);
            k = -k;
        }
        if (kind_ == FactorKind::integers) {
            Elem r;
            if (__builtin_mul_overflow(a, k, &r))
                throw std::overflow_error("integer factor exponent overflow");
            return r;
        }
        Elem r = 0;
        for (Elem i = 0; i < k; ++i)
            r = mul(r, a);
        return r;
    }

    // total order: table position, and 0 < 1 < -1 < 2 < -2 ... for the integers
    std::uint64_t order_key(Elem a) const
    {
        if (kind_ != FactorKind::integers)
            return static_cast<std::uint64_t>(a);
        if (a > 0)
            return 2 * static_cast<std::uint64_t>(a) - 1;
        return 2 * static_cast<std::uint64_t>(-(a + 1)) + 2;
    }

    const std::vector<Elem>& generators() const { return gens_; }

    std::vector<Elem> elements() const
    {
        if (!finite())
            throw std::logic_error("elements() on an infinite factor");
        std::vector<Elem> r(order_);
        std::iota(r.begin(), r.end(), Elem{0});
        return r;
    }

    std::string name(Elem a) const
    {
        if (kind_ == FactorKind::table && !names_.empty())
            return names_[a];
        return std::to_string(a);
    }

    const std::vector<std::vector<Elem>>& cayley_table() const { return table_; }
    const std::vector<std::string>& element_names() const { return names_; }

    bool central(Elem a) const
    {
        if (kind_ != FactorKind::table)
            return true;
        for (Elem b = 0; b < order_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
        return true;
    }

    // inner automorphism x -> h^-1 x h
    FactorAut inner(Elem h) const
    {
        FactorAut f = identity_aut();
        if (kind_ == FactorKind::table)
            for (Elem x = 0; x < order_; ++x)
                f.image[x] = mul(mul(inv(h), x), h);
        return f;
    }

    FactorAut identity_aut() const
    {
        FactorAut f;
        if (finite()) {
            f.image.resize(order_);
            std::iota(f.image.begin(), f.image.end(), Elem{0});
        }
        return f;
    }

    Elem apply(const FactorAut& f, Elem a) const
    {
        if (!finite())
            return f.sign > 0 ? a : checked_neg(a);
        return f.image[a];
    }

    // first f then g
    FactorAut then(const FactorAut& f, const FactorAut& g) const
    {
        FactorAut r;
        if (!finite()) {
            r.sign = f.sign * g.sign;
            return r;
        }
        r.image.resize(order_);
        for (Elem x = 0; x < order_; ++x)
            r.image[x] = g.image[f.image[x]];
        return r;
    }

    FactorAut inverse(const FactorAut& f) const
    {
        FactorAut r;
        if (!finite()) {
            r.sign = f.sign;
            return r;
        }
        r.image.resize(order_);
        for (Elem x = 0; x < order_; ++x)
            r.image[f.image[x]] = x;
        return r;
    }

    bool is_automorphism(const FactorAut& f) const
    {
        if (!finite())
            return f.sign == 1 || f.sign == -1;
        if (static_cast<Elem>(f.image.size()) != order_)
            return false;
        std::vector<char> seen(order_, 0);
        for (Elem v : f.image) {
            if (v < 0 || v >= order_ || seen[v])
                return false;
            seen[v] = 1;
        }
        if (kind_ == FactorKind::cyclic) {
            Elem u = f.image[1];
            for (Elem x = 0; x < order_; ++x)
                if (f.image[x] != static_cast<Elem>((static_cast<__int128>(u) * x) % order_))
                    return false;
            return true;
        }
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = 0; b < order_; ++b)
                if (f.image[mul(a, b)] != mul(f.image[a], f.image[b]))
                    return false;
        return true;
    }

    // Aut of the factor; brute force over generator images for table groups
    std::vector<FactorAut> automorphisms() const
    {
        std::vector<FactorAut> out;
        if (kind_ == FactorKind::integers) {
            out.push_back(FactorAut{{}, 1});
            out.push_back(FactorAut{{}, -1});
            return out;
        }
        if (kind_ == FactorKind::cyclic) {
            if (order_ > 100000)
                throw input_error("cyclic factor too large for automorphism enumeration");
            for (Elem u = 1; u < order_; ++u) {
                if (std::gcd(u, order_) != 1)
                    continue;
                FactorAut f;
                f.image.resize(order_);
                for (Elem x = 0; x < order_; ++x)
                    f.image[x] = static_cast<Elem>((static_cast<__int128>(u) * x) % order_);
                out.push_back(std::move(f));
            }
            return out;
        }
        if (order_ > 24)
            throw input_error("table factor of order > 24: automorphism enumeration refused");
        std::vector<Elem> ord(order_);
        for (Elem a = 0; a < order_; ++a)
            ord[a] = element_order(a);
        std::vector<Elem> img(gens_.size());
        enumerate_images(0, img, ord, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    // a small generating set of Aut(G_k)
    std::vector<FactorAut> automorphism_generators() const
    {
        auto all = automorphisms();
        std::vector<FactorAut> gens;
        std::vector<FactorAut> closure{identity_aut()};
        auto contains = [&](const FactorAut& f) {
            return std::find(closure.begin(), closure.end(), f) != closure.end();
        };
        for (const auto& f : all) {
            if (contains(f))
                continue;
            gens.push_back(f);
            for (std::size_t k = 0; k < closure.size(); ++k)
                for (const auto& g : gens) {
                    auto h = then(closure[k], g);
                    if (!contains(h))
                        closure.push_back(h);
                }
        }
        return gens;
    }

    Elem element_order(Elem a) const
    {
        if (!finite())
            return a == 0 ? 1 : 0;
        Elem k = 1;
        for (Elem x = a; x != 0; x = mul(x, a))
            ++k;
        return k;
    }

    bool operator==(const FactorGroup& o) const
    {
        return kind_ == o.kind_ && order_ == o.order_ && table_ == o.table_;
    }

private:
    FactorKind kind_ = FactorKind::cyclic;
    Elem order_ = 2;
    std::vector<std::vector<Elem>> table_;
    std::vector<std::string> names_;
    std::vector<Elem> inv_;
    std::vector<Elem> gens_;

    std::vector<Elem> subgroup_closure(const std::vector<Elem>& gens) const
    {
        std::vector<char> in(order_, 0);
        std::vector<Elem> list{0};
        in[0] = 1;
        for (std::size_t k = 0; k < list.size(); ++k)
            for (Elem g : gens) {
                Elem y = mul(list[k], g);
                if (!in[y]) {
                    in[y] = 1;
                    list.push_back(y);
                }
            }
        return list;
    }

    std::vector<Elem> greedy_generators() const
    {
        std::vector<Elem> gens;
        std::vector<char> in(order_, 0);
        in[0] = 1;
        for (Elem a = 1; a < order_; ++a) {
            if (in[a])
                continue;
            gens.push_back(a);
            for (Elem y : subgroup_closure(gens))
                in[y] = 1;
        }
        return gens;
    }

    void enumerate_images(std::size_t k, std::vector<Elem>& img, const std::vector<Elem>& ord,
                          std::vector<FactorAut>& out) const
    {
        if (k == gens_.size()) {
            // extend along words in the generators
            std::vector<Elem> f(order_, -1);
            f[0] = 0;
            std::vector<Elem> queue{0};
            for (std::size_t q = 0; q < queue.size(); ++q) {
                Elem x = queue[q];
                for (std::size_t g = 0; g < gens_.size(); ++g) {
                    Elem y = mul(x, gens_[g]);
                    Elem fy = mul(f[x], img[g]);
                    if (f[y] < 0) {
                        f[y] = fy;
                        queue.push_back(y);
                    } else if (f[y] != fy) {
                        return;
                    }
                }
            }
            FactorAut a{f, 1};
            if (is_automorphism(a))
                out.push_back(std::move(a));
            return;
        }
        for (Elem c = 1; c < order_; ++c) {
            if (ord[c] != ord[gens_[k]])
                continue;
            img[k] = c;
            enumerate_images(k + 1, img, ord, out);
        }
    }
};

} // namespace fpaut

#endif
