#ifndef FPAUT_TEST_SUPPORT_HPP
#define FPAUT_TEST_SUPPORT_HPP

#include "fpaut/descent.hpp"
#include "fpaut/suite.hpp"

#include <random>

namespace fpaut::testing {

inline FactorGroup s3() { return suite::symmetric3(); }

inline FactorSystem uniform(int n, Elem m)
{
    std::vector<FactorGroup> f;
    for (int k = 0; k < n; ++k)
        f.push_back(m == 0 ? FactorGroup::integers() : FactorGroup::cyclic(m));
    return FactorSystem(f);
}

inline FactorSystem mixed(int n)
{
    std::vector<Elem> orders{2, 3, 4, 0, 3, 2, 5};
    std::vector<FactorGroup> f;
    for (int k = 0; k < n; ++k)
        f.push_back(orders[k] == 0 ? FactorGroup::integers() : FactorGroup::cyclic(orders[k]));
    return FactorSystem(f);
}

inline FactorSystem with_s3(int n)
{
    std::vector<FactorGroup> f{s3()};
    for (int k = 1; k < n; ++k)
        f.push_back(FactorGroup::cyclic(2));
    return FactorSystem(f);
}

inline Elem random_elem(const FactorGroup& g, std::mt19937_64& rng, bool nontrivial = true)
{
    if (g.finite()) {
        std::uniform_int_distribution<Elem> d(nontrivial ? 1 : 0, g.order() - 1);
        return d(rng);
    }
    std::uniform_int_distribution<Elem> d(-2, 2);
    Elem e = 0;
    while (e == 0) {
        e = d(rng);
        if (!nontrivial)
            break;
    }
    return e;
}

inline GWord random_word(const FactorSystem& fs, std::mt19937_64& rng, int max_len)
{
    std::uniform_int_distribution<int> len(0, max_len), fac(0, fs.n() - 1);
    std::vector<Syl> raw;
    int l = len(rng);
    for (int t = 0; t < l; ++t) {
        int k = fac(rng);
        raw.push_back({k, random_elem(fs.factor(k), rng)});
    }
    return fs.normalize(raw);
}

inline PureAut random_generator(const FactorSystem& fs, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> fac(0, fs.n() - 1);
    int i = fac(rng), j = fac(rng);
    while (j == i)
        j = fac(rng);
    return f_gen(fs, i, j, random_elem(fs.factor(i), rng));
}

inline PureAut random_product(const FactorSystem& fs, std::mt19937_64& rng, int len)
{
    PureAut a = identity_aut(fs);
    for (int t = 0; t < len; ++t)
        a = compose(fs, a, random_generator(fs, rng));
    return a;
}

inline std::vector<FactorAut> random_phi(const FactorSystem& fs, std::mt19937_64& rng)
{
    std::vector<FactorAut> phi;
    for (int k = 0; k < fs.n(); ++k) {
        auto all = fs.factor(k).automorphisms();
        std::uniform_int_distribution<std::size_t> d(0, all.size() - 1);
        phi.push_back(all[d(rng)]);
    }
    return phi;
}

inline Domain random_domain(const FactorSystem& fs, std::mt19937_64& rng, int len)
{
    return make_domain(fs, random_product(fs, rng, len));
}

} // namespace fpaut::testing

#endif
