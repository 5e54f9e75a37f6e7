#include "doctest.h"
#include "support.hpp"

#include "fpaut/complex.hpp"
#include "fpaut/presentation.hpp"

using namespace fpaut;
using namespace fpaut::testing;

namespace {

long choose(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int a = 1; a <= k; ++a)
        r = r * (n - k + a) / a;
    return r;
}

// vertex counts recomputed by choosing the labelled factors first and then
// counting the distinct ways to hang them on the shape
long counted_by_choice(ShapeTag t, int n)
{
    switch (t) {
    case ShapeTag::rho: return choose(n, 2);
    case ShapeTag::sigma: return choose(n, 5) * 15;
    case ShapeTag::tau: return choose(n, 4) * 12;
    case ShapeTag::alpha: return 1;
    case ShapeTag::beta: return choose(n, 2) * 2;
    case ShapeTag::gamma: return choose(n, 3) * 3;
    case ShapeTag::delta: return choose(n, 5) * 60;
    case ShapeTag::epsilon: return choose(n, 4) * 12;
    case ShapeTag::A: return n;
    case ShapeTag::B: return choose(n, 3) * 6;
    case ShapeTag::C: return choose(n, 5) * 60;
    }
    return -1;
}

} // namespace

TEST_CASE("small fundamental domains have the stated cell counts")
{
    auto c3 = build_domain_complex(3);
    CHECK(c3.vertices.size() == 4);
    CHECK(c3.cells() == 7);
    auto c4 = build_domain_complex(4);
    CHECK(c4.vertices.size() == 32);
    CHECK(c4.cells() == 159);
}

TEST_CASE("vertex counts per family match the closed forms")
{
    for (int n = 5; n <= 7; ++n) {
        auto counts = ShapeCatalog(n).counts();
        long total = 0;
        for (ShapeTag t : all_tags) {
            INFO("n=" << n << " " << tag_name(t));
            CHECK(counts[t] == counted_by_choice(t, n));
            CHECK(formula_vertex_count(t, n) == counted_by_choice(t, n));
            total += counts[t];
        }
        if (n == 5)
            CHECK(total == 381);
    }
}

TEST_CASE("fundamental domain complexes are connected with trivial H1")
{
    for (int n = 3; n <= 5; ++n) {
        INFO("n=" << n);
        auto c = build_domain_complex(n);
        CHECK(boundary_squared_zero(c));
        CHECK(connected_components(c) == 1);
        auto h = homology_h1(c);
        CHECK(h.free_rank == 0);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("every vertex reaches alpha along edges of the complex")
{
    for (int n = 3; n <= 6; ++n) {
        ShapeCatalog cat(n);
        std::set<std::pair<int, int>> edges;
        for (int v = 0; v < static_cast<int>(cat.shapes().size()); ++v)
            for (int w : cat.collapses(v))
                edges.insert(std::minmax(v, w));
        for (const auto& s : cat.shapes()) {
            auto p = path_to_alpha(cat, s);
            INFO(show(s));
            REQUIRE(!p.empty());
            CHECK(p.front() == s);
            CHECK(p.back().tag == ShapeTag::alpha);
            CHECK(p.size() <= 4);
            for (std::size_t t = 0; t + 1 < p.size(); ++t)
                CHECK(edges.count(std::minmax(cat.index_of(p[t]), cat.index_of(p[t + 1]))) == 1);
        }
    }
}

TEST_CASE("collapses lower the number of centres")
{
    ShapeCatalog cat(5);
    auto centres = [&](int v) {
        auto t = build_tree(5, cat.shapes()[v]);
        return std::count(t.label.begin(), t.label.end(), -1);
    };
    for (int v = 0; v < static_cast<int>(cat.shapes().size()); ++v)
        for (int w : cat.collapses(v))
            CHECK(centres(w) < centres(v));
}

TEST_CASE("stabilizer generators and relations hold for every family")
{
    for (auto fs : {uniform(5, 2), mixed(5)}) {
        std::set<ShapeTag> seen;
        for (const auto& s : ShapeCatalog(5).shapes()) {
            if (!seen.insert(s.tag).second)
                continue;
            for (const auto& r : check_stabilizer(fs, s)) {
                INFO(show(s) << " " << r.id << " " << r.params);
                CHECK(r.pass);
            }
        }
    }
}

TEST_CASE("an f generator fixes A_i and moves alpha and A_k")
{
    // negative control for the stabilizer membership test
    FactorSystem fs = uniform(5, 2);
    PureAut f = f_gen(fs, 0, 1, 1);
    ShapeInstance alpha{ShapeTag::alpha, {}};
    CHECK_FALSE(same_vertex(fs, base_vertex(fs, alpha), apply_outer(fs, base_vertex(fs, alpha), f)));
    ShapeInstance a0{ShapeTag::A, {0}};
    CHECK(same_vertex(fs, base_vertex(fs, a0), apply_outer(fs, base_vertex(fs, a0), f)));
    ShapeInstance a2{ShapeTag::A, {2}};
    CHECK_FALSE(same_vertex(fs, base_vertex(fs, a2), apply_outer(fs, base_vertex(fs, a2), f)));
}

TEST_CASE("outer action is a right action on labelled vertices")
{
    std::mt19937_64 rng(21);
    FactorSystem fs = mixed(5);
    ShapeCatalog cat(5);
    for (int t = 0; t < 60; ++t) {
        const auto& s = cat.shapes()[t * 7 % cat.shapes().size()];
        PureAut a = random_product(fs, rng, 2), b = random_product(fs, rng, 2);
        auto v = base_vertex(fs, s);
        CHECK(same_vertex(fs, apply_outer(fs, apply_outer(fs, v, a), b), apply_outer(fs, v, compose(fs, a, b))));
    }
}
