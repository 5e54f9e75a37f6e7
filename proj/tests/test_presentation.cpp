#include "doctest.h"
#include "support.hpp"

#include "fpaut/presentation.hpp"

using namespace fpaut;
using namespace fpaut::testing;

namespace {

FactorSystem first(const FactorSystem& fs, int n)
{
    return FactorSystem(std::vector<FactorGroup>(fs.factors().begin(), fs.factors().begin() + n));
}

void all_relations_hold(const FactorSystem& fs)
{
    auto r = check_relations(fs, case_for(fs.n()));
    CHECK(!r.empty());
    for (const auto& x : r) {
        INFO(x.id << " " << x.params);
        CHECK(x.pass);
    }
}

} // namespace

TEST_CASE("presentation relations hold")
{
    std::vector<FactorSystem> full{uniform(5, 2), suite::cyclic_system({2, 3, 4, 2, 3}), with_s3(5), mixed(5)};
    for (const auto& fs : full)
        for (int n = 3; n <= 5; ++n) {
            INFO(suite::describe(first(fs, n)));
            all_relations_hold(first(fs, n));
        }
}

TEST_CASE("relation case must fit the number of factors")
{
    CHECK_THROWS_AS(check_relations(uniform(3, 2), PresentationCase::n5), input_error);
    CHECK_THROWS_AS(check_relations(uniform(5, 2), PresentationCase::n4), input_error);
}

TEST_CASE("non-relations are detected")
{
    // f_{i_j} and f_{j_i} do not commute, and f_{i_j}(g) f_{i_k}(g) differs from
    // f_{i_k}(g) f_{i_j}(g') for g != g'
    FactorSystem fs = uniform(4, 3);
    PureAut a = f_gen(fs, 0, 1, 1), b = f_gen(fs, 1, 0, 1);
    CHECK_FALSE(outer_equal(fs, compose(fs, a, b), compose(fs, b, a)));
    PureAut c = f_gen(fs, 0, 2, 1), c2 = f_gen(fs, 0, 2, 2);
    CHECK_FALSE(outer_equal(fs, compose(fs, a, c), compose(fs, c2, a)));
    CHECK(outer_equal(fs, compose(fs, a, c), compose(fs, c, a)));
}

TEST_CASE("semidirect normal form at n = 3")
{
    for (auto fs : {uniform(3, 2), suite::cyclic_system({2, 3, 4}), with_s3(3)}) {
        auto r = semidirect_check_n3(fs, 150, 5);
        CHECK(!r.empty());
        for (const auto& x : r) {
            INFO(suite::describe(fs) << " " << x.id << " " << x.params);
            CHECK(x.pass);
        }
    }
}

TEST_CASE("rewriting in generators round-trips")
{
    std::mt19937_64 rng(31);
    for (auto fs : {uniform(3, 2), mixed(4), mixed(5), with_s3(4)}) {
        for (int t = 0; t < 20; ++t) {
            PureAut psi = random_product(fs, rng, 1 + t % 6);
            if (t % 3 == 0)
                psi = compose(fs, psi, factor_aut(fs, random_phi(fs, rng)));
            for (bool phi_last : {false, true}) {
                auto f = rewrite_in_generators(fs, psi, phi_last);
                CHECK(outer_equal(fs, eval_generator_word(fs, f.word), psi));
                for (const auto& l : f.word)
                    CHECK_NOTHROW(check_letter(fs, l));
            }
        }
    }
}

TEST_CASE("rewriting small inputs")
{
    FactorSystem fs = mixed(4);
    auto id = rewrite_in_generators(fs, identity_aut(fs));
    CHECK(id.moves.empty());
    CHECK(id.word.size() <= 1);
    PureAut f = f_gen(fs, 0, 1, 1);
    auto w = rewrite_in_generators(fs, f);
    CHECK(w.moves.size() == 1);
    CHECK(outer_equal(fs, eval_generator_word(fs, w.word), f));
}

TEST_CASE("factorizing a domain replays to it")
{
    std::mt19937_64 rng(33);
    FactorSystem fs = mixed(5);
    CHECK(factorize_domain(fs, base_domain(fs)).empty());
    for (int t = 0; t < 30; ++t) {
        Domain d = random_domain(fs, rng, 1 + t % 8);
        auto moves = factorize_domain(fs, d);
        Domain cur = base_domain(fs);
        std::vector<long> h{0};
        for (const auto& m : moves) {
            cur = apply_move(fs, cur, m);
            h.push_back(height(fs, cur));
        }
        CHECK(canonicalize_alpha(fs, cur.labelling()) == canonicalize_alpha(fs, d.labelling()));
        CHECK(h.back() == height(fs, d));
    }
}
