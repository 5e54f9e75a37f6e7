#include "doctest.h"
#include "support.hpp"

#include "fpaut/json_io.hpp"

using namespace fpaut;
using namespace fpaut::testing;
using fpaut::io::json;

TEST_CASE("factor systems round-trip through JSON")
{
    for (auto fs : {mixed(5), with_s3(4), uniform(3, 0)}) {
        json j = io::to_json(fs);
        CHECK(j.at("n") == fs.n());
        CHECK(io::system_from_json(j) == fs);
        CHECK(io::system_from_json(json::parse(j.dump())) == fs);
    }
}

TEST_CASE("malformed factor systems are input errors")
{
    CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"factors":[{"kind":"cyclic","order":1}]})")), input_error);
    CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"n":3,"factors":[{"kind":"z"},{"kind":"z"}]})")),
                    input_error);
    CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"factors":[{"kind":"free"}]})")), input_error);
    // not associative
    CHECK_THROWS_AS(io::system_from_json(json::parse(
                        R"({"factors":[{"kind":"table","elements":["e","a","b"],"table":[[0,1,2],[1,0,0],[2,0,1]]},
                                       {"kind":"z"}]})")),
                    input_error);
}

TEST_CASE("words, automorphisms and moves round-trip")
{
    std::mt19937_64 rng(71);
    for (auto fs : {mixed(5), with_s3(4)}) {
        for (int t = 0; t < 50; ++t) {
            GWord w = random_word(fs, rng, 6);
            CHECK(io::word_from_json(fs, io::to_json(w)) == w);

            PureAut a = compose(fs, random_product(fs, rng, 3), factor_aut(fs, random_phi(fs, rng)));
            PureAut b = io::aut_from_json(fs, json::parse(io::to_json(fs, a).dump()));
            CHECK(b == a);

            Domain d = random_domain(fs, rng, 3);
            MultiMove m = random_move(fs, d, rng, 3);
            MultiMove back = io::move_from_json(fs, d, io::to_json(m));
            CHECK(back == m);
        }
    }
}

TEST_CASE("element names and move element forms")
{
    FactorSystem fs = with_s3(3);
    CHECK(io::elem_from_json(fs.factor(0), json("r")) == 4);
    CHECK(io::elem_from_json(fs.factor(0), json(4)) == 4);
    CHECK_THROWS_AS(io::elem_from_json(fs.factor(0), json("q")), input_error);
    CHECK_THROWS_AS(io::elem_from_json(fs.factor(0), json(6)), input_error);

    Domain d = base_domain(fs);
    json je = json::parse(R"({"op_factor":1,"parts":[{"leaves":[2,3],"e":"s"}]})");
    json jx = json::parse(R"({"op_factor":1,"parts":[{"leaves":[2,3],"x":[[1,1]]}]})");
    CHECK(io::move_from_json(fs, d, je) == io::move_from_json(fs, d, jx));
    json bad_base = json::parse(R"({"base":[[[2,1]],[],[]],"op_factor":1,"parts":[]})");
    CHECK_THROWS_AS(io::move_from_json(fs, d, bad_base), input_error);
    json bad_leaf = json::parse(R"({"op_factor":1,"parts":[{"leaves":[4],"e":1}]})");
    CHECK_THROWS_AS(io::move_from_json(fs, d, bad_leaf), input_error);
}

TEST_CASE("generator words and shapes round-trip")
{
    FactorSystem fs = mixed(4);
    GeneratorWord w{f_letter(0, 1, 1), phi_letter(sample_phis(fs).front()), f_letter(3, 2, -2)};
    GeneratorWord back = io::generator_word_from_json(fs, io::to_json(fs, w));
    CHECK(outer_equal(fs, eval_generator_word(fs, back), eval_generator_word(fs, w)));
    CHECK(io::to_json(fs, back) == io::to_json(fs, w));

    for (const auto& s : ShapeCatalog(5).shapes())
        CHECK(io::shape_from_json(5, io::to_json(s)) == s);
    CHECK_THROWS_AS(io::shape_from_json(5, json::parse(R"({"shape":"B","indices":[1,2]})")), input_error);
    CHECK_THROWS_AS(io::shape_from_json(5, json::parse(R"({"shape":"Q","indices":[]})")), input_error);
}

TEST_CASE("reports are deterministic and hash their inputs")
{
    CHECK(io::content_hash("") == "cbf29ce484222325");
    CHECK(io::content_hash("a") == "af63dc4c8601ec8c");
    io::Report r{"x"};
    r.seed = 3;
    r.add("ok", true);
    CHECK(r.all_pass());
    r.add("bad", false, {{"why", 1}});
    CHECK_FALSE(r.all_pass());
    CHECK(r.to_json("v").dump() == r.to_json("v").dump());
    CHECK(r.to_json("v").at("results").size() == 2);
}
