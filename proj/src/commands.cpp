#include "fpaut/commands.hpp"

#include "fpaut/complex.hpp"
#include "fpaut/json_io.hpp"
#include "fpaut/suite.hpp"

#include <fstream>
#include <iostream>

namespace fpaut::cli {

using io::json;

namespace {

void write_json(const std::string& path, const json& j)
{
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw input_error("cannot write " + path);
    f << j.dump(2) << "\n";
}

FactorSystem load_system(const Options& o, io::Report& r)
{
    if (o.system.empty())
        throw input_error("--system is required");
    r.add_input("system", o.system);
    return io::system_from_json(io::read_json_file(o.system));
}

int finish(const io::Report& r, const std::string& path)
{
    write_json(path, r.to_json(version));
    return r.all_pass() ? 0 : 1;
}

Domain load_domain(const Options& o, const FactorSystem& fs, io::Report& r)
{
    if (o.domain.empty())
        return base_domain(fs);
    r.add_input("domain", o.domain);
    return io::domain_from_json(fs, io::read_json_file(o.domain));
}

} // namespace

int cmd_relations(const Options& o)
{
    io::Report r{"relations"};
    FactorSystem fs = load_system(o, r);
    PresentationCase pc = case_for(fs.n());
    if (!o.case_name.empty()) {
        if (o.case_name == "n5")
            pc = PresentationCase::n5;
        else if (o.case_name == "n4")
            pc = PresentationCase::n4;
        else if (o.case_name == "n3")
            pc = PresentationCase::n3;
        else
            throw input_error("--case must be n5, n4 or n3");
        int need = pc == PresentationCase::n5 ? 5 : pc == PresentationCase::n4 ? 4 : 3;
        if ((pc == PresentationCase::n5 && fs.n() < 5) || (pc != PresentationCase::n5 && fs.n() != need))
            throw input_error("case " + o.case_name + " does not fit a system with " + std::to_string(fs.n()) +
                              " factors");
    }
    r.data["case"] = case_name(pc);
    for (const auto& x : check_relations(fs, pc))
        r.add(x.id + " " + x.params, x.pass, x.pass ? json(nullptr) : io::witness_json(fs, x));
    if (pc == PresentationCase::n3) {
        r.seed = o.seed;
        for (const auto& x : semidirect_check_n3(fs, o.samples > 0 ? o.samples : 200, static_cast<unsigned>(o.seed)))
            r.add(x.id + " " + x.params, x.pass, x.pass ? json(nullptr) : io::witness_json(fs, x));
    }
    return finish(r, o.out);
}

int cmd_stabilizers(const Options& o)
{
    io::Report r{"stabilizers"};
    FactorSystem fs = load_system(o, r);
    std::vector<ShapeInstance> shapes;
    if (!o.shape.empty()) {
        json j = {{"shape", o.shape}, {"indices", o.indices}};
        shapes.push_back(io::shape_from_json(fs.n(), j));
    } else {
        // one representative per family
        std::set<ShapeTag> seen;
        for (const auto& s : ShapeCatalog(fs.n()).shapes())
            if (seen.insert(s.tag).second)
                shapes.push_back(s);
    }
    for (const auto& s : shapes)
        for (const auto& x : check_stabilizer(fs, s))
            r.add(show(s) + " " + x.id + " " + x.params, x.pass, x.pass ? json(nullptr) : io::witness_json(fs, x));
    return finish(r, o.out);
}

int cmd_fundomain(const Options& o)
{
    io::Report r{"fundomain"};
    if (o.n < 3 || o.n > 7)
        throw input_error("--n must be between 3 and 7");
    CellComplex c = build_domain_complex(o.n);
    r.data["n"] = o.n;
    r.data["vertices"] = c.vertices.size();
    r.data["edges"] = c.edges.size();
    r.data["faces"] = c.faces.size();
    r.data["cells"] = c.cells();
    r.add("boundary-squared-zero", boundary_squared_zero(c));
    r.add("connected", connected_components(c) == 1, {{"components", connected_components(c)}});
    if (o.counts) {
        ShapeCatalog cat(o.n);
        auto counts = cat.counts();
        json cj = json::object();
        for (ShapeTag t : all_tags) {
            cj[tag_name(t)] = counts[t];
            if (o.n >= 5)
                r.add(std::string("count-") + tag_name(t), counts[t] == formula_vertex_count(t, o.n),
                      {{"found", counts[t]}, {"formula", formula_vertex_count(t, o.n)}});
        }
        r.data["counts"] = cj;
    }
    if (o.h1) {
        Homology1 h = homology_h1(c);
        json tor = json::array();
        for (const auto& t : h.torsion)
            tor.push_back(t.str());
        r.data["h1"] = {{"free_rank", h.free_rank}, {"torsion", tor}};
        r.add("h1-trivial", h.trivial(), r.data["h1"]);
    }
    if (!o.complex_out.empty()) {
        json cx = {{"n", o.n}};
        cx["vertices"] = json::array();
        for (const auto& v : c.vertices)
            cx["vertices"].push_back(io::to_json(v));
        cx["edges"] = json::array();
        for (auto [a, b] : c.edges)
            cx["edges"].push_back({a, b});
        cx["faces"] = json::array();
        for (const auto& f : c.faces)
            cx["faces"].push_back({f[0], f[1], f[2]});
        write_json(o.complex_out, cx);
    }
    return finish(r, o.out);
}

int cmd_height(const Options& o)
{
    io::Report r{"height"};
    FactorSystem fs = load_system(o, r);
    Domain d = load_domain(o, fs, r);
    HeightReport h = height_report(fs, d);
    json table = json::array();
    for (auto [ij, dist] : h.distance)
        table.push_back({{"i", ij.first + 1}, {"j", ij.second + 1}, {"distance", dist}});
    r.data["labelling"] = io::to_json(d.labelling());
    r.data["distances"] = table;
    r.data["height"] = h.height;
    r.add("height-from-distances", h.height == height(fs, d), {{"from_distances", h.height}, {"direct", height(fs, d)}});
    return finish(r, o.out);
}

int cmd_dist(const Options& o)
{
    io::Report r{"dist"};
    FactorSystem fs = load_system(o, r);
    Domain d = load_domain(o, fs, r);
    if (o.i < 1 || o.i > fs.n() || o.j < 1 || o.j > fs.n())
        throw input_error("--i and --j must name factors 1..n");
    int i = o.i - 1, j = o.j - 1;
    int dist = i == j ? 0 : tree_distance(fs, d, i, j);
    r.data["i"] = o.i;
    r.data["j"] = o.j;
    r.data["distance"] = dist;
    if (i != j) {
        auto path = geodesic_edges(fs, d, i, j);
        r.add("geodesic-length", static_cast<int>(path.size()) == dist, {{"edges", path.size()}});
    }
    return finish(r, o.out);
}

int cmd_factorize(const Options& o)
{
    io::Report r{"factorize"};
    FactorSystem fs = load_system(o, r);
    if (o.aut.empty())
        throw input_error("--aut is required");
    r.add_input("aut", o.aut);
    PureAut psi = io::aut_from_json(fs, io::read_json_file(o.aut));
    Factorization f;
    try {
        f = rewrite_in_generators(fs, psi);
    } catch (const search_exhausted& e) {
        throw input_error(std::string("not a pure symmetric automorphism: ") + e.what());
    }
    json word = io::to_json(fs, f.word);
    json moves = json::array();
    for (const auto& m : f.moves)
        moves.push_back(io::to_json(m));
    r.data["word"] = word;
    r.data["moves"] = moves;
    r.add("outer-equal", outer_equal(fs, eval_generator_word(fs, f.word), psi), {{"letters", f.word.size()}});
    if (!o.out.empty())
        write_json(o.out, word);
    return finish(r, o.report);
}

int cmd_reduce_loop(const Options& o)
{
    io::Report r{"reduce-loop"};
    FactorSystem fs = load_system(o, r);
    if (o.loop.empty())
        throw input_error("--loop is required");
    r.add_input("loop", o.loop);
    json lj = io::read_json_file(o.loop);
    // either a bare move array starting at the base domain, or {"start", "moves"}
    Domain start = base_domain(fs);
    json mj = lj;
    if (lj.is_object()) {
        if (lj.contains("start"))
            start = io::domain_from_json(fs, lj.at("start"));
        mj = io::detail::field(lj, "moves");
    }
    if (!mj.is_array())
        throw input_error("loop moves must be an array");
    std::vector<MultiMove> moves;
    Domain cur = start;
    for (const auto& m : mj) {
        moves.push_back(io::move_from_json(fs, cur, m));
        cur = apply_move(fs, cur, moves.back());
    }
    ReductionTrace tr = reduce_loop(fs, start, moves);
    bool decreasing = true;
    json steps = json::array();
    for (const auto& s : tr.steps) {
        decreasing = decreasing && s.after < s.before;
        steps.push_back({{"index", s.index},
                         {"case", peak_case_name(s.kind)},
                         {"peak_height", s.peak_height},
                         {"before", s.before},
                         {"after", s.after}});
    }
    r.data["length"] = moves.size();
    r.data["reductions"] = tr.steps.size();
    r.data["removed_backtracks"] = tr.removed_backtracks;
    r.add("constant-loop", tr.final_loop.size() == 1);
    r.add("profile-decreasing", decreasing);
    if (!o.trace.empty()) {
        json t = {{"steps", steps}};
        t["final"] = json::array();
        for (const auto& d : tr.final_loop)
            t["final"].push_back({{"labelling", io::to_json(d.labelling())}});
        write_json(o.trace, t);
    }
    return finish(r, o.out);
}

int cmd_selftest(const Options& o)
{
    io::Report r{"selftest"};
    r.seed = o.seed;
    std::mt19937_64 rng(static_cast<std::uint64_t>(o.seed));
    const int k = o.samples > 0 ? o.samples : 40;
    auto put = [&](const suite::Check& c) { r.add(c.id, c.pass, {{"detail", c.detail}}); };
    auto put_all = [&](const suite::Checks& cs) {
        for (const auto& c : cs)
            put(c);
    };

    for (int n = 3; n <= 5; ++n) {
        CellComplex c = build_domain_complex(n);
        Homology1 h = homology_h1(c);
        r.add("fundomain n=" + std::to_string(n), boundary_squared_zero(c) && h.trivial(),
              {{"vertices", c.vertices.size()}, {"cells", c.cells()}});
    }
    std::vector<FactorSystem> systems{suite::cyclic_system({2, 2, 2}), suite::cyclic_system({2, 3, 0, 4}),
                                      suite::cyclic_system({2, 3, 4, 2, 3}), suite::s3_system(4)};
    for (const auto& fs : systems) {
        put_all(suite::whitehead_identities(fs, rng, k));
        put(suite::height_delta_check(fs, rng, k));
        put(suite::height_zero_check(fs, rng, k));
        put_all(suite::peak_checks(fs, rng, std::max(2, k / 8)));
        if (fs.n() >= 4)
            put(suite::loop_check(fs, rng, std::max(2, k / 8)));
        put(suite::roundtrip_check(fs, rng, std::max(2, k / 8)));
        put(suite::relation_check(fs, case_for(fs.n())));
    }
    FactorSystem z2 = suite::cyclic_system({2, 2, 2, 2, 2});
    std::set<ShapeTag> seen;
    for (const auto& s : ShapeCatalog(5).shapes())
        if (seen.insert(s.tag).second)
            put(suite::stabilizer_check(z2, s));
    return finish(r, o.out);
}

} // namespace fpaut::cli
