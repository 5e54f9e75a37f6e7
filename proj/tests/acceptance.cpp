// One line per acceptance criterion. Exit status is the number of failures.

#include "oracle.hpp"
#include "support.hpp"

#include "fpaut/complex.hpp"
#include "fpaut/suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace fpaut;
using namespace fpaut::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, double limit_seconds, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s <= limit_seconds;
    bool ok = o.pass && in_time;
    if (!ok)
        ++failures;
    std::printf("criterion %2d: %s  %.2fs/%.0fs  %s%s\n", id, ok ? "PASS" : "FAIL", s, limit_seconds, o.detail.c_str(),
                in_time ? "" : " [over time limit]");
    std::fflush(stdout);
}

void merge(Outcome& o, const suite::Check& c)
{
    if (!c.pass) {
        o.pass = false;
        o.detail += " | " + c.id + ": " + c.detail;
    }
}

FactorSystem first(const FactorSystem& fs, int n)
{
    return FactorSystem(std::vector<FactorGroup>(fs.factors().begin(), fs.factors().begin() + n));
}

} // namespace

int main()
{
    criterion(1, 1.0, [] {
        auto c3 = build_domain_complex(3);
        auto c4 = build_domain_complex(4);
        std::ostringstream os;
        os << "D3 " << c3.vertices.size() << " vertices " << c3.cells() << " cells; D4 " << c4.vertices.size()
           << " vertices " << c4.cells() << " cells";
        return Outcome{c3.vertices.size() == 4 && c3.cells() == 7 && c4.vertices.size() == 32 && c4.cells() == 159,
                       os.str()};
    });

    criterion(2, 5.0, [] {
        const std::map<ShapeTag, int> expected{
            {ShapeTag::rho, 10},   {ShapeTag::sigma, 15}, {ShapeTag::tau, 60}, {ShapeTag::alpha, 1},
            {ShapeTag::beta, 20},  {ShapeTag::gamma, 30}, {ShapeTag::delta, 60}, {ShapeTag::epsilon, 60},
            {ShapeTag::A, 5},      {ShapeTag::B, 60},     {ShapeTag::C, 60}};
        auto counts = ShapeCatalog(5).counts();
        Outcome o;
        int total = 0;
        std::ostringstream os;
        for (ShapeTag t : all_tags) {
            total += counts[t];
            os << tag_name(t) << "=" << counts[t] << " ";
            if (counts[t] != expected.at(t) || counts[t] != formula_vertex_count(t, 5))
                o.pass = false;
        }
        os << "total=" << total;
        o.pass = o.pass && total == 381;
        o.detail = os.str();
        return o;
    });

    criterion(3, 60.0, [] {
        Outcome o;
        for (int n = 3; n <= 5; ++n) {
            auto c = build_domain_complex(n);
            auto h = homology_h1(c);
            o.detail += "n=" + std::to_string(n) + ": rank " + std::to_string(h.free_rank) + " torsion " +
                        std::to_string(h.torsion.size()) + "; ";
            o.pass = o.pass && h.trivial() && boundary_squared_zero(c);
        }
        return o;
    });

    criterion(4, 120.0, [] {
        Outcome o;
        std::size_t instances = 0;
        std::vector<FactorSystem> full{uniform(5, 2), suite::cyclic_system({2, 3, 4, 2, 3}), with_s3(5)};
        for (const auto& fs : full)
            for (int n = 3; n <= 5; ++n) {
                FactorSystem f = first(fs, n);
                auto c = suite::relation_check(f, case_for(n));
                instances += check_relations(f, case_for(n)).size();
                merge(o, c);
                if (n == 3)
                    merge(o, suite::semidirect_check(f, 200, 4));
            }
        o.detail = std::to_string(instances) + " relation instances over 9 systems" + o.detail;
        return o;
    });

    criterion(5, 120.0, [] {
        Outcome o;
        FactorSystem fs = uniform(5, 2);
        std::set<ShapeTag> seen;
        int checks = 0;
        for (const auto& s : ShapeCatalog(5).shapes()) {
            if (!seen.insert(s.tag).second)
                continue;
            auto r = check_stabilizer(fs, s);
            checks += static_cast<int>(r.size());
            merge(o, suite::stabilizer_check(fs, s));
        }
        o.pass = o.pass && seen.size() == 11;
        o.detail = std::to_string(seen.size()) + " families, " + std::to_string(checks) + " checks" + o.detail;
        return o;
    });

    criterion(6, 120.0, [] {
        Outcome o;
        std::mt19937_64 rng(606);
        for (const auto& fs : {mixed(3), mixed(4), mixed(5), with_s3(5)}) {
            auto c = suite::height_delta_check(fs, rng, 500);
            o.detail += c.id + " " + c.detail + "; ";
            merge(o, c);
        }
        return o;
    });

    criterion(7, 60.0, [] {
        std::mt19937_64 rng(707);
        int checked = 0, bad = 0;
        for (auto fs : {uniform(3, 2), mixed(3), mixed(4), uniform(3, 0), with_s3(4)}) {
            for (int t = 0; t < 80; ++t) {
                Domain d = random_domain(fs, rng, 1 + t % 3);
                Elem bound = 2;
                for (const auto& w : d.labelling())
                    for (const auto& y : w)
                        bound += y.e < 0 ? -y.e : y.e;
                oracle::TreeBall ball{fs, d.labelling(), fs.all_finite() ? 0 : bound};
                for (int i = 0; i < fs.n(); ++i)
                    for (int j = i + 1; j < fs.n(); ++j) {
                        int dist = tree_distance(fs, d, i, j);
                        if (dist > 8)
                            continue;
                        auto o = ball.distance(i, j, dist + 2);
                        if (!o || *o < 0)
                            continue;
                        ++checked;
                        if (*o != dist)
                            ++bad;
                    }
            }
        }
        return Outcome{bad == 0 && checked >= 200,
                       std::to_string(checked) + " pairs against the tree ball, " + std::to_string(bad) + " mismatches"};
    });

    criterion(8, 60.0, [] {
        Outcome o;
        std::mt19937_64 rng(808);
        for (const auto& fs : {uniform(3, 2), mixed(4), mixed(5)}) {
            auto c = suite::height_zero_check(fs, rng, 500);
            merge(o, c);
        }
        o.detail = "base height 0 and 3x500 non-base domains positive";
        if (!o.pass)
            o.detail += " (violations)";
        // fixture: alpha_0 with G_2 conjugated by the generator a of G_1, all factors Z/2
        FactorSystem fs = uniform(3, 2);
        Domain base = base_domain(fs);
        Domain d = apply_move(fs, base, suite::move_at(fs, base, 0, {{{1}, 1}}));
        oracle::TreeBall ball{fs, d.labelling(), 0};
        std::ostringstream os;
        int sum = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int b = ball.distance(i, j, 8).value_or(-1);
                os << "{" << i + 1 << "," << j + 1 << "}=" << b << " ";
                sum += b - 2;
            }
        const long stated = 4;
        long h = height(fs, d);
        o.detail += "; fixture height " + std::to_string(h) + " (oracle distances " + os.str() + "give " +
                    std::to_string(sum) + "), stated " + std::to_string(stated);
        o.pass = o.pass && h == sum && h == stated;
        return o;
    });

    criterion(9, 120.0, [] {
        Outcome o;
        std::mt19937_64 rng(909);
        FactorSystem fs = mixed(5);
        auto checks = suite::peak_checks(fs, rng, 50);
        std::set<std::string> covered;
        for (const auto& c : checks) {
            covered.insert(c.id.substr(0, c.id.find(' ')));
            merge(o, c);
            o.detail += c.id.substr(5, c.id.find(' ') - 5) + ":" + c.detail.substr(0, c.detail.find(' ')) + " ";
        }
        for (const char* k : {"peak-same", "peak-1a", "peak-1b", "peak-2a", "peak-2b", "peak-4"})
            if (!covered.count(k)) {
                o.pass = false;
                o.detail += std::string(" missing ") + k;
            }
        return o;
    });

    criterion(10, 300.0, [] {
        Outcome o;
        std::mt19937_64 rng(1010);
        auto c = suite::loop_check(uniform(5, 2), rng, 50);
        auto d = suite::loop_check(mixed(5), rng, 50);
        o.detail = c.id + " " + c.detail + "; " + d.id + " " + d.detail;
        merge(o, c);
        merge(o, d);
        return o;
    });

    criterion(11, 300.0, [] {
        Outcome o;
        std::mt19937_64 rng(1111);
        auto c = suite::roundtrip_check(mixed(5), rng, 25, 6);
        auto d = suite::roundtrip_check(with_s3(5), rng, 25, 6);
        o.detail = c.id + " " + c.detail + "; " + d.id + " " + d.detail;
        merge(o, c);
        merge(o, d);
        return o;
    });

    criterion(12, 120.0, [] {
        Outcome o;
        std::mt19937_64 rng(1212);
        std::map<std::string, int> instances;
        for (const auto& fs : {mixed(4), mixed(5), with_s3(5)})
            for (const auto& c : suite::whitehead_identities(fs, rng, 70)) {
                instances[c.id] += std::stoi(c.detail);
                merge(o, c);
            }
        int least = 1 << 30;
        for (auto& [id, k] : instances)
            least = std::min(least, k);
        o.pass = o.pass && instances.size() == 10 && least >= 200;
        o.detail = std::to_string(instances.size()) + " identities, at least " + std::to_string(least) +
                   " instances each" + o.detail;
        return o;
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
