#include "fpaut/commands.hpp"
#include "fpaut/factor_group.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>

using namespace fpaut;
using namespace fpaut::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Pure symmetric automorphisms of free products: checks and tools"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    Options o;

    auto* rel = app.add_subcommand("relations", "check the presentation relations");
    rel->add_option("--system", o.system, "factor system JSON")->required();
    rel->add_option("--case", o.case_name, "n5, n4 or n3 (default from the system)");
    rel->add_option("--seed", o.seed, "seed for the n3 semidirect samples");
    rel->add_option("--samples", o.samples, "n3 semidirect sample count");
    rel->add_option("--out", o.out, "report file (default stdout)");

    auto* stab = app.add_subcommand("stabilizers", "check vertex stabilizer generators and relations");
    stab->add_option("--system", o.system, "factor system JSON")->required();
    stab->add_option("--shape", o.shape, "shape name (default: one of each family)");
    stab->add_option("--indices", o.indices, "1-based shape indices");
    stab->add_option("--out", o.out, "report file");

    auto* fd = app.add_subcommand("fundomain", "build the fundamental domain complex");
    fd->add_option("--n", o.n, "number of factors")->required();
    fd->add_flag("--counts", o.counts, "report vertex counts per shape");
    fd->add_flag("--h1", o.h1, "compute the first homology");
    fd->add_option("--json", o.complex_out, "write the cells to this file");
    fd->add_option("--out", o.out, "report file");

    auto* ht = app.add_subcommand("height", "height and distance table of a domain");
    ht->add_option("--system", o.system, "factor system JSON")->required();
    ht->add_option("--domain", o.domain, "domain JSON (default: the base domain)");
    ht->add_option("--out", o.out, "report file");

    auto* ds = app.add_subcommand("dist", "tree distance between two factor vertices");
    ds->add_option("--system", o.system, "factor system JSON")->required();
    ds->add_option("--domain", o.domain, "domain JSON (default: the base domain)");
    ds->add_option("--i", o.i, "first factor, 1-based")->required();
    ds->add_option("--j", o.j, "second factor, 1-based")->required();
    ds->add_option("--out", o.out, "report file");

    auto* fz = app.add_subcommand("factorize", "write an automorphism as a word in the generators");
    fz->add_option("--system", o.system, "factor system JSON")->required();
    fz->add_option("--aut", o.aut, "automorphism JSON")->required();
    fz->add_option("--out", o.out, "generator word file");
    fz->add_option("--report", o.report, "report file (default stdout)");

    auto* rl = app.add_subcommand("reduce-loop", "peak-reduce a closed path of moves");
    rl->add_option("--system", o.system, "factor system JSON")->required();
    rl->add_option("--loop", o.loop, "loop JSON")->required();
    rl->add_option("--trace", o.trace, "trace file");
    rl->add_option("--out", o.out, "report file");

    auto* st = app.add_subcommand("selftest", "run the property suite");
    st->add_option("--seed", o.seed, "random seed");
    st->add_option("--samples", o.samples, "instances per property (default 40)");
    st->add_option("--out", o.out, "report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rel->parsed())
            return cmd_relations(o);
        if (stab->parsed())
            return cmd_stabilizers(o);
        if (fd->parsed())
            return cmd_fundomain(o);
        if (ht->parsed())
            return cmd_height(o);
        if (ds->parsed())
            return cmd_dist(o);
        if (fz->parsed())
            return cmd_factorize(o);
        if (rl->parsed())
            return cmd_reduce_loop(o);
        if (st->parsed())
            return cmd_selftest(o);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
