#ifndef FPAUT_COMMANDS_HPP
#define FPAUT_COMMANDS_HPP

#include <string>
#include <vector>

// Subcommands of the fpaut tool. Each returns the process exit status
// (0 all checks pass, 1 a check failed) and throws input_error or a JSON
// exception for bad input.

namespace fpaut::cli {

inline constexpr const char* version = "0.3.0";

struct Options {
    std::string system, domain, aut, loop, out, trace, report, case_name, shape, complex_out;
    std::vector<int> indices;
    int n = 0, i = 0, j = 0;
    long seed = 7;
    bool counts = false, h1 = false;
    int samples = 0;
};

int cmd_relations(const Options& o);
int cmd_stabilizers(const Options& o);
int cmd_fundomain(const Options& o);
int cmd_height(const Options& o);
int cmd_dist(const Options& o);
int cmd_factorize(const Options& o);
int cmd_reduce_loop(const Options& o);
int cmd_selftest(const Options& o);

} // namespace fpaut::cli

#endif
