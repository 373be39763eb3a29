#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ptspeed::cli {

/* Fully resolved invocation.  Field names match the command-line flags so
   validation errors can name the offending flag directly. */
struct RunConfig {
    std::string command;            // simulate | classify | sweep | unravel | figure1 | verify
    std::string model_name = "pt";  // builtin family: "pt" or "dephasing"
    std::string model_file;         // overrides model_name when nonempty
    double g = 1.0;
    double gamma = 0.5;
    double t_max = 10.0;
    double dt = 0.0;                // 0 -> default 1e-3 / max(g, gamma)
    std::string init = "up_z";      // named state or explicit "x,y,z" Bloch triple
    std::string format = "csv";     // csv | json (table-emitting commands)
    std::string out_path;           // empty -> stdout
    std::uint64_t seed = 12345;
    int n_traj = 1000;              // unravel
    int cases = 1000;               // verify
    std::vector<double> g_grid;     // sweep
    std::vector<double> gamma_grid; // sweep
};

/* Executes the configured command.  Returns the process exit code:
   0 success, 1 verification failures, 2 configuration/usage error (message
   on err names the offending flag), 3 numerical failure.  Identical configs
   produce byte-identical output. */
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ptspeed::cli
