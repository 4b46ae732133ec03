#ifndef UQSL3_CLI_HPP
#define UQSL3_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "uqsl3/transfer.hpp"

namespace uqsl3 {

struct RunConfig {
    Params params;
    int n = 1;
    std::string eta_mode = "homogeneous";  // or "random"
    uint64_t seed = 1;
    std::vector<cplx> zeta_grid;  // log-points w
    std::vector<std::string> suites{"all"};
    std::string output_path;

    void validate() const;
    std::vector<SpectralPoint> make_eta() const;
};

// Minimal TOML subset: [section], key = value with numbers, strings,
// booleans and (nested) numeric arrays. Complex values are [re, im] pairs.
RunConfig load_config(const std::string& path);

std::vector<RelationReport> run_suite(const std::string& suite, const RunConfig& config);
std::vector<RelationReport> run_verify(const RunConfig& config);

void emit_report(const std::vector<RelationReport>& reports, const std::string& path);
void print_summary(const std::vector<RelationReport>& reports, std::ostream& os);
int exit_status(const std::vector<RelationReport>& reports);

// Cutoff sweep table for `probe-convergence`.
void probe_convergence(const RunConfig& config, std::ostream& os);

int worker_threads();  // UQSL3_THREADS cap

}  // namespace uqsl3

#endif
