#pragma once

// CLI command implementations writing CSV to caller-supplied streams.
// Each returns a process exit code; diagnostics go to `err`.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "croppest/config.hpp"
#include "croppest/stability.hpp"

namespace croppest::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigFailure = 2,
    kBlowUp = 3,
    kNotConverged = 4,
};

/// `t,X,S,I,A`, one row per grid node.
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One row per equilibrium family member; nonexistent families get a row
/// with exists = 0 and the reason in `note`.
int cmd_equilibria(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Linearization table for every equilibrium found. When `hopf_out` is set,
/// a Hopf scan over alpha is written there as well.
int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                  std::ostream* hopf_out = nullptr, const HopfScanOptions& hopf = {});

struct BifurcateOptions {
    std::string parameter = "alpha";
    double from = 0.02;
    double to = 0.12;
    std::size_t steps = 50;  ///< number of intervals; steps + 1 rows
    double transient_fraction = 0.7;
    unsigned threads = 0;
};

/// value, failed, 8 tail-extrema columns, pest-free verdict, coexistence
/// verdicts (`;`-separated), note.
int cmd_bifurcate(const RunConfig& cfg, const BifurcateOptions& opts, std::ostream& out, std::ostream& err);

struct OptimizeOptions {
    bool freeze_u1 = false;
    bool freeze_u2 = false;
    std::size_t max_iterations = 5000;
    double tolerance = 1e-6;
    double relaxation_theta = 0.5;
};

/// `t,X,S,I,A,u1,u2,p1,p2,p3,p4` to `out`, `iter,J,control_change` to
/// `history` when given. Output is written even when the sweep does not
/// converge; the exit code is then kNotConverged.
int cmd_optimize(const RunConfig& cfg, const OptimizeOptions& opts, std::ostream& out, std::ostream* history,
                 std::ostream& err);

}  // namespace croppest::cli
