#pragma once

// Long-horizon parameter sweeps recording the envelope of each run's tail.

#include <string>
#include <vector>

#include "croppest/integrate.hpp"
#include "croppest/model.hpp"
#include "croppest/polynomial.hpp"

namespace croppest {

struct SweepSpec {
    std::string parameter = "alpha";  ///< one of ModelParams::field_names
    std::vector<double> values;
    double tf = 2000.0;
    double dt = 0.05;
    double transient_fraction = 0.7;  ///< leading share of the horizon discarded
    State initial_state{0.2, 0.07, 0.05, 0.5};

    /// Throws DomainError on an unknown parameter, empty/non-finite values or
    /// transient_fraction outside [0, 1); ContractError on a bad grid.
    void validate() const;
};

struct CoexistenceVerdict {
    State point;
    Verdict verdict = Verdict::Unstable;
};

struct SweepRow {
    double parameter_value = 0.0;
    bool failed = false;
    std::string failure;  ///< blow-up message when failed
    State tail_min;
    State tail_max;
    Verdict pest_free_verdict = Verdict::Unstable;
    std::vector<CoexistenceVerdict> coexistence;
};

/// Tail extrema of a single trajectory: nodes with index >= ceil(fraction * n).
void tail_extrema(const Trajectory& traj, double transient_fraction, State& lo, State& hi);

/// One row per value, in input order. Rows are computed on up to `threads`
/// worker threads (0 = hardware concurrency); the result does not depend on
/// the thread count.
std::vector<SweepRow> run_sweep(const ModelParams& p, const SweepSpec& spec, unsigned threads = 0);

}  // namespace croppest
