#pragma once

// Forward-backward sweep for the two-control problem
//
//   minimize  J(u) = integral of A1 S^2 - A2 A^2 + B1 u1^2 / 2 + B2 u2^2 / 2
//   subject to the controlled dynamics, 0 <= u1, u2 <= 1.
//
// Each iteration integrates the state forward under the current controls,
// integrates the adjoint backward from zero terminal values, evaluates the
// projected minimizer of the Hamiltonian at every node and mixes it into the
// current controls with weight theta.

#include <cstddef>
#include <vector>

#include "croppest/integrate.hpp"
#include "croppest/model.hpp"

namespace croppest {

struct SweepOptions {
    std::size_t max_iterations = 5000;
    double tolerance = 1e-6;        ///< relative max-norm control change
    double relaxation_theta = 0.5;  ///< weight of the new candidate in each update
    TimeGrid grid{0.0, 100.0, 10000};
    std::vector<ControlValue> initial_controls;  ///< empty: u = (0.5, 0.5) at every node
    bool freeze_u1 = false;  ///< pin u1 to 0
    bool freeze_u2 = false;  ///< pin u2 to 0

    /// Throws DomainError/ContractError when a field violates its range.
    void validate() const;
};

struct SweepSolution {
    Trajectory states;                  ///< carries the controls and costates as well
    std::vector<Costate> costates;
    std::vector<ControlValue> controls;
    std::vector<double> objective_history;       ///< J at the start of each iteration
    std::vector<double> control_change_history;  ///< max-norm update per iteration
    std::size_t iterations_used = 0;
    bool converged = false;
    double objective = 0.0;              ///< J of the returned controls
    double stationarity_residual = 0.0;
    bool u1_free = true;
    bool u2_free = true;
};

/// Projected Hamiltonian minimizer:
/// u1 = clamp((p2 - p3) lambda A S / (B1 (a + A)), 0, 1), u2 = clamp(-p4 gamma / B2, 0, 1).
ControlValue control_update(const State& s, const Costate& q, const ModelParams& p, const ObjectiveWeights& w);

/// dH/du1 and dH/du2 at one node.
struct ControlGradient {
    double du1 = 0.0;
    double du2 = 0.0;
};
ControlGradient control_gradient(const State& s, const Costate& q, const ControlValue& u, const ModelParams& p,
                                 const ObjectiveWeights& w);

/// J of a control sequence: forward integration plus trapezoidal quadrature.
double evaluate_objective(const ModelParams& p, const ObjectiveWeights& w, const State& y0,
                          const std::vector<ControlValue>& controls, const TimeGrid& grid);

/// Runs the sweep. Returns with converged = false when max_iterations is
/// exhausted; throws BlowUpError when the state integration diverges.
SweepSolution solve(const ModelParams& p, const ObjectiveWeights& w, const State& y0, const SweepOptions& opts);

/// Largest violation of the pointwise minimum condition over the grid,
/// B |u - clamp(u - (dH/du) / B, 0, 1)| per control: |dH/du| in the interior,
/// zero at a bound that dH/du pushes against. Frozen controls are skipped.
double stationarity_residual(const SweepSolution& sol, const ModelParams& p, const ObjectiveWeights& w);

}  // namespace croppest
