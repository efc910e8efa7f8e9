#include "croppest/optimal_control.hpp"

#include <algorithm>
#include <cmath>

#include "croppest/errors.hpp"

namespace croppest {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double control_change(const std::vector<ControlValue>& a, const std::vector<ControlValue>& b) {
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        out = std::max({out, std::abs(a[i].u1 - b[i].u1), std::abs(a[i].u2 - b[i].u2)});
    return out;
}

double control_norm(const std::vector<ControlValue>& u) {
    double out = 0.0;
    for (const auto& v : u) out = std::max({out, std::abs(v.u1), std::abs(v.u2)});
    return out;
}

// Natural residual of the minimum condition for a control in [0, 1]: the
// distance to the projected gradient step, scaled back to gradient units.
// Equals |dH/du| in the interior and vanishes at a bound the gradient pushes into.
double kkt_violation(double u, double gradient, double weight) {
    return weight * std::abs(u - clamp01(u - gradient / weight));
}

std::vector<Costate> backward_pass(const ModelParams& p, const ObjectiveWeights& w, const Trajectory& traj,
                                   const std::vector<ControlValue>& u) {
    return rk4_backward(
        [&](double, const Costate& q, const State& y, const ControlValue& v) { return costate_rhs(p, y, q, v, w); },
        Costate{}, traj, u, traj.grid);
}

}  // namespace

void SweepOptions::validate() const {
    if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
    if (!(relaxation_theta > 0.0 && relaxation_theta <= 1.0)) throw DomainError("relaxation_theta must lie in (0, 1]");
    grid.validate();
    if (!initial_controls.empty()) {
        if (initial_controls.size() != grid.size()) throw ContractError("initial control count does not match grid");
        for (const auto& u : initial_controls) u.validate();
    }
}

ControlValue control_update(const State& s, const Costate& q, const ModelParams& p, const ObjectiveWeights& w) {
    return {clamp01((q.p2 - q.p3) * p.lambda * s.A * s.S / (w.B1 * (p.a + s.A))), clamp01(-q.p4 * p.gamma / w.B2)};
}

ControlGradient control_gradient(const State& s, const Costate& q, const ControlValue& u, const ModelParams& p,
                                 const ObjectiveWeights& w) {
    return {w.B1 * u.u1 - (q.p2 - q.p3) * p.lambda * s.A * s.S / (p.a + s.A), w.B2 * u.u2 + q.p4 * p.gamma};
}

double evaluate_objective(const ModelParams& p, const ObjectiveWeights& w, const State& y0,
                          const std::vector<ControlValue>& controls, const TimeGrid& grid) {
    const auto traj = rk4_forward_controlled(p, y0, controls, grid);
    return integrate_cost(traj, controls, w);
}

SweepSolution solve(const ModelParams& p, const ObjectiveWeights& w, const State& y0, const SweepOptions& opts) {
    opts.validate();
    w.validate();
    check_state(y0);

    SweepSolution sol;
    sol.u1_free = !opts.freeze_u1;
    sol.u2_free = !opts.freeze_u2;
    const TimeGrid& grid = opts.grid;

    std::vector<ControlValue> u = opts.initial_controls.empty()
                                      ? std::vector<ControlValue>(grid.size(), ControlValue{0.5, 0.5})
                                      : opts.initial_controls;
    auto pin = [&](ControlValue& v) {
        if (opts.freeze_u1) v.u1 = 0.0;
        if (opts.freeze_u2) v.u2 = 0.0;
    };
    for (auto& v : u) pin(v);

    const double theta = opts.relaxation_theta;
    std::vector<ControlValue> next(grid.size());
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        const Trajectory traj = rk4_forward_controlled(p, y0, u, grid);
        sol.objective_history.push_back(integrate_cost(traj, u, w));
        const auto costates = backward_pass(p, w, traj, u);

        for (std::size_t i = 0; i < grid.size(); ++i) {
            ControlValue cand = control_update(traj.nodes[i], costates[i], p, w);
            pin(cand);
            next[i] = {clamp01(theta * cand.u1 + (1.0 - theta) * u[i].u1),
                       clamp01(theta * cand.u2 + (1.0 - theta) * u[i].u2)};
        }
        const double change = control_change(next, u);
        u.swap(next);
        sol.control_change_history.push_back(change);
        sol.iterations_used = it + 1;
        if (change <= opts.tolerance * std::max(1.0, control_norm(u))) {
            sol.converged = true;
            break;
        }
    }

    // States and costates matching the returned controls exactly.
    sol.states = rk4_forward_controlled(p, y0, u, grid);
    sol.costates = backward_pass(p, w, sol.states, u);
    sol.controls = u;
    sol.states.costates = sol.costates;
    sol.objective = integrate_cost(sol.states, u, w);
    sol.stationarity_residual = stationarity_residual(sol, p, w);
    return sol;
}

double stationarity_residual(const SweepSolution& sol, const ModelParams& p, const ObjectiveWeights& w) {
    if (sol.controls.size() != sol.states.nodes.size() || sol.costates.size() != sol.states.nodes.size())
        throw ContractError("solution sequences differ in length");
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.controls.size(); ++i) {
        const auto g = control_gradient(sol.states.nodes[i], sol.costates[i], sol.controls[i], p, w);
        if (sol.u1_free) worst = std::max(worst, kkt_violation(sol.controls[i].u1, g.du1, w.B1));
        if (sol.u2_free) worst = std::max(worst, kkt_violation(sol.controls[i].u2, g.du2, w.B2));
    }
    return worst;
}

}  // namespace croppest
