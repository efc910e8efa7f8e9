#include "croppest/integrate.hpp"

#include <cmath>
#include <string>

namespace croppest {

void TimeGrid::validate() const {
    if (!std::isfinite(t0) || !std::isfinite(tf)) throw ContractError("time grid ends must be finite");
    if (!(tf > t0)) throw ContractError("time grid requires tf > t0");
    if (n_steps < 1) throw ContractError("time grid requires at least one step");
}

TimeGrid TimeGrid::from_step(double t0, double tf, double dt) {
    if (!std::isfinite(dt) || dt <= 0.0) throw ContractError("time step must be positive");
    if (!(tf > t0)) throw ContractError("time grid requires tf > t0");
    const double steps = (tf - t0) / dt;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
        throw ContractError("time span " + std::to_string(tf - t0) +
                            " is not an integer multiple of dt = " + std::to_string(dt));
    }
    return {t0, tf, static_cast<std::size_t>(rounded)};
}

void Trajectory::validate() const {
    grid.validate();
    if (nodes.size() != grid.size()) throw ContractError("trajectory node count does not match grid");
    if (!controls.empty() && controls.size() != grid.size())
        throw ContractError("trajectory control count does not match grid");
    if (!costates.empty() && costates.size() != grid.size())
        throw ContractError("trajectory costate count does not match grid");
    for (const auto& s : nodes)
        if (!is_finite(s)) throw ContractError("trajectory has a non-finite state");
    for (const auto& u : controls)
        if (!is_finite(u)) throw ContractError("trajectory has a non-finite control");
    for (const auto& p : costates)
        if (!is_finite(p)) throw ContractError("trajectory has a non-finite costate");
}

Trajectory rk4_forward(const StateRhs& f, const State& y0, const TimeGrid& grid) {
    Trajectory traj;
    traj.grid = grid;
    traj.nodes = rk4_nodes(f, y0, grid);
    return traj;
}

Trajectory rk4_forward_controlled(const ModelParams& p, const State& y0,
                                  std::span<const ControlValue> controls, const TimeGrid& grid) {
    if (controls.size() != grid.size()) throw ContractError("control count does not match grid");
    Trajectory traj;
    traj.grid = grid;
    traj.nodes = rk4_nodes(
        [&](double t, const State& y) { return rhs_controlled(p, y, interpolate(controls, grid, t)); },
        y0, grid);
    traj.controls.assign(controls.begin(), controls.end());
    return traj;
}

std::vector<Costate> rk4_backward(const CostateRhs& g, const Costate& p_terminal,
                                  const Trajectory& state_traj,
                                  std::span<const ControlValue> u_traj, const TimeGrid& grid) {
    if (!(state_traj.grid == grid)) throw ContractError("state trajectory is on a different grid");
    if (state_traj.nodes.size() != grid.size()) throw ContractError("state trajectory length mismatch");
    if (u_traj.size() != grid.size()) throw ContractError("control sequence length mismatch");
    if (!is_finite(p_terminal)) throw ContractError("terminal costate is not finite");

    const std::span<const State> states(state_traj.nodes);
    return rk4_backward_nodes(
        [&](double t, const Costate& q) {
            return g(t, q, interpolate(states, grid, t), interpolate(u_traj, grid, t));
        },
        p_terminal, grid);
}

double trapezoid(std::span<const double> values, double h) {
    if (values.size() < 2) return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return h * sum;
}

double integrate_cost(const Trajectory& traj, std::span<const ControlValue> u_traj,
                      const ObjectiveWeights& w) {
    if (traj.nodes.size() != traj.grid.size()) throw ContractError("trajectory length mismatch");
    if (u_traj.size() != traj.nodes.size()) throw ContractError("control sequence length mismatch");
    std::vector<double> integrand(traj.nodes.size());
    for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = running_cost(traj.nodes[i], u_traj[i], w);
    return trapezoid(integrand, traj.grid.step());
}

}  // namespace croppest
