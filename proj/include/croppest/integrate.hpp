#pragma once

// Fixed-step classical Runge-Kutta integration. States run forward in time,
// costates run backward from a terminal value; the objective is integrated by
// the composite trapezoidal rule on the same grid.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "croppest/errors.hpp"
#include "croppest/model.hpp"

namespace croppest {

/// Uniform grid t_i = t0 + i * (tf - t0) / n_steps, i = 0..n_steps.
struct TimeGrid {
    double t0 = 0.0;
    double tf = 1.0;
    std::size_t n_steps = 1;

    /// Throws ContractError unless tf > t0, n_steps >= 1 and both ends are finite.
    void validate() const;

    [[nodiscard]] double step() const { return (tf - t0) / static_cast<double>(n_steps); }
    [[nodiscard]] double time(std::size_t i) const {
        return i == n_steps ? tf : t0 + static_cast<double>(i) * step();
    }
    [[nodiscard]] std::size_t size() const { return n_steps + 1; }

    /// Grid over [t0, tf] whose step is dt. (tf - t0) / dt must be an integer
    /// to within 1e-9 relative, otherwise ContractError.
    static TimeGrid from_step(double t0, double tf, double dt);

    bool operator==(const TimeGrid&) const = default;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<State> nodes;
    std::vector<ControlValue> controls;  ///< empty or grid.size() entries
    std::vector<Costate> costates;       ///< empty or grid.size() entries

    /// Throws ContractError when a present sequence has the wrong length or a
    /// non-finite entry.
    void validate() const;
};

using StateRhs = std::function<State(double t, const State& y)>;
using CostateRhs =
    std::function<Costate(double t, const Costate& p, const State& y, const ControlValue& u)>;

namespace detail {

template <class T>
void check_step(const T& y, double t) {
    if (!is_finite(y)) {
        std::ostringstream msg;
        msg << "integration blow-up: non-finite value at t = " << t;
        throw BlowUpError(msg.str(), t);
    }
}

}  // namespace detail

/// Classical RK4 over the grid; node 0 is y0. F is callable as T(double, const T&).
/// Throws BlowUpError naming the time of the first non-finite value.
template <class T, class F>
std::vector<T> rk4_nodes(F&& f, const T& y0, const TimeGrid& grid) {
    grid.validate();
    const double h = grid.step();
    std::vector<T> out;
    out.reserve(grid.size());
    out.push_back(y0);
    T y = y0;
    for (std::size_t i = 0; i < grid.n_steps; ++i) {
        const double t = grid.time(i);
        const T k1 = f(t, y);
        detail::check_step(k1, t);
        const T k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
        const T k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
        const T k4 = f(t + h, y + h * k3);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        detail::check_step(y, grid.time(i + 1));
        out.push_back(y);
    }
    return out;
}

/// RK4 from tf down to t0 with terminal value y_terminal; out[i] is the value
/// at grid.time(i), so out.back() == y_terminal exactly.
template <class T, class G>
std::vector<T> rk4_backward_nodes(G&& g, const T& y_terminal, const TimeGrid& grid) {
    grid.validate();
    const double h = grid.step();
    std::vector<T> out(grid.size(), y_terminal);
    T y = y_terminal;
    for (std::size_t i = grid.n_steps; i > 0; --i) {
        const double t = grid.time(i);
        const T k1 = g(t, y);
        detail::check_step(k1, t);
        const T k2 = g(t - 0.5 * h, y - (0.5 * h) * k1);
        const T k3 = g(t - 0.5 * h, y - (0.5 * h) * k2);
        const T k4 = g(t - h, y - h * k3);
        y = y - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        detail::check_step(y, grid.time(i - 1));
        out[i - 1] = y;
    }
    return out;
}

/// Forward RK4 of the state equation.
Trajectory rk4_forward(const StateRhs& f, const State& y0, const TimeGrid& grid);

/// Forward RK4 of the controlled system; controls between nodes are linearly
/// interpolated. `controls` must have grid.size() entries.
Trajectory rk4_forward_controlled(const ModelParams& p, const State& y0,
                                  std::span<const ControlValue> controls, const TimeGrid& grid);

/// Backward RK4 of the costate equation from p_terminal at tf. State and
/// control values at half steps are linear interpolants of the stored nodes.
/// Throws ContractError when state_traj.grid != grid or lengths differ.
std::vector<Costate> rk4_backward(const CostateRhs& g, const Costate& p_terminal,
                                  const Trajectory& state_traj,
                                  std::span<const ControlValue> u_traj, const TimeGrid& grid);

/// Linear interpolation of node values at time t (clamped to the grid).
template <class T>
T interpolate(std::span<const T> nodes, const TimeGrid& grid, double t) {
    const double pos = (t - grid.t0) / grid.step();
    if (pos <= 0.0) return nodes.front();
    if (pos >= static_cast<double>(grid.n_steps)) return nodes.back();
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double w = pos - static_cast<double>(i);
    if (w == 0.0) return nodes[i];
    return (1.0 - w) * nodes[i] + w * nodes[i + 1];
}

/// Composite trapezoidal rule for samples on a uniform grid with step h.
double trapezoid(std::span<const double> values, double h);

/// J = integral of running_cost over the grid by the trapezoidal rule.
/// Throws ContractError when controls and nodes differ in length.
double integrate_cost(const Trajectory& traj, std::span<const ControlValue> u_traj,
                      const ObjectiveWeights& w);

}  // namespace croppest
