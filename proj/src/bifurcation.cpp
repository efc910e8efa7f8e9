#include "croppest/bifurcation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "croppest/equilibria.hpp"
#include "croppest/errors.hpp"
#include "croppest/stability.hpp"

namespace croppest {

void SweepSpec::validate() const {
    if (!ModelParams::member(parameter)) throw DomainError("unknown sweep parameter '" + parameter + "'");
    if (values.empty()) throw DomainError("sweep needs at least one value");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("sweep values must be finite");
    if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
        throw DomainError("transient_fraction must lie in [0, 1)");
    (void)TimeGrid::from_step(0.0, tf, dt);
    check_state(initial_state);
}

void tail_extrema(const Trajectory& traj, double transient_fraction, State& lo, State& hi) {
    const std::size_t n = traj.grid.n_steps;
    const auto first = std::min(n, static_cast<std::size_t>(std::ceil(transient_fraction * static_cast<double>(n))));
    lo = hi = traj.nodes[first];
    for (std::size_t i = first + 1; i < traj.nodes.size(); ++i) {
        const State& s = traj.nodes[i];
        lo = {std::min(lo.X, s.X), std::min(lo.S, s.S), std::min(lo.I, s.I), std::min(lo.A, s.A)};
        hi = {std::max(hi.X, s.X), std::max(hi.S, s.S), std::max(hi.I, s.I), std::max(hi.A, s.A)};
    }
}

namespace {

SweepRow compute_row(const ModelParams& base, const SweepSpec& spec, double value, const TimeGrid& grid) {
    SweepRow row;
    row.parameter_value = value;
    const ModelParams p = base.with(spec.parameter, value);
    try {
        const auto traj = rk4_forward([&](double, const State& y) { return rhs_uncontrolled(p, y); },
                                      spec.initial_state, grid);
        tail_extrema(traj, spec.transient_fraction, row.tail_min, row.tail_max);
        row.pest_free_verdict = classify(p, pest_free(p)).verdict;
        for (const auto& eq : coexistence(p)) row.coexistence.push_back({eq.point, classify(p, eq).verdict});
    } catch (const std::exception& e) {
        // Blow-up or a degenerate override: the row is marked, the sweep continues.
        row.failed = true;
        row.failure = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ModelParams& p, const SweepSpec& spec, unsigned threads) {
    spec.validate();
    const TimeGrid grid = TimeGrid::from_step(0.0, spec.tf, spec.dt);
    std::vector<SweepRow> rows(spec.values.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = compute_row(p, spec, spec.values[i], grid);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return rows;
}

}  // namespace croppest
