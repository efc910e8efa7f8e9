#include <doctest.h>

#include <cmath>

#include "croppest/bifurcation.hpp"
#include "croppest/equilibria.hpp"
#include "croppest/errors.hpp"

using namespace croppest;

namespace {

bool same_row(const SweepRow& a, const SweepRow& b) {
    if (a.parameter_value != b.parameter_value || a.failed != b.failed || a.tail_min != b.tail_min ||
        a.tail_max != b.tail_max || a.pest_free_verdict != b.pest_free_verdict ||
        a.coexistence.size() != b.coexistence.size())
        return false;
    for (std::size_t i = 0; i < a.coexistence.size(); ++i)
        if (a.coexistence[i].point != b.coexistence[i].point || a.coexistence[i].verdict != b.coexistence[i].verdict)
            return false;
    return true;
}

}  // namespace

TEST_SUITE("bifurcation") {

TEST_CASE("spec validation") {
    SweepSpec s;
    CHECK_THROWS_AS(s.validate(), DomainError);  // no values
    s.values = {0.05};
    CHECK_NOTHROW(s.validate());
    s.parameter = "beta";
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.parameter = "alpha";
    s.transient_fraction = 1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("single value matches a direct simulation") {
    const ModelParams p;
    SweepSpec s;
    s.values = {p.alpha};
    const auto rows = run_sweep(p, s, 1);
    REQUIRE(rows.size() == 1);

    const auto traj = rk4_forward([&](double, const State& y) { return rhs_uncontrolled(p, y); }, s.initial_state,
                                  TimeGrid::from_step(0.0, s.tf, s.dt));
    State lo, hi;
    tail_extrema(traj, s.transient_fraction, lo, hi);
    CHECK(rows[0].tail_min == lo);
    CHECK(rows[0].tail_max == hi);
    CHECK(rows[0].pest_free_verdict == Verdict::Stable);
    CHECK(rows[0].coexistence.empty());
}

TEST_CASE("tail extrema skip the transient") {
    Trajectory t;
    t.grid = {0.0, 1.0, 4};
    for (double x : {9.0, 8.0, 1.0, 3.0, 2.0}) t.nodes.push_back({x, 0, 0, 0});
    State lo, hi;
    tail_extrema(t, 0.5, lo, hi);  // nodes 2..4
    CHECK(lo.X == 1.0);
    CHECK(hi.X == 3.0);
}

TEST_CASE("deterministic and independent of the thread count") {
    const ModelParams p;
    SweepSpec s;
    s.values = {0.03, 0.05, 0.07, 0.09, 0.11};
    s.tf = 500;
    const auto a = run_sweep(p, s, 1);
    const auto b = run_sweep(p, s, 1);
    const auto c = run_sweep(p, s, 3);
    REQUIRE(a.size() == s.values.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].parameter_value == s.values[i]);
        CHECK(same_row(a[i], b[i]));
        CHECK(same_row(a[i], c[i]));
        CHECK(a[i].tail_min.X <= a[i].tail_max.X);
    }
}

TEST_CASE("pest-free regime settles below R0 = 1") {
    // The slowest decay rate at E1 is 0.00714 per day, so the default
    // 2000-day horizon leaves a visible S trend; 4000 days resolves it.
    const ModelParams p;
    SweepSpec s;
    s.values = {0.025};
    s.tf = 4000;
    const auto row = run_sweep(p, s, 1).front();
    CHECK(row.tail_max.X - row.tail_min.X < 1e-6);
    CHECK(row.tail_max.S - row.tail_min.S < 1e-6);
    CHECK(row.tail_max.I - row.tail_min.I < 1e-6);
    CHECK(row.tail_max.S < 1e-6);
}

TEST_CASE("tail extrema bracket a stable coexistence point") {
    const ModelParams p;
    SweepSpec s;
    s.values = {0.06};
    s.tf = 4000;
    const auto row = run_sweep(p, s, 1).front();
    REQUIRE(row.coexistence.size() == 1);
    CHECK(row.coexistence[0].verdict == Verdict::Stable);
    const auto e = row.coexistence[0].point.as_array();
    const auto lo = row.tail_min.as_array();
    const auto hi = row.tail_max.as_array();
    for (int k = 0; k < 4; ++k) {
        CHECK(lo[k] <= e[k] + 1e-4);
        CHECK(hi[k] >= e[k] - 1e-4);
    }
}

TEST_CASE("a failing value marks its row and the sweep continues") {
    const ModelParams p;
    SweepSpec s;
    s.parameter = "K";
    s.values = {1.0, 0.0, 2.0};
    s.tf = 100;
    const auto rows = run_sweep(p, s, 2);
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].failed);
    CHECK(rows[1].failed);
    CHECK_FALSE(rows[1].failure.empty());
    CHECK_FALSE(rows[2].failed);
}

}
