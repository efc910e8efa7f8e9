#include <doctest.h>

#include <cmath>
#include <random>

#include "croppest/errors.hpp"
#include "croppest/model.hpp"
#include "test_support.hpp"

using namespace croppest;
using croppest::testing::close_rel;

namespace {

const State kRef{0.2, 0.07, 0.05, 0.5};

State fd_column(const ModelParams& p, const State& s, int j, double h) {
    auto plus = s.as_array();
    auto minus = s.as_array();
    plus[j] += h;
    minus[j] -= h;
    return (1.0 / (2.0 * h)) * (rhs_uncontrolled(p, State::from_array(plus)) -
                                rhs_uncontrolled(p, State::from_array(minus)));
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("axial and pest-free points are fixed points") {
    const ModelParams p;
    CHECK(max_norm(rhs_uncontrolled(p, {0, 0, 0, p.gamma / p.eta})) == 0.0);
    CHECK(max_norm(rhs_uncontrolled(p, {p.K, 0, 0, p.gamma / p.eta})) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rhs at the reference state") {
    // Values from an exact rational evaluation of the four equations.
    const auto f = rhs_uncontrolled(ModelParams{}, kRef);
    CHECK(f.X == doctest::Approx(0.015645833333333335).epsilon(1e-14));
    CHECK(f.S == doctest::Approx(-0.0013416666666666666).epsilon(1e-14));
    CHECK(f.I == doctest::Approx(-0.0045875).epsilon(1e-14));
    CHECK(f.A == doctest::Approx(-0.0027).epsilon(1e-14));
}

TEST_CASE("rhs rejects non-finite input") {
    CHECK_THROWS_AS(rhs_uncontrolled(ModelParams{}, {NAN, 0, 0, 0}), DomainError);
    CHECK_THROWS_AS(rhs_controlled(ModelParams{}, kRef, {0.5, INFINITY}), DomainError);
}

TEST_CASE("controls at unity reproduce the uncontrolled system") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto p = croppest::testing::random_params(rng);
        const auto s = croppest::testing::random_state(rng);
        CHECK(rhs_controlled(p, s, {1, 1}) == rhs_uncontrolled(p, s));
    }
}

TEST_CASE("u1 = 0 removes the infection term, which vanishes at S = 0") {
    const ModelParams p;
    const State s0{0.3, 0.0, 0.1, 0.4};
    CHECK(rhs_controlled(p, s0, {0, 1}) == rhs_uncontrolled(p, s0));

    const double infection = p.lambda * kRef.A * kRef.S / (p.a + kRef.A);
    const auto f = rhs_uncontrolled(p, kRef);
    const auto g = rhs_controlled(p, kRef, {0, 1});
    CHECK(g.S == doctest::Approx(f.S + infection).epsilon(1e-14));
    CHECK(g.I == doctest::Approx(f.I - infection).epsilon(1e-14));
    CHECK(g.A == f.A);
}

TEST_CASE("half controls shift S, I and A by the scaled terms") {
    const ModelParams p;
    const auto f = rhs_uncontrolled(p, kRef);
    const auto g = rhs_controlled(p, kRef, {0.5, 0.5});
    CHECK(g.X == f.X);
    CHECK(g.S - f.S == doctest::Approx(0.0004375).epsilon(1e-10));
    CHECK(g.I - f.I == doctest::Approx(-0.0004375).epsilon(1e-10));
    CHECK(g.A - f.A == doctest::Approx(-0.0015).epsilon(1e-10));
}

TEST_CASE("controls outside [0, 1] are rejected") {
    CHECK_THROWS_AS(ControlValue({1.1, 0}).validate(), DomainError);
    CHECK_THROWS_AS(ControlValue({0, -0.1}).validate(), DomainError);
    CHECK_NOTHROW(ControlValue({0, 1}).validate());
}

TEST_CASE("jacobian structure") {
    const ModelParams p;
    const auto Jr = jacobian(p, kRef);
    CHECK(Jr[0][3] == 0.0);
    CHECK(Jr[3][0] == 0.0);

    const auto Jk = jacobian(p, {p.K, 0, 0, 0.2});
    CHECK(Jk[0][0] == doctest::Approx(-p.r));

    // At the axial point the awareness-linked block gives -lambda gamma/(a eta + gamma) - d.
    const auto J0 = jacobian(p, {0, 0, 0, p.gamma / p.eta});
    CHECK(J0[0][0] == doctest::Approx(p.r));
    CHECK(J0[1][1] == doctest::Approx(-0.017142857142857144).epsilon(1e-12));
    CHECK(J0[2][2] == doctest::Approx(-(p.d + p.delta)));
    CHECK(J0[3][3] == doctest::Approx(-p.eta));
}

TEST_CASE("jacobian matches central differences at the reference state") {
    const ModelParams p;
    const auto J = jacobian(p, kRef);
    for (int j = 0; j < 4; ++j) {
        const auto col = fd_column(p, kRef, j, 1e-6).as_array();
        for (int i = 0; i < 4; ++i) CHECK(std::abs(J[i][j] - col[i]) < 1e-6);
    }
}

TEST_CASE("jacobian matches central differences on random inputs") {
    std::mt19937_64 rng(7);
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
        const auto p = croppest::testing::random_params(rng);
        const auto s = croppest::testing::random_state(rng);
        const auto J = jacobian(p, s);
        double scale = 0.0;
        for (const auto& row : J)
            for (double v : row) scale = std::max(scale, std::abs(v));
        for (int j = 0; j < 4; ++j) {
            const auto col = fd_column(p, s, j, 1e-6 * std::max(1.0, std::abs(s.as_array()[j]))).as_array();
            for (int i = 0; i < 4; ++i)
                if (!close_rel(J[i][j], col[i], 1e-5, 1e-3 * scale)) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("costate rhs: zero inputs and cost-gradient signs") {
    const ModelParams p;
    const ObjectiveWeights w;
    CHECK(max_norm(costate_rhs(p, {0, 0, 0.3, 0}, {}, {0.5, 0.5}, w)) == 0.0);

    const auto q = costate_rhs(p, kRef, {}, {0.5, 0.5}, w);
    CHECK(q.p2 == doctest::Approx(-2 * w.A1 * kRef.S));
    CHECK(q.p2 < 0);
    CHECK(q.p4 == doctest::Approx(2 * w.A2 * kRef.A));
}

TEST_CASE("costate rhs is the negated Hamiltonian gradient") {
    auto check_at = [](const ModelParams& p, const State& s, const Costate& q, const ControlValue& u, double tol) {
        const ObjectiveWeights w;
        const auto dq = costate_rhs(p, s, q, u, w).as_array();
        for (int j = 0; j < 4; ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(s.as_array()[j]));
            auto plus = s.as_array();
            auto minus = s.as_array();
            plus[j] += h;
            minus[j] -= h;
            const double grad = (hamiltonian(p, State::from_array(plus), q, u, w) -
                                 hamiltonian(p, State::from_array(minus), q, u, w)) / (2 * h);
            CHECK(close_rel(dq[j], -grad, tol, 1.0));
        }
    };
    check_at(ModelParams{}, kRef, {0.1, -0.2, 0.3, -0.4}, {0.5, 0.5}, 1e-6);

    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k)
        check_at(croppest::testing::random_params(rng), croppest::testing::random_state(rng),
                 croppest::testing::random_costate(rng), croppest::testing::random_control(rng), 1e-5);
}

TEST_CASE("running cost") {
    const ObjectiveWeights w;
    CHECK(running_cost({}, {}, w) == 0.0);
    CHECK(running_cost({0, 0.07, 0, 0.5}, {}, w) == doctest::Approx(-247.5265).epsilon(1e-12));
    CHECK(running_cost({}, {1, 1}, w) == doctest::Approx(1.3));
    // even and increasing in each control
    CHECK(running_cost(kRef, {0.2, 0.7}, w) < running_cost(kRef, {0.3, 0.7}, w));
    CHECK(running_cost(kRef, {0.2, 0.3}, w) < running_cost(kRef, {0.2, 0.7}, w));
}

TEST_CASE("attracting region") {
    const ModelParams p;
    const auto b = attracting_region(p, 0.2);
    CHECK(b.M == 1.0);
    CHECK(b.W_max == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(b.A_max == doctest::Approx(3.7).epsilon(1e-14));
    CHECK(attracting_region(p, 2.0).M == 2.0);
    CHECK(b.contains(kRef, 0.0));
    CHECK_FALSE(b.contains({1.1, 0, 0, 0}, 1e-6));
    CHECK_THROWS_AS(attracting_region(p.with("d", 0.0), 0.2), DomainError);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(ModelParams{}.validate());
    CHECK_THROWS_AS(ModelParams{}.with("phi", 1.0).validate(), DomainError);
    CHECK_THROWS_AS(ModelParams{}.with("m2", 0.9).validate(), DomainError);
    CHECK_THROWS_AS(ModelParams{}.with("K", 0.0).validate(), DomainError);
    CHECK_THROWS_AS(ModelParams{}.with("r", -0.1).validate(), DomainError);
    CHECK_THROWS_AS((void)ModelParams{}.with("nope", 1.0), DomainError);
    CHECK_THROWS_AS(ObjectiveWeights({1, 1, 0, 1}).validate(), DomainError);
}

TEST_CASE("state positivity tolerance") {
    CHECK_NOTHROW(check_state({-1e-10, 0, 0, 0}));
    CHECK_THROWS_AS(check_state({-1e-8, 0, 0, 0}), DomainError);
}

}
