#include "croppest/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "croppest/errors.hpp"

namespace croppest {

namespace {

constexpr std::array<double ModelParams::*, 14> kMembers{
    &ModelParams::r,      &ModelParams::K,     &ModelParams::alpha, &ModelParams::phi,
    &ModelParams::c,      &ModelParams::a,     &ModelParams::lambda, &ModelParams::d,
    &ModelParams::delta,  &ModelParams::m1,    &ModelParams::m2,    &ModelParams::gamma,
    &ModelParams::sigma,  &ModelParams::eta};

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

void require_finite(const State& s) {
    require(is_finite(s), "state has a non-finite component");
}

}  // namespace

void ModelParams::validate() const {
    for (std::size_t i = 0; i < kMembers.size(); ++i) {
        const double v = this->*kMembers[i];
        require(std::isfinite(v), "parameter " + std::string(field_names[i]) + " is not finite");
        require(v >= 0.0, "parameter " + std::string(field_names[i]) + " is negative");
    }
    require(K > 0.0, "parameter K must be positive");
    require(c > 0.0, "parameter c must be positive");
    require(a > 0.0, "parameter a must be positive");
    require(eta > 0.0, "parameter eta must be positive");
    require(phi < 1.0, "parameter phi must be below 1");
    require(m1 > m2, "parameter m1 must exceed m2");
}

std::optional<double ModelParams::*> ModelParams::member(std::string_view name) {
    for (std::size_t i = 0; i < field_names.size(); ++i) {
        if (field_names[i] == name) return kMembers[i];
    }
    return std::nullopt;
}

ModelParams ModelParams::with(std::string_view name, double value) const {
    const auto m = member(name);
    if (!m) throw DomainError("unknown model parameter '" + std::string(name) + "'");
    ModelParams copy = *this;
    copy.*(*m) = value;
    return copy;
}

void ObjectiveWeights::validate() const {
    require(std::isfinite(A1) && std::isfinite(A2) && std::isfinite(B1) && std::isfinite(B2),
            "objective weights must be finite");
    require(A1 >= 0.0 && A2 >= 0.0, "state weights A1, A2 must be non-negative");
    require(B1 > 0.0 && B2 > 0.0, "control weights B1, B2 must be positive");
}

void ControlValue::validate() const {
    require(u1 >= 0.0 && u1 <= 1.0, "control u1 outside [0, 1]");
    require(u2 >= 0.0 && u2 <= 1.0, "control u2 outside [0, 1]");
}

State operator+(const State& x, const State& y) { return {x.X + y.X, x.S + y.S, x.I + y.I, x.A + y.A}; }
State operator-(const State& x, const State& y) { return {x.X - y.X, x.S - y.S, x.I - y.I, x.A - y.A}; }
State operator*(double k, const State& x) { return {k * x.X, k * x.S, k * x.I, k * x.A}; }

Costate operator+(const Costate& x, const Costate& y) {
    return {x.p1 + y.p1, x.p2 + y.p2, x.p3 + y.p3, x.p4 + y.p4};
}
Costate operator-(const Costate& x, const Costate& y) {
    return {x.p1 - y.p1, x.p2 - y.p2, x.p3 - y.p3, x.p4 - y.p4};
}
Costate operator*(double k, const Costate& x) { return {k * x.p1, k * x.p2, k * x.p3, k * x.p4}; }

ControlValue operator+(const ControlValue& x, const ControlValue& y) { return {x.u1 + y.u1, x.u2 + y.u2}; }
ControlValue operator*(double k, const ControlValue& x) { return {k * x.u1, k * x.u2}; }

bool is_finite(double v) { return std::isfinite(v); }
bool is_finite(const State& s) {
    return std::isfinite(s.X) && std::isfinite(s.S) && std::isfinite(s.I) && std::isfinite(s.A);
}
bool is_finite(const Costate& p) {
    return std::isfinite(p.p1) && std::isfinite(p.p2) && std::isfinite(p.p3) && std::isfinite(p.p4);
}
bool is_finite(const ControlValue& u) { return std::isfinite(u.u1) && std::isfinite(u.u2); }

double max_norm(const State& s) {
    return std::max({std::abs(s.X), std::abs(s.S), std::abs(s.I), std::abs(s.A)});
}
double max_norm(const Costate& p) {
    return std::max({std::abs(p.p1), std::abs(p.p2), std::abs(p.p3), std::abs(p.p4)});
}

void check_state(const State& s, double tolerance) {
    require_finite(s);
    require(s.X >= -tolerance && s.S >= -tolerance && s.I >= -tolerance && s.A >= -tolerance,
            "state has a negative component");
}

State rhs_uncontrolled(const ModelParams& p, const State& s) {
    return rhs_controlled(p, s, ControlValue{1.0, 1.0});
}

State rhs_controlled(const ModelParams& p, const State& s, const ControlValue& u) {
    require_finite(s);
    require(is_finite(u), "control has a non-finite component");
    const double attack = p.alpha * s.X / (p.c + s.X);
    const double infection = u.u1 * p.lambda * s.A * s.S / (p.a + s.A);
    return {
        p.r * s.X * (1.0 - s.X / p.K) - attack * s.S - p.phi * attack * s.I,
        p.m1 * attack * s.S - infection - p.d * s.S,
        p.m2 * p.phi * attack * s.I + infection - (p.d + p.delta) * s.I,
        u.u2 * p.gamma + p.sigma * (s.S + s.I) - p.eta * s.A,
    };
}

Matrix4 jacobian(const ModelParams& p, const State& s) {
    require_finite(s);
    const double cx = p.c + s.X;
    const double cx2 = cx * cx;
    const double aA = p.a + s.A;
    const double aA2 = aA * aA;
    const double sat_x = p.alpha * s.X / cx;        // alpha X / (c + X)
    const double dsat_x = p.alpha * p.c / cx2;      // d/dX of alpha X / (c + X)
    const double aware = p.lambda * s.A / aA;       // lambda A / (a + A)
    const double daware = p.lambda * p.a * s.S / aA2;

    Matrix4 J{};
    J[0] = {p.r * (1.0 - 2.0 * s.X / p.K) - dsat_x * s.S - p.phi * dsat_x * s.I,
            -sat_x, -p.phi * sat_x, 0.0};
    J[1] = {p.m1 * dsat_x * s.S, p.m1 * sat_x - aware - p.d, 0.0, -daware};
    J[2] = {p.m2 * p.phi * dsat_x * s.I, aware, p.m2 * p.phi * sat_x - p.d - p.delta, daware};
    J[3] = {0.0, p.sigma, p.sigma, -p.eta};
    return J;
}

Costate costate_rhs(const ModelParams& p, const State& s, const Costate& q,
                    const ControlValue& u, const ObjectiveWeights& w) {
    require_finite(s);
    require(is_finite(q), "costate has a non-finite component");
    const double cx = p.c + s.X;
    const double cx2 = cx * cx;
    const double aA = p.a + s.A;
    const double sat_x = p.alpha * s.X / cx;
    const double dsat_x = p.alpha * p.c / cx2;
    const double aware = u.u1 * p.lambda * s.A / aA;
    const double daware = u.u1 * p.lambda * p.a * s.S / (aA * aA);

    return {
        q.p1 * (dsat_x * s.S + p.phi * dsat_x * s.I - p.r * (1.0 - 2.0 * s.X / p.K))
            - q.p2 * p.m1 * dsat_x * s.S - q.p3 * p.m2 * p.phi * dsat_x * s.I,
        -2.0 * w.A1 * s.S + q.p1 * sat_x + q.p2 * (aware - p.m1 * sat_x + p.d)
            - q.p3 * aware - q.p4 * p.sigma,
        q.p1 * p.phi * sat_x + q.p3 * (p.d + p.delta - p.m2 * p.phi * sat_x) - q.p4 * p.sigma,
        2.0 * w.A2 * s.A + q.p2 * daware - q.p3 * daware + q.p4 * p.eta,
    };
}

double running_cost(const State& s, const ControlValue& u, const ObjectiveWeights& w) {
    return w.A1 * s.S * s.S - w.A2 * s.A * s.A + 0.5 * w.B1 * u.u1 * u.u1 + 0.5 * w.B2 * u.u2 * u.u2;
}

double hamiltonian(const ModelParams& p, const State& s, const Costate& q,
                   const ControlValue& u, const ObjectiveWeights& w) {
    const State f = rhs_controlled(p, s, u);
    return running_cost(s, u, w) + q.p1 * f.X + q.p2 * f.S + q.p3 * f.I + q.p4 * f.A;
}

bool RegionBounds::contains(const State& s, double slack) const {
    return s.X <= M + slack && s.X + s.S + s.I <= W_max + slack && s.A <= A_max + slack;
}

RegionBounds attracting_region(const ModelParams& p, double x0) {
    require(std::isfinite(x0) && x0 >= 0.0, "initial crop biomass must be finite and non-negative");
    require(p.d > 0.0, "attracting region undefined for d = 0");
    require(p.eta > 0.0, "attracting region undefined for eta = 0");
    const double M = std::max(x0, p.K);
    const double W_max = (p.r + 4.0 * p.d) * M / (4.0 * p.d);
    const double A_max = (4.0 * p.gamma * p.d + p.sigma * (p.r + 4.0 * p.d) * M) / (4.0 * p.eta * p.d);
    return {M, W_max, A_max};
}

}  // namespace croppest
