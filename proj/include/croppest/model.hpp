#pragma once

// Crop / pest / awareness dynamics: parameter and state types together with
// the right-hand sides, Jacobian, adjoint dynamics and running cost.

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace croppest {

/// Tolerance on negative state components produced by floating-point drift.
inline constexpr double kPositivityTolerance = 1e-9;

/// Rate constants of the uncontrolled system. Defaults are the published
/// parameter table plus phi = 0.3 (the table gives no value for phi).
struct ModelParams {
    double r = 0.1;        ///< crop growth rate, 1/day
    double K = 1.0;        ///< crop carrying capacity
    double alpha = 0.025;  ///< pest attack rate
    double phi = 0.3;      ///< attack reduction factor of infected pests
    double c = 1.0;        ///< crop half-saturation constant
    double a = 0.5;        ///< awareness half-saturation constant
    double lambda = 0.025; ///< aware-people activity rate
    double d = 0.01;       ///< natural pest mortality
    double delta = 0.1;    ///< disease-related extra mortality
    double m1 = 0.8;       ///< susceptible-pest conversion efficiency
    double m2 = 0.6;       ///< infected-pest conversion efficiency
    double gamma = 0.003;  ///< awareness growth from global sources
    double sigma = 0.015;  ///< awareness growth per observed pest
    double eta = 0.015;    ///< awareness fading rate

    /// Throws DomainError unless every field is finite and non-negative,
    /// K, c, a, eta > 0, phi < 1 and m1 > m2.
    void validate() const;

    /// Names of all fields, in declaration order.
    static constexpr std::array<std::string_view, 14> field_names{
        "r", "K", "alpha", "phi", "c", "a", "lambda",
        "d", "delta", "m1", "m2", "gamma", "sigma", "eta"};

    /// Pointer-to-member for a field name, or nullopt for an unknown name.
    static std::optional<double ModelParams::*> member(std::string_view name);

    /// Copy with one named field replaced. Throws DomainError on unknown name.
    [[nodiscard]] ModelParams with(std::string_view name, double value) const;

    bool operator==(const ModelParams&) const = default;
};

/// Densities at one instant. Also used for time derivatives of the state.
struct State {
    double X = 0.0;  ///< crop biomass
    double S = 0.0;  ///< susceptible pests
    double I = 0.0;  ///< infected pests
    double A = 0.0;  ///< awareness level

    [[nodiscard]] std::array<double, 4> as_array() const { return {X, S, I, A}; }
    static State from_array(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

    bool operator==(const State&) const = default;
};

/// Adjoint multipliers paired with (X, S, I, A).
struct Costate {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;

    [[nodiscard]] std::array<double, 4> as_array() const { return {p1, p2, p3, p4}; }
    static Costate from_array(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

    bool operator==(const Costate&) const = default;
};

/// Weights of the objective: A1 S^2 - A2 A^2 + B1 u1^2 / 2 + B2 u2^2 / 2.
struct ObjectiveWeights {
    double A1 = 1015.0;
    double A2 = 1010.0;
    double B1 = 1.6;
    double B2 = 1.0;

    /// Throws DomainError unless B1, B2 > 0 and A1, A2 >= 0 (all finite).
    void validate() const;

    bool operator==(const ObjectiveWeights&) const = default;
};

/// Control pair: u1 scales bio-pesticide infection, u2 scales global awareness.
struct ControlValue {
    double u1 = 0.0;
    double u2 = 0.0;

    /// Throws DomainError unless both lie in [0, 1].
    void validate() const;

    bool operator==(const ControlValue&) const = default;
};

// Vector-space operations used by the integrators.
State operator+(const State& x, const State& y);
State operator-(const State& x, const State& y);
State operator*(double k, const State& x);
Costate operator+(const Costate& x, const Costate& y);
Costate operator-(const Costate& x, const Costate& y);
Costate operator*(double k, const Costate& x);
ControlValue operator+(const ControlValue& x, const ControlValue& y);
ControlValue operator*(double k, const ControlValue& x);

bool is_finite(double v);
bool is_finite(const State& s);
bool is_finite(const Costate& p);
bool is_finite(const ControlValue& u);

double max_norm(const State& s);
double max_norm(const Costate& p);

/// Throws DomainError if any component is non-finite or below -tolerance.
void check_state(const State& s, double tolerance = kPositivityTolerance);

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Uncontrolled dynamics (dX/dt, dS/dt, dI/dt, dA/dt).
State rhs_uncontrolled(const ModelParams& p, const State& s);

/// Controlled dynamics: u1 multiplies the infection term lambda A S / (a + A),
/// u2 multiplies gamma.
State rhs_controlled(const ModelParams& p, const State& s, const ControlValue& u);

/// Analytic Jacobian of rhs_uncontrolled, row i = d f_i / d(X, S, I, A).
Matrix4 jacobian(const ModelParams& p, const State& s);

/// Adjoint dynamics dp/dt = -dH/d(X, S, I, A) for the Hamiltonian
/// H = running_cost + p . rhs_controlled.
Costate costate_rhs(const ModelParams& p, const State& s, const Costate& q,
                    const ControlValue& u, const ObjectiveWeights& w);

/// Integrand A1 S^2 - A2 A^2 + B1 u1^2 / 2 + B2 u2^2 / 2.
double running_cost(const State& s, const ControlValue& u, const ObjectiveWeights& w);

/// H = running_cost + p . rhs_controlled.
double hamiltonian(const ModelParams& p, const State& s, const Costate& q,
                   const ControlValue& u, const ObjectiveWeights& w);

/// Box that absorbs all trajectories started with X(0) = x0.
struct RegionBounds {
    double M;      ///< bound on X: max(x0, K)
    double W_max;  ///< bound on X + S + I
    double A_max;  ///< bound on A

    /// True when s lies in the box enlarged by `slack`.
    [[nodiscard]] bool contains(const State& s, double slack) const;
};

/// Throws DomainError when d == 0 or eta == 0 (bounds undefined).
RegionBounds attracting_region(const ModelParams& p, double x0);

}  // namespace croppest
