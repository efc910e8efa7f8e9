#pragma once

// Steady states of the uncontrolled system.
//
// The axial and pest-free points are closed form. The susceptible-free point
// exists only when d + delta < m2 phi alpha K / (c + K). Coexistence points
// are found by reducing the steady-state equations to a scalar residual in the
// awareness level A and bracketing its sign changes.

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "croppest/model.hpp"

namespace croppest {

/// Upper bound on rhs max-norm at any returned equilibrium.
inline constexpr double kEquilibriumResidualTolerance = 1e-10;

enum class EquilibriumKind { Axial, PestFree, SusceptibleFree, Coexistence };

const char* to_string(EquilibriumKind kind);

struct Equilibrium {
    EquilibriumKind kind = EquilibriumKind::Axial;
    State point;
    double residual_norm = 0.0;  ///< max-norm of rhs_uncontrolled at point
};

/// Why an equilibrium family has no admissible point.
struct Nonexistence {
    EquilibriumKind kind = EquilibriumKind::SusceptibleFree;
    std::string reason;
};

using EquilibriumOrReason = std::variant<Equilibrium, Nonexistence>;

/// (0, 0, 0, gamma / eta).
Equilibrium axial(const ModelParams& p);

/// (K, 0, 0, gamma / eta).
Equilibrium pest_free(const ModelParams& p);

/// (Xbar, 0, Ibar, Abar) when d + delta < m2 phi alpha K / (c + K), otherwise
/// a Nonexistence quoting the violated inequality. Throws
/// DegenerateParameterError when m2 phi alpha - (d + delta) is within 1e-14 of 0.
EquilibriumOrReason susceptible_free(const ModelParams& p);

/// The expanded closed forms printed next to the geometric ones for Ibar and
/// Abar. Kept for cross-checking only.
struct SusceptibleFreeExpanded {
    double I;
    double A;
};
SusceptibleFreeExpanded susceptible_free_expanded(const ModelParams& p);

/// X*, S*, I* as functions of the awareness level A.
struct CoexistenceProfile {
    double X = 0.0;
    double S = 0.0;
    double I = 0.0;
    double x_denominator = 0.0;  ///< (m1 alpha - d)(a + A) - lambda A; must be > 0
};

/// Solves the S-equation for X and the X- and A-equations for S and I.
CoexistenceProfile coexistence_profile(const ModelParams& p, double A);

/// Scalar residual h(A): the I-equation evaluated at the reduced profile.
double coexistence_residual(const ModelParams& p, double A);

struct SearchBounds {
    double lo = 1e-8;
    double hi = 1.0;
};

/// Default awareness interval (1e-8, A_max] with A_max from the attracting
/// region for X(0) = K.
SearchBounds default_search_bounds(const ModelParams& p);

/// Admissible coexistence points with A in `bounds`, sorted by A. Each root is
/// bracketed on `n_brackets` uniform cells and bisected to |h| < 1e-12.
std::vector<Equilibrium> coexistence(const ModelParams& p, SearchBounds bounds,
                                     std::size_t n_brackets = 4096);
std::vector<Equilibrium> coexistence(const ModelParams& p);

/// The printed quartic f(A) = D0 A^4 + D1 A^3 + D2 A^2 + D3 A + D4, kept as a
/// diagnostic against the roots of coexistence_residual.
struct QuarticCoefficients {
    std::array<double, 5> D{};

    [[nodiscard]] double operator()(double A) const {
        return (((D[0] * A + D[1]) * A + D[2]) * A + D[3]) * A + D[4];
    }
};

/// Throws DegenerateParameterError when phi m2 - m1, alpha, sigma, r or m1
/// make a printed denominator vanish.
QuarticCoefficients quartic_coefficients(const ModelParams& p);

struct QuarticDiagnostic {
    double A_star;
    double quartic_value;
    bool vanishes;  ///< |f(A*)| <= 1e-8 * (sum of |D_i A*^(4-i)|)
};

/// Evaluates the printed quartic at each coexistence root.
std::vector<QuarticDiagnostic> quartic_diagnostic(const ModelParams& p,
                                                  const std::vector<Equilibrium>& roots);

}  // namespace croppest
