#pragma once

#include <array>
#include <complex>

#include "croppest/model.hpp"

namespace croppest {

/// Monic quartic rho^4 + c1 rho^3 + c2 rho^2 + c3 rho + c4.
struct CharPoly4 {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;

    [[nodiscard]] std::complex<double> operator()(std::complex<double> rho) const {
        return (((rho + c1) * rho + c2) * rho + c3) * rho + c4;
    }

    /// Hopf indicator C1 C2 C3 - C3^2 - C4 C1^2; zero when the quartic has a
    /// root pair +-i omega.
    [[nodiscard]] double psi() const { return c1 * c2 * c3 - c3 * c3 - c4 * c1 * c1; }

    bool operator==(const CharPoly4&) const = default;
};

/// Coefficients of det(rho I - J) by the Faddeev-LeVerrier trace recursion.
CharPoly4 char_poly(const Matrix4& J);

/// Signed Routh-Hurwitz margins; each must be positive for stability.
struct RouthHurwitzMargins {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double c1c2_minus_c3 = 0.0;               ///< C1 C2 - C3
    double hurwitz3 = 0.0;                    ///< (C1 C2 - C3) C3 - C1^2 C4

    [[nodiscard]] std::array<double, 6> as_array() const {
        return {c1, c2, c3, c4, c1c2_minus_c3, hurwitz3};
    }
    [[nodiscard]] double min() const;
};

enum class Verdict { Stable, Unstable, Marginal };

const char* to_string(Verdict v);

struct RouthHurwitzResult {
    bool is_stable = false;
    Verdict verdict = Verdict::Unstable;  ///< Marginal when no margin is negative but one is zero
    RouthHurwitzMargins margins;
};

RouthHurwitzResult routh_hurwitz(const CharPoly4& cp);

/// All four complex roots of a monic quartic: Ferrari reduction through the
/// resolvent cubic, then Newton polishing on the original polynomial.
std::array<std::complex<double>, 4> quartic_roots(const CharPoly4& cp);

/// Largest real part among the roots.
double max_real_part(const std::array<std::complex<double>, 4>& roots);

}  // namespace croppest
