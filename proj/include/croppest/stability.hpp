#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "croppest/equilibria.hpp"
#include "croppest/model.hpp"
#include "croppest/polynomial.hpp"

namespace croppest {

/// Half-width of the band around zero in which the leading eigenvalue real
/// part is reported as Marginal.
inline constexpr double kMarginalBand = 1e-9;

struct EigenSummary {
    std::array<std::complex<double>, 4> eigenvalues{};
    double max_real_part = 0.0;
    bool pure_imaginary_pair = false;  ///< a root with |Re| <= band and |Im| > band
};

struct StabilityReport {
    Equilibrium equilibrium;
    Verdict verdict = Verdict::Unstable;
    CharPoly4 char_poly;
    EigenSummary eigen;
    RouthHurwitzResult routh_hurwitz;
    /// Eigenvalues from the block-triangular factorization, for the axial and
    /// pest-free points only.
    std::optional<std::array<double, 4>> closed_form_eigenvalues;
    /// Largest distance between a closed-form eigenvalue and the nearest
    /// numerical root (zero when no closed form applies).
    double closed_form_discrepancy = 0.0;
};

Verdict verdict_from_real_part(double max_real_part);

EigenSummary eigen_summary(const CharPoly4& cp);

/// R = min{(c+K)(lambda gamma + d(a eta + gamma)) / (m1 (a eta + gamma)),
///         (c+K)(d+delta) / (m2 phi)}; returns alpha K / R.
double r0(const ModelParams& p);

/// Linearization at `eq`: Jacobian, characteristic polynomial, Routh-Hurwitz
/// margins and numerically computed eigenvalues.
StabilityReport classify(const ModelParams& p, const Equilibrium& eq);

struct HopfCandidate {
    double alpha_star = 0.0;
    std::array<double, 2> alpha_bracket{};
    std::array<double, 2> psi_values{};  ///< Psi at the bracket ends, opposite signs
    double psi_at_star = 0.0;
    double transversality_slope = 0.0;   ///< d Re(rho) / d alpha by central difference
    double omega = 0.0;                  ///< imaginary part of the crossing pair at alpha*
    CharPoly4 char_poly;                 ///< at alpha*
    RouthHurwitzMargins side_conditions; ///< C2, C3, C4 and C1 C2 - C3 must be positive
    Equilibrium equilibrium;             ///< E* at alpha*
    bool accepted = false;
};

struct HopfScanResult {
    std::vector<HopfCandidate> candidates;  ///< accepted candidates only
    std::vector<HopfCandidate> rejected;    ///< sign changes failing side or slope checks
    std::vector<double> skipped_alphas;     ///< samples without a coexistence point
    std::string diagnostic;
};

struct HopfScanOptions {
    double alpha_lo = 0.03;
    double alpha_hi = 0.12;
    std::size_t n_samples = 91;
    double slope_step = 1e-4;     ///< central-difference half-width in alpha
    double min_slope = 1e-8;      ///< acceptance threshold on |d Re rho / d alpha|
    double psi_tolerance = 1e-10; ///< bisection target on |Psi|
};

/// Psi(alpha) = C1 C2 C3 - C3^2 - C4 C1^2 at the first coexistence point, or
/// nullopt when none exists at that alpha.
std::optional<double> hopf_indicator(const ModelParams& p, double alpha);

/// Samples alpha uniformly, brackets sign changes of Psi, refines them by
/// bisection and checks side conditions and the transversality slope.
HopfScanResult hopf_scan(const ModelParams& p, const HopfScanOptions& opts);

}  // namespace croppest
