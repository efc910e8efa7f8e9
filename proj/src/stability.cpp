#include "croppest/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace croppest {

namespace {

// Root tracked through a Hopf crossing: the complex root with the largest
// real part, or the largest real root when every root is real.
std::complex<double> leading_oscillatory_root(const std::array<std::complex<double>, 4>& roots) {
    std::optional<std::complex<double>> best;
    for (const auto& z : roots) {
        if (std::abs(z.imag()) <= kMarginalBand) continue;
        if (!best || z.real() > best->real() || (z.real() == best->real() && z.imag() > best->imag())) best = z;
    }
    if (best) return *best;
    return *std::max_element(roots.begin(), roots.end(),
                             [](const auto& lhs, const auto& rhs) { return lhs.real() < rhs.real(); });
}

std::optional<Equilibrium> first_coexistence(const ModelParams& p) {
    const auto points = coexistence(p);
    if (points.empty()) return std::nullopt;
    return points.front();
}

}  // namespace

Verdict verdict_from_real_part(double max_real_part) {
    if (max_real_part < -kMarginalBand) return Verdict::Stable;
    if (max_real_part <= kMarginalBand) return Verdict::Marginal;
    return Verdict::Unstable;
}

EigenSummary eigen_summary(const CharPoly4& cp) {
    EigenSummary out;
    out.eigenvalues = quartic_roots(cp);
    out.max_real_part = max_real_part(out.eigenvalues);
    out.pure_imaginary_pair = std::any_of(out.eigenvalues.begin(), out.eigenvalues.end(), [](const auto& z) {
        return std::abs(z.real()) <= kMarginalBand && std::abs(z.imag()) > kMarginalBand;
    });
    return out;
}

double r0(const ModelParams& p) {
    const double aware = p.a * p.eta + p.gamma;
    const double susceptible = (p.c + p.K) * (p.lambda * p.gamma + p.d * aware) / (p.m1 * aware);
    const double infected = p.m2 * p.phi > 0.0 ? (p.c + p.K) * (p.d + p.delta) / (p.m2 * p.phi)
                                               : std::numeric_limits<double>::infinity();
    return p.alpha * p.K / std::min(susceptible, infected);
}

StabilityReport classify(const ModelParams& p, const Equilibrium& eq) {
    StabilityReport rep;
    rep.equilibrium = eq;
    rep.char_poly = char_poly(jacobian(p, eq.point));
    rep.routh_hurwitz = routh_hurwitz(rep.char_poly);
    rep.eigen = eigen_summary(rep.char_poly);
    rep.verdict = verdict_from_real_part(rep.eigen.max_real_part);

    const double awareness_loss = p.lambda * p.gamma / (p.a * p.eta + p.gamma);
    if (eq.kind == EquilibriumKind::Axial) {
        rep.closed_form_eigenvalues = std::array<double, 4>{p.r, -awareness_loss - p.d, -(p.d + p.delta), -p.eta};
    } else if (eq.kind == EquilibriumKind::PestFree) {
        const double sat = p.alpha * p.K / (p.c + p.K);
        rep.closed_form_eigenvalues = std::array<double, 4>{
            -p.r, p.m1 * sat - awareness_loss - p.d, p.m2 * p.phi * sat - p.d - p.delta, -p.eta};
    }
    if (rep.closed_form_eigenvalues) {
        for (double ev : *rep.closed_form_eigenvalues) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& z : rep.eigen.eigenvalues) nearest = std::min(nearest, std::abs(z - ev));
            rep.closed_form_discrepancy = std::max(rep.closed_form_discrepancy, nearest);
        }
    }
    return rep;
}

std::optional<double> hopf_indicator(const ModelParams& p, double alpha) {
    const ModelParams q = p.with("alpha", alpha);
    const auto eq = first_coexistence(q);
    if (!eq) return std::nullopt;
    return char_poly(jacobian(q, eq->point)).psi();
}

HopfScanResult hopf_scan(const ModelParams& p, const HopfScanOptions& opts) {
    HopfScanResult out;
    if (opts.n_samples < 2 || !(opts.alpha_hi > opts.alpha_lo)) {
        out.diagnostic = "alpha range must be increasing with at least two samples";
        return out;
    }

    std::vector<double> alphas(opts.n_samples);
    std::vector<std::optional<double>> psi(opts.n_samples);
    const double step = (opts.alpha_hi - opts.alpha_lo) / static_cast<double>(opts.n_samples - 1);
    for (std::size_t k = 0; k < opts.n_samples; ++k) {
        alphas[k] = k + 1 == opts.n_samples ? opts.alpha_hi : opts.alpha_lo + static_cast<double>(k) * step;
        psi[k] = hopf_indicator(p, alphas[k]);
        if (!psi[k]) out.skipped_alphas.push_back(alphas[k]);
    }
    if (out.skipped_alphas.size() == opts.n_samples) {
        out.diagnostic = "no coexistence equilibrium anywhere in the alpha range";
        return out;
    }

    auto real_part_at = [&](double alpha) -> std::optional<double> {
        const ModelParams q = p.with("alpha", alpha);
        const auto eq = first_coexistence(q);
        if (!eq) return std::nullopt;
        return leading_oscillatory_root(quartic_roots(char_poly(jacobian(q, eq->point)))).real();
    };

    for (std::size_t k = 0; k + 1 < opts.n_samples; ++k) {
        if (!psi[k] || !psi[k + 1]) continue;
        const double left_value = *psi[k];
        const double right_value = *psi[k + 1];
        if (!((left_value < 0.0 && right_value >= 0.0) || (left_value > 0.0 && right_value <= 0.0))) continue;

        HopfCandidate cand;
        cand.alpha_bracket = {alphas[k], alphas[k + 1]};
        cand.psi_values = {left_value, right_value};

        double lo = alphas[k], hi = alphas[k + 1], psi_lo = left_value;
        double mid = 0.5 * (lo + hi);
        std::optional<double> psi_mid = hopf_indicator(p, mid);
        for (int it = 0; it < 200 && psi_mid; ++it) {
            if (*psi_mid == 0.0) break;
            if (std::abs(*psi_mid) < opts.psi_tolerance && hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
            if ((*psi_mid < 0.0) == (psi_lo < 0.0)) {
                lo = mid;
                psi_lo = *psi_mid;
            } else {
                hi = mid;
            }
            const double next = 0.5 * (lo + hi);
            if (next <= lo || next >= hi) break;
            mid = next;
            psi_mid = hopf_indicator(p, mid);
        }
        if (!psi_mid) {
            out.rejected.push_back(cand);
            continue;
        }
        cand.alpha_star = mid;
        cand.psi_at_star = *psi_mid;

        const ModelParams at_star = p.with("alpha", mid);
        cand.equilibrium = *first_coexistence(at_star);
        cand.char_poly = char_poly(jacobian(at_star, cand.equilibrium.point));
        cand.side_conditions = routh_hurwitz(cand.char_poly).margins;
        cand.omega = std::abs(leading_oscillatory_root(quartic_roots(cand.char_poly)).imag());

        const auto above = real_part_at(mid + opts.slope_step);
        const auto below = real_part_at(mid - opts.slope_step);
        if (above && below) cand.transversality_slope = (*above - *below) / (2.0 * opts.slope_step);

        const auto& m = cand.side_conditions;
        const bool sides = m.c2 > 0.0 && m.c3 > 0.0 && m.c4 > 0.0 && m.c1c2_minus_c3 > 0.0;
        cand.accepted = sides && above && below && std::abs(cand.transversality_slope) > opts.min_slope;
        (cand.accepted ? out.candidates : out.rejected).push_back(cand);
    }

    std::ostringstream diag;
    diag << out.candidates.size() << " accepted, " << out.rejected.size() << " rejected, "
         << out.skipped_alphas.size() << " samples without a coexistence point";
    out.diagnostic = diag.str();
    return out;
}

}  // namespace croppest
