#include "croppest/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "croppest/errors.hpp"

namespace croppest {

namespace {

Equilibrium make(EquilibriumKind kind, const ModelParams& p, const State& point) {
    return {kind, point, max_norm(rhs_uncontrolled(p, point))};
}

bool admissible(const CoexistenceProfile& prof) {
    return prof.x_denominator > 0.0 && std::isfinite(prof.X) && std::isfinite(prof.S) &&
           std::isfinite(prof.I) && prof.X >= 0.0 && prof.S >= 0.0 && prof.I >= 0.0;
}

// Bisects a bracket [lo, hi] with a sign change of h; returns the best point.
double bisect(const ModelParams& p, double lo, double hi, double h_lo) {
    double best = lo;
    double best_abs = std::abs(h_lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double h_mid = coexistence_residual(p, mid);
        if (std::abs(h_mid) < best_abs) {
            best = mid;
            best_abs = std::abs(h_mid);
        }
        if (h_mid == 0.0) break;
        if ((h_mid < 0.0) == (h_lo < 0.0)) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    return best;
}

bool sign_change(double h_left, double h_right) {
    return (h_left < 0.0 && h_right >= 0.0) || (h_left > 0.0 && h_right <= 0.0);
}

}  // namespace

const char* to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::Axial: return "Axial";
        case EquilibriumKind::PestFree: return "PestFree";
        case EquilibriumKind::SusceptibleFree: return "SusceptibleFree";
        case EquilibriumKind::Coexistence: return "Coexistence";
    }
    return "?";
}

Equilibrium axial(const ModelParams& p) {
    return make(EquilibriumKind::Axial, p, {0.0, 0.0, 0.0, p.gamma / p.eta});
}

Equilibrium pest_free(const ModelParams& p) {
    return make(EquilibriumKind::PestFree, p, {p.K, 0.0, 0.0, p.gamma / p.eta});
}

EquilibriumOrReason susceptible_free(const ModelParams& p) {
    const double death = p.d + p.delta;
    const double growth = p.m2 * p.phi * p.alpha;
    if (std::abs(growth - death) < 1e-14)
        throw DegenerateParameterError("m2 phi alpha equals d + delta; susceptible-free point undefined");

    const double threshold = growth * p.K / (p.c + p.K);
    if (!(death < threshold)) {
        std::ostringstream why;
        why.precision(12);
        why << "requires d + delta < m2 phi alpha K / (c + K), but " << death << " >= " << threshold;
        return Nonexistence{EquilibriumKind::SusceptibleFree, why.str()};
    }
    const double X = p.c * death / (growth - death);
    const double I = p.r * (p.c + X) * (p.K - X) / (p.phi * p.alpha * p.K);
    const double A = (p.gamma + p.sigma * I) / p.eta;
    return make(EquilibriumKind::SusceptibleFree, p, {X, 0.0, I, A});
}

SusceptibleFreeExpanded susceptible_free_expanded(const ModelParams& p) {
    const double death = p.d + p.delta;
    const double gap = p.phi * p.alpha * p.m2 - death;
    const double gap2 = gap * gap;
    const double I = (p.K * p.alpha * p.phi * p.m2 - (p.K + p.c) * death) / (p.K * gap2) * p.c * p.r * p.m2;
    const double A = (p.K * p.gamma * gap2 + p.K * p.phi * p.alpha * p.sigma * p.m2 * p.m2 * p.c * p.r -
                      (p.K + p.c) * death * p.c * p.r * p.m2 * p.sigma) /
                     gap2;
    return {I, A};
}

CoexistenceProfile coexistence_profile(const ModelParams& p, double A) {
    CoexistenceProfile prof;
    prof.x_denominator = (p.m1 * p.alpha - p.d) * (p.a + A) - p.lambda * A;
    prof.X = p.c * (p.lambda * A + p.d * (p.a + A)) / prof.x_denominator;
    // alpha S + phi alpha I = r (K - X)(c + X) / K and S + I = (eta A - gamma) / sigma.
    const double attack_total = p.r * (p.K - prof.X) * (p.c + prof.X) / p.K;
    const double pests_total = (p.eta * A - p.gamma) / p.sigma;
    const double scale = p.alpha * (1.0 - p.phi);
    prof.S = (attack_total - p.phi * p.alpha * pests_total) / scale;
    prof.I = (p.alpha * pests_total - attack_total) / scale;
    return prof;
}

double coexistence_residual(const ModelParams& p, double A) {
    const auto prof = coexistence_profile(p, A);
    return p.m2 * p.phi * p.alpha * prof.X * prof.I / (p.c + prof.X) +
           p.lambda * A * prof.S / (p.a + A) - (p.d + p.delta) * prof.I;
}

SearchBounds default_search_bounds(const ModelParams& p) {
    return {1e-8, attracting_region(p, p.K).A_max};
}

std::vector<Equilibrium> coexistence(const ModelParams& p) {
    return coexistence(p, default_search_bounds(p));
}

std::vector<Equilibrium> coexistence(const ModelParams& p, SearchBounds bounds, std::size_t n_brackets) {
    if (!(bounds.lo > 0.0) || !(bounds.hi > bounds.lo) || !std::isfinite(bounds.hi))
        throw DomainError("coexistence search interval must satisfy 0 < lo < hi < inf");
    if (n_brackets < 1) throw DomainError("coexistence scan needs at least one bracket");
    std::vector<Equilibrium> found;
    if (p.alpha <= 0.0) return found;  // pests cannot grow without feeding
    if (p.sigma <= 0.0)
        throw DegenerateParameterError("coexistence reduction divides by sigma; sigma must be positive");

    // The X* denominator is linear in A; where it vanishes the residual has a
    // pole. Cells straddling that point are trimmed to the side where the
    // denominator is positive and the remainder is rescanned.
    const double den_slope = p.m1 * p.alpha - p.d - p.lambda;
    const double den_at_zero = (p.m1 * p.alpha - p.d) * p.a;
    auto den = [&](double A) { return den_at_zero + den_slope * A; };

    auto scan = [&](double lo, double hi, std::size_t cells, auto&& self, int depth) -> void {
        const double width = (hi - lo) / static_cast<double>(cells);
        double left = lo;
        double h_left = coexistence_residual(p, left);
        for (std::size_t k = 0; k < cells; ++k) {
            const double right = k + 1 == cells ? hi : lo + static_cast<double>(k + 1) * width;
            const double h_right = coexistence_residual(p, right);
            const bool left_ok = den(left) > 0.0;
            const bool right_ok = den(right) > 0.0;
            if (left_ok && right_ok) {
                if (std::isfinite(h_left) && std::isfinite(h_right) && sign_change(h_left, h_right)) {
                    const double A = bisect(p, left, right, h_left);
                    const auto prof = coexistence_profile(p, A);
                    if (admissible(prof) && std::abs(coexistence_residual(p, A)) < 1e-12) {
                        found.push_back(make(EquilibriumKind::Coexistence, p, {prof.X, prof.S, prof.I, A}));
                    }
                }
            } else if ((left_ok || right_ok) && depth < 4) {
                const double pole = -den_at_zero / den_slope;
                const double eps = 1e-9 * (right - left);
                if (left_ok) self(left, pole - eps, 16, self, depth + 1);
                else self(pole + eps, right, 16, self, depth + 1);
            }
            left = right;
            h_left = h_right;
        }
    };
    scan(bounds.lo, bounds.hi, n_brackets, scan, 0);

    std::erase_if(found, [](const Equilibrium& e) { return !(e.residual_norm < kEquilibriumResidualTolerance); });
    std::sort(found.begin(), found.end(),
              [](const Equilibrium& lhs, const Equilibrium& rhs) { return lhs.point.A < rhs.point.A; });
    return found;
}

QuarticCoefficients quartic_coefficients(const ModelParams& p) {
    const double den = p.phi * p.m2 - p.m1;
    if (std::abs(den) < 1e-14) throw DegenerateParameterError("phi m2 equals m1; printed quartic undefined");
    if (p.alpha == 0.0 || p.sigma == 0.0 || p.r == 0.0 || p.m1 == 0.0)
        throw DegenerateParameterError("alpha, sigma, r and m1 must be nonzero for the printed quartic");

    const double m1 = p.m1, m2 = p.m2, ph = p.phi, al = p.alpha, K = p.K, c = p.c, r = p.r;
    const double g = p.gamma, s = p.sigma, e = p.eta, lam = p.lambda, d = p.d, de = p.delta, a = p.a;
    const double common = s * m1 * al * den;
    const double feed = al * al * m1 * K * g + s * r * (al * K * m1 - d);
    const double mort = (d + de) * m1 - m2 * ph * d;

    QuarticCoefficients q;
    q.D[0] = m1 + (m1 * (d - de) + lam * m1 * de - ph * m2 * (d + lam)) / (al * den);
    q.D[1] = (((K - 2.0 * c) * m2 * ph * al + (3.0 * c - K) * de) * (d + lam) + al * (2.0 * c - K) * (d + lam + de)) /
             (al * al * m1 * den);
    q.D[2] = -m1 * lam * g - ((m1 * lam - m2 * ph * lam) * feed) / common +
             (mort * (s * r * lam + al * al * m1 * K * e)) / common;
    q.D[3] = mort * feed / common;
    q.D[4] = (a * c * c * d * d * (ph - 1.0) + a * c * e * e * d * de * (ph - 1.0) + c * c * d * s * r * de * (d + lam)) /
             (s * r * m1 * den);
    return q;
}

std::vector<QuarticDiagnostic> quartic_diagnostic(const ModelParams& p, const std::vector<Equilibrium>& roots) {
    const auto q = quartic_coefficients(p);
    std::vector<QuarticDiagnostic> out;
    out.reserve(roots.size());
    for (const auto& eq : roots) {
        const double A = eq.point.A;
        double scale = 0.0;
        double power = 1.0;
        for (int i = 4; i >= 0; --i) {
            scale += std::abs(q.D[i]) * power;
            power *= A;
        }
        const double value = q(A);
        out.push_back({A, value, std::abs(value) <= 1e-8 * scale});
    }
    return out;
}

}  // namespace croppest
