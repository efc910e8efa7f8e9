#include "croppest/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace croppest {

namespace {

using cplx = std::complex<double>;

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
    Matrix4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    return out;
}

double trace(const Matrix4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

// Largest real root of x^3 + a x^2 + b x + c.
double largest_real_cubic_root(double a, double b, double c) {
    const double Q = (a * a - 3.0 * b) / 9.0;
    const double R = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    double x;
    if (Q > 0.0 && R * R < Q * Q * Q) {
        const double theta = std::acos(std::clamp(R / std::sqrt(Q * Q * Q), -1.0, 1.0));
        const double sq = -2.0 * std::sqrt(Q);
        x = std::max({sq * std::cos(theta / 3.0),
                      sq * std::cos((theta + 2.0 * std::numbers::pi) / 3.0),
                      sq * std::cos((theta - 2.0 * std::numbers::pi) / 3.0)}) -
            a / 3.0;
    } else {
        const double A = -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R * R - Q * Q * Q)), R);
        const double B = A != 0.0 ? Q / A : 0.0;
        x = A + B - a / 3.0;
    }
    for (int it = 0; it < 8; ++it) {
        const double f = ((x + a) * x + b) * x + c;
        const double df = (3.0 * x + 2.0 * a) * x + b;
        if (df == 0.0) break;
        const double step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

// Both roots of z^2 + b z + c with real b, c.
std::array<cplx, 2> quadratic_roots(double b, double c) {
    const cplx disc = std::sqrt(cplx(b * b - 4.0 * c, 0.0));
    // Avoid cancellation: pick the sign that adds magnitudes.
    const cplx q = -0.5 * (cplx(b, 0.0) + (b >= 0.0 ? disc : -disc));
    if (q == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    return {q, c / q};
}

cplx polish(const CharPoly4& cp, cplx z) {
    auto value = [&](cplx x) { return cp(x); };
    auto slope = [&](cplx x) { return ((4.0 * x + 3.0 * cp.c1) * x + 2.0 * cp.c2) * x + cp.c3; };
    double residual = std::abs(value(z));
    for (int it = 0; it < 30 && residual > 0.0; ++it) {
        const cplx d = slope(z);
        if (d == cplx(0.0, 0.0)) break;
        const cplx next = z - value(z) / d;
        const double next_residual = std::abs(value(next));
        if (!(next_residual < residual)) break;
        z = next;
        residual = next_residual;
    }
    return z;
}

}  // namespace

CharPoly4 char_poly(const Matrix4& J) {
    Matrix4 M{};
    for (int i = 0; i < 4; ++i) M[i][i] = 1.0;
    std::array<double, 4> c{};
    for (int k = 1; k <= 4; ++k) {
        const Matrix4 JM = multiply(J, M);
        c[k - 1] = -trace(JM) / static_cast<double>(k);
        M = JM;
        for (int i = 0; i < 4; ++i) M[i][i] += c[k - 1];
    }
    return {c[0], c[1], c[2], c[3]};
}

double RouthHurwitzMargins::min() const {
    const auto v = as_array();
    return *std::min_element(v.begin(), v.end());
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "Stable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::Marginal: return "Marginal";
    }
    return "?";
}

RouthHurwitzResult routh_hurwitz(const CharPoly4& cp) {
    RouthHurwitzResult out;
    auto& m = out.margins;
    m.c1 = cp.c1;
    m.c2 = cp.c2;
    m.c3 = cp.c3;
    m.c4 = cp.c4;
    m.c1c2_minus_c3 = cp.c1 * cp.c2 - cp.c3;
    m.hurwitz3 = m.c1c2_minus_c3 * cp.c3 - cp.c1 * cp.c1 * cp.c4;
    const double lowest = m.min();
    out.is_stable = lowest > 0.0;
    out.verdict = lowest > 0.0 ? Verdict::Stable : (lowest == 0.0 ? Verdict::Marginal : Verdict::Unstable);
    return out;
}

std::array<std::complex<double>, 4> quartic_roots(const CharPoly4& cp) {
    // Scale rho = s x so the coefficients of the x-quartic are O(1).
    const double s = std::max({std::abs(cp.c1), std::sqrt(std::abs(cp.c2)), std::cbrt(std::abs(cp.c3)),
                               std::sqrt(std::sqrt(std::abs(cp.c4)))});
    if (s == 0.0) return {};
    const double b = cp.c1 / s;
    const double c = cp.c2 / (s * s);
    const double d = cp.c3 / (s * s * s);
    const double e = cp.c4 / (s * s * s * s);

    // Depressed quartic y^4 + p y^2 + q y + r with x = y - b/4.
    const double b2 = b * b;
    const double p = c - 3.0 * b2 / 8.0;
    const double q = d - b * c / 2.0 + b2 * b / 8.0;
    const double r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;

    std::array<cplx, 4> y{};
    bool solved = false;
    if (std::abs(q) > 1e-12) {
        const double m = largest_real_cubic_root(-p / 2.0, -r, p * r / 2.0 - q * q / 8.0);
        const double two_m_minus_p = 2.0 * m - p;
        if (two_m_minus_p > 0.0) {
            const double root = std::sqrt(two_m_minus_p);
            const auto first = quadratic_roots(-root, m + q / (2.0 * root));
            const auto second = quadratic_roots(root, m - q / (2.0 * root));
            y = {first[0], first[1], second[0], second[1]};
            solved = true;
        }
    }
    if (!solved) {
        // Biquadratic y^4 + p y^2 + r, q treated as zero; polishing absorbs it.
        const auto z = quadratic_roots(p, r);
        y = {std::sqrt(z[0]), -std::sqrt(z[0]), std::sqrt(z[1]), -std::sqrt(z[1])};
    }

    std::array<cplx, 4> roots{};
    for (int i = 0; i < 4; ++i) roots[i] = polish(cp, s * (y[i] - b / 4.0));
    std::sort(roots.begin(), roots.end(), [](cplx lhs, cplx rhs) {
        return lhs.real() != rhs.real() ? lhs.real() > rhs.real() : lhs.imag() > rhs.imag();
    });
    return roots;
}

double max_real_part(const std::array<std::complex<double>, 4>& roots) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& z : roots) best = std::max(best, z.real());
    return best;
}

}  // namespace croppest
