#include <doctest.h>

#include <cmath>
#include <random>
#include <variant>

#include "croppest/equilibria.hpp"
#include "croppest/integrate.hpp"
#include "croppest/stability.hpp"
#include "test_support.hpp"

using namespace croppest;

TEST_SUITE("stability") {

TEST_CASE("axial point: closed-form roots of the characteristic polynomial") {
    const ModelParams p;
    const auto rep = classify(p, axial(p));
    CHECK(rep.verdict == Verdict::Unstable);
    CHECK(rep.eigen.max_real_part == doctest::Approx(0.1).epsilon(1e-12));
    for (double z : {0.1, -0.017142857142857144, -0.11, -0.015})
        CHECK(std::abs(rep.char_poly({z, 0.0})) < 1e-12);
    REQUIRE(rep.closed_form_eigenvalues.has_value());
    CHECK(rep.closed_form_discrepancy < 1e-12);
}

TEST_CASE("pest-free point and the R0 threshold") {
    const ModelParams p;
    CHECK(r0(p) == doctest::Approx(0.5833333333333334).epsilon(1e-12));
    const auto low = classify(p, pest_free(p));
    CHECK(low.verdict == Verdict::Stable);
    CHECK(low.closed_form_discrepancy < 1e-12);

    const auto q = p.with("alpha", 0.06);
    CHECK(r0(q) == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(classify(q, pest_free(q)).verdict == Verdict::Unstable);
}

TEST_CASE("the axial point is unstable for random parameters") {
    std::mt19937_64 rng(101);
    for (int k = 0; k < 500; ++k) {
        const auto p = croppest::testing::random_params(rng);
        const auto rep = classify(p, axial(p));
        CHECK(rep.verdict == Verdict::Unstable);
        CHECK(std::abs(rep.eigen.max_real_part - p.r) < 1e-9);
    }
}

TEST_CASE("R0 - 1 and the pest-free verdict agree for random parameters") {
    std::mt19937_64 rng(202);
    int compared = 0;
    for (int k = 0; k < 500; ++k) {
        const auto p = croppest::testing::random_params(rng);
        const auto rep = classify(p, pest_free(p));
        if (std::abs(rep.routh_hurwitz.margins.min()) < 1e-8 || std::abs(r0(p) - 1.0) < 1e-6) continue;
        ++compared;
        CHECK((r0(p) < 1.0) == (rep.verdict == Verdict::Stable));
    }
    CHECK(compared > 300);
}

TEST_CASE("verdict banding") {
    CHECK(verdict_from_real_part(-1e-8) == Verdict::Stable);
    CHECK(verdict_from_real_part(5e-10) == Verdict::Marginal);
    CHECK(verdict_from_real_part(-5e-10) == Verdict::Marginal);
    CHECK(verdict_from_real_part(1e-8) == Verdict::Unstable);
    const auto e = eigen_summary({3, 3, 3, 2});
    CHECK(e.pure_imaginary_pair);
}

TEST_CASE("coexistence point at alpha = 0.06 is stable and satisfies the side conditions") {
    const auto p = ModelParams{}.with("alpha", 0.06);
    const auto pts = coexistence(p);
    REQUIRE(pts.size() == 1);
    const auto rep = classify(p, pts[0]);
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.routh_hurwitz.is_stable);
    CHECK_FALSE(rep.closed_form_eigenvalues.has_value());
}

TEST_CASE("hopf scan over the published alpha range") {
    const ModelParams p;
    const auto scan = hopf_scan(p, {});
    // E* is stable throughout [0.03, 0.12] at phi = 0.3; the low end has no E*.
    CHECK(scan.candidates.empty());
    CHECK_FALSE(scan.skipped_alphas.empty());
    CHECK_FALSE(scan.diagnostic.empty());
}

TEST_CASE("hopf scan locates the crossing at larger alpha") {
    const ModelParams p;
    HopfScanOptions opts;
    opts.alpha_lo = 0.5;
    opts.alpha_hi = 1.2;
    opts.n_samples = 71;
    const auto scan = hopf_scan(p, opts);
    REQUIRE(scan.candidates.size() == 1);
    const auto& c = scan.candidates[0];
    CHECK(c.accepted);
    CHECK(c.psi_values[0] * c.psi_values[1] < 0.0);
    CHECK(std::abs(c.psi_at_star) < 1e-10);
    CHECK(c.side_conditions.c2 > 0);
    CHECK(c.side_conditions.c3 > 0);
    CHECK(c.side_conditions.c4 > 0);
    CHECK(c.side_conditions.c1c2_minus_c3 > 0);
    CHECK(c.omega > 0);
    CHECK(std::abs(c.transversality_slope) > 1e-8);

    // The leading real part changes sign across alpha* with the reported orientation.
    auto lead = [&](double alpha) {
        const auto q = p.with("alpha", alpha);
        return classify(q, coexistence(q).front()).eigen.max_real_part;
    };
    const double eps = 1e-3;
    const double sign = c.transversality_slope > 0 ? 1.0 : -1.0;
    CHECK(sign * lead(c.alpha_star + eps) > 0.0);
    CHECK(sign * lead(c.alpha_star - eps) < 0.0);
}

TEST_CASE("hopf indicator vanishes on a polynomial with an imaginary pair") {
    CHECK(CharPoly4{3, 3, 3, 2}.psi() == 0.0);
    CHECK_FALSE(hopf_indicator(ModelParams{}, 0.025).has_value());
    CHECK(hopf_indicator(ModelParams{}, 0.06).has_value());
}

}
