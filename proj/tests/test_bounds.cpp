#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ensmet/bounds.hpp"

using namespace ensmet;

namespace {

// Independent long-double root solve of 2x^2 - b x + c = 0 (smaller root).
double quadratic_oracle(double p0, int ymax, double h_y, double strength) {
    const long double p = p0;
    const long double h2p = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    const long double u = h2p + p * std::log2(static_cast<long double>(ymax - 1));
    const long double b = std::log2((1 - p) / p) +
                          std::log2(static_cast<long double>(ymax - 1));
    const long double c = static_cast<long double>(h_y) - strength - u;
    const long double root = (b - std::sqrt(b * b - 8 * c)) / 4;
    return static_cast<double>(p + root);
}

}  // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    // high-precision reference value for p = 0.155
    CHECK(binary_entropy(0.155) ==
          doctest::Approx(0.6222126380063133).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("u and its derivative") {
    CHECK(u_func(0.5, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u_prime(0.5, 2) == doctest::Approx(0.0).epsilon(1e-15));
    // log2(3) + 1
    CHECK(u_prime(0.25, 3) ==
          doctest::Approx(2.584962500721156).epsilon(1e-13));
    CHECK_THROWS_AS(u_prime(0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(u_prime(1.0, 2), std::invalid_argument);
}

TEST_CASE("loose bound substitutions") {
    CHECK(bound_loose(1.0, 1.0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(bound_loose(0.0, 1.0, 2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(bound_loose(0.5, 2.0, 4) == doctest::Approx(0.25).epsilon(1e-15));
    // binary with H(Y) <= 1: non-positive for every non-negative information
    for (double h_y : {0.3, 0.7, 1.0}) {
        for (double info = 0.0; info <= 1.0; info += 0.05)
            CHECK(bound_loose(info, h_y, 2) <= 1e-15);
    }
    CHECK_THROWS_AS(bound_loose(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("tight bound at the tangent point returns p0") {
    for (int ymax : {2, 3, 4}) {
        const double h_y = std::log2(static_cast<double>(ymax));
        const double limit = (ymax - 1.0) / ymax;
        for (double p0 = 0.05; p0 < limit; p0 += 0.05) {
            const BoundConfig cfg{p0, ymax};
            const BoundResult r = bound_tight(h_y - u_func(p0, ymax), h_y, cfg);
            REQUIRE(r.defined);
            CHECK(r.value == doctest::Approx(p0).epsilon(1e-12));
        }
    }
}

TEST_CASE("tight bound with zero slope solves the quadratic directly") {
    // p0 = 0.5, ymax = 2: U' vanishes; 2x^2 <= -c picks x = -0.5
    const BoundResult r = bound_tight(0.5, 1.0, {0.5, 2});
    REQUIRE(r.defined);
    CHECK(r.diagnostic == BoundDiagnostic::ZeroSlopeHandled);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(quadratic_oracle(0.5, 2, 1.0, 0.5))
                         .epsilon(1e-12));
}

TEST_CASE("tight bound matches the quadratic oracle away from the tangent") {
    // strength chosen so h_y - strength - U(p0) = 0.1
    const double p0 = 0.155;
    const double strength = 1.0 - u_func(p0, 2) - 0.1;
    const BoundResult r = bound_tight(strength, 1.0, {p0, 2});
    REQUIRE(r.defined);
    CHECK(r.diagnostic == BoundDiagnostic::Ok);
    CHECK(r.value == doctest::Approx(0.19733683297891927).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(quadratic_oracle(p0, 2, 1.0, strength))
                         .epsilon(1e-12));
}

TEST_CASE("negative discriminant is surfaced, not clamped") {
    // b = 0 and c > 0
    const BoundResult r = bound_tight(1.0 - u_func(0.5, 2) - 0.1, 1.0, {0.5, 2});
    CHECK_FALSE(r.defined);
    CHECK(r.diagnostic == BoundDiagnostic::NegativeDiscriminant);
}

TEST_CASE("tight bound is nonincreasing in strength") {
    for (int ymax : {2, 3, 4}) {
        const double h_y = std::log2(static_cast<double>(ymax));
        for (double p0 : {0.1, 0.3, (ymax - 1.0) / ymax}) {
            const BoundConfig cfg{p0, ymax};
            double prev = 2.0;
            for (double e = 0.0; e <= h_y + 1e-9; e += h_y / 40.0) {
                const BoundResult r = bound_tight(e, h_y, cfg);
                if (!r.defined) continue;
                CHECK(r.value <= prev + 1e-12);
                prev = r.value;
            }
        }
    }
}

TEST_CASE("with p0 = 1/2 the tightened bound dominates the loose one") {
    for (int ymax : {2, 3, 4}) {
        const double h_y = std::log2(static_cast<double>(ymax));
        const BoundConfig cfg{0.5, ymax};
        int compared = 0;
        for (double e = -0.5; e <= h_y + 1e-9; e += 0.02) {
            const BoundResult r = bound_tight(e, h_y, cfg);
            if (!r.defined) continue;
            CHECK(r.value >= bound_loose(e, h_y, ymax) - 1e-12);
            ++compared;
        }
        CHECK(compared > 10);
    }
}

TEST_CASE("tightness diagnostics") {
    // tau closed form at p0 = 0.5, binary
    CHECK(tightness_diagnostics({0.5, 2}).tau ==
          doctest::Approx(-0.25).epsilon(1e-15));

    // real crossover roots on both sides of the threshold
    const TightnessDiagnostics mild = tightness_diagnostics({0.05, 2});
    CHECK(mild.regime == TightnessRegime::MildP0);
    REQUIRE(mild.delta_roots.has_value());
    CHECK(mild.delta_roots->first ==
          doctest::Approx(0.2851868049742258).epsilon(1e-12));
    CHECK(mild.delta_roots->second ==
          doctest::Approx(1.338776951747567).epsilon(1e-12));

    const TightnessDiagnostics large = tightness_diagnostics({0.95, 2});
    CHECK(large.regime == TightnessRegime::LargeP0);
    CHECK(large.delta_roots.has_value());

    // at the threshold tau vanishes and the quadratic has no real roots
    const TightnessDiagnostics at_threshold = tightness_diagnostics({1.0 / 3.0, 2});
    CHECK(at_threshold.tau == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(at_threshold.regime == TightnessRegime::AlwaysTight);
    CHECK_FALSE(at_threshold.delta_roots.has_value());
    CHECK(tightness_diagnostics({0.6, 2}).regime == TightnessRegime::AlwaysTight);

    CHECK_THROWS_AS(tightness_diagnostics({0.0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(tightness_diagnostics({0.5, 1}), std::invalid_argument);
}

TEST_CASE("crossover roots predict where the bound functions actually cross") {
    // For bound values p0 + x the tightened bound dominates outside
    // (delta-, delta+) and is dominated inside. Probe both sides by mapping a
    // target offset x back to the strength that produces it.
    const double p0 = 0.05;
    const int ymax = 2;
    const double h_y = 1.0;
    const TightnessDiagnostics diag = tightness_diagnostics({p0, ymax});
    REQUIRE(diag.delta_roots.has_value());
    const double lo = diag.delta_roots->first;
    const auto strength_for_offset = [&](double x) {
        return h_y - u_func(p0, ymax) - u_prime(p0, ymax) * x + 2.0 * x * x;
    };
    for (double x : {lo - 0.08, lo + 0.08}) {
        const double e = strength_for_offset(x);
        const BoundResult r = bound_tight(e, h_y, {p0, ymax});
        REQUIRE(r.defined);
        CHECK(r.value == doctest::Approx(p0 + x).epsilon(1e-9));
        const double loose = bound_loose(e, h_y, ymax);
        if (x < lo) {
            CHECK(r.value >= loose - 1e-12);
        } else {
            CHECK(r.value < loose);
        }
    }
}

TEST_CASE("reduction formulas") {
    CHECK(error_rate_reduction(10.0, 9.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(error_rate_reduction(10.0, 10.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(error_rate_reduction(15.5, 14.0) ==
          doctest::Approx(9.67741935483871).epsilon(1e-12));
    CHECK_THROWS_AS(error_rate_reduction(0.0, 1.0), std::invalid_argument);

    CHECK(lower_bound_reduction(-2.0, -4.0) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(lower_bound_reduction(2.8, 2.8) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lower_bound_reduction(2.8, 2.52) == doctest::Approx(10.0).epsilon(1e-9));
    CHECK_THROWS_AS(lower_bound_reduction(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("pearson correlation") {
    CHECK(pearson({1, 2, 3, 4}, {2, 4, 6, 8}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson({1, 2, 3, 4}, {8, 6, 4, 2}) ==
          doctest::Approx(-1.0).epsilon(1e-12));

    const std::vector<double> xs = {0.3, -1.2, 2.5, 0.9, -0.4};
    const std::vector<double> ys = {1.1, 0.2, 2.0, -0.5, 0.7};
    // covariance-formula oracle: (E[xy] - E[x]E[y]) / (sd(x) sd(y))
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
        syy += ys[i] * ys[i];
    }
    const double num = sxy / n - (sx / n) * (sy / n);
    const double den = std::sqrt(sxx / n - (sx / n) * (sx / n)) *
                       std::sqrt(syy / n - (sy / n) * (sy / n));
    CHECK(pearson(xs, ys) == doctest::Approx(num / den).epsilon(1e-12));

    CHECK_THROWS_AS(pearson({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(pearson({1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), std::invalid_argument);
}
