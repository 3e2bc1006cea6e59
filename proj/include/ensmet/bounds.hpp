#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ensmet {

// Anchor error rate and class count for the tightened bound.
struct BoundConfig {
    double p0 = 0.5;  // in (0, 1)
    int ymax = 2;     // at least 2
};

enum class BoundDiagnostic { Ok, NegativeDiscriminant, ZeroSlopeHandled };

struct BoundResult {
    double value = 0.0;
    bool defined = true;
    BoundDiagnostic diagnostic = BoundDiagnostic::Ok;
};

// H2(p) in bits, with H2(0) = H2(1) = 0. Throws outside [0, 1].
double binary_entropy(double p);

// U(p) = H2(p) + p log2(ymax - 1) and its derivative
// U'(p) = log2((1-p)/p) + log2(ymax - 1). u_prime throws at p in {0, 1}.
double u_func(double p, int ymax);
double u_prime(double p, int ymax);

// (h_y - info - 1) / log2(ymax); raw value, may be negative.
double bound_loose(double info, double h_y, int ymax);

// Tightened error-rate lower bound: the smaller root x of
//   2x^2 - U'(p0) x + (h_y - strength - U(p0)) <= 0
// shifted by p0. A negative discriminant yields defined = false; U'(p0) = 0
// is solved by the same root formula and only tagged ZeroSlopeHandled.
BoundResult bound_tight(double strength, double h_y, const BoundConfig& cfg);

enum class TightnessRegime { MildP0, LargeP0, AlwaysTight };

// Where the tightened bound function dominates the loose one. delta_roots
// are the two roots (in bound-value offset from p0) of the crossover
// quadratic 2x^2 - 4 tau(p0) x + C(p0), unordered between Delta+ / Delta-;
// absent when the quadratic has no real roots, in which case the tightened
// bound dominates everywhere and the regime reports AlwaysTight.
struct TightnessDiagnostics {
    double tau = 0.0;
    std::optional<std::pair<double, double>> delta_roots;
    TightnessRegime regime = TightnessRegime::MildP0;
};

TightnessDiagnostics tightness_diagnostics(const BoundConfig& cfg);

// Percent reductions relative to a baseline system, and the correlation
// between the two series.
double error_rate_reduction(double er_baseline, double er_system);
double lower_bound_reduction(double lb_baseline, double lb_system);
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

std::string to_string(BoundDiagnostic d);
std::string to_string(TightnessRegime r);

}  // namespace ensmet
