#include "ensmet/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ensmet {

namespace {

void check_config(const BoundConfig& cfg) {
    if (!(cfg.p0 > 0.0 && cfg.p0 < 1.0))
        throw std::invalid_argument("p0 must lie strictly inside (0, 1)");
    if (cfg.ymax < 2) throw std::invalid_argument("ymax must be at least 2");
}

}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binary_entropy expects p in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double u_func(double p, int ymax) {
    if (ymax < 2) throw std::invalid_argument("ymax must be at least 2");
    return binary_entropy(p) + p * std::log2(static_cast<double>(ymax - 1));
}

double u_prime(double p, int ymax) {
    if (ymax < 2) throw std::invalid_argument("ymax must be at least 2");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("u_prime diverges at p in {0, 1}");
    return std::log2((1.0 - p) / p) + std::log2(static_cast<double>(ymax - 1));
}

double bound_loose(double info, double h_y, int ymax) {
    if (ymax < 2) throw std::invalid_argument("ymax must be at least 2");
    return (h_y - info - 1.0) / std::log2(static_cast<double>(ymax));
}

BoundResult bound_tight(double strength, double h_y, const BoundConfig& cfg) {
    check_config(cfg);
    const double b = u_prime(cfg.p0, cfg.ymax);
    const double c = h_y - strength - u_func(cfg.p0, cfg.ymax);
    const double discriminant = b * b - 8.0 * c;
    if (discriminant < 0.0)
        return {0.0, false, BoundDiagnostic::NegativeDiscriminant};
    const double smaller_root = (b - std::sqrt(discriminant)) / 4.0;
    const BoundDiagnostic diag =
        b == 0.0 ? BoundDiagnostic::ZeroSlopeHandled : BoundDiagnostic::Ok;
    return {cfg.p0 + smaller_root, true, diag};
}

TightnessDiagnostics tightness_diagnostics(const BoundConfig& cfg) {
    check_config(cfg);
    const double y = static_cast<double>(cfg.ymax);
    const double log_ratio = std::log2(y / (y - 1.0));
    const double tau = 0.25 * (std::log2((1.0 - cfg.p0) / cfg.p0) - log_ratio);
    // Crossover of the two bound functions, as a quadratic in the offset of
    // the bound value from p0: 2x^2 - 4 tau x + C with
    // C = 1 - H2(p0) + p0 log2(ymax/(ymax-1)).
    const double c = 1.0 - binary_entropy(cfg.p0) + cfg.p0 * log_ratio;

    TightnessDiagnostics out;
    out.tau = tau;
    const double radicand = tau * tau - 0.5 * c;
    if (radicand < 0.0) {
        out.regime = TightnessRegime::AlwaysTight;
        return out;
    }
    const double root = std::sqrt(radicand);
    out.delta_roots = std::make_pair(tau - root, tau + root);
    const double threshold = (y - 1.0) / (2.0 * y - 1.0);
    out.regime = cfg.p0 <= threshold ? TightnessRegime::MildP0
                                     : TightnessRegime::LargeP0;
    return out;
}

double error_rate_reduction(double er_baseline, double er_system) {
    if (!(er_baseline > 0.0))
        throw std::invalid_argument("baseline error rate must be positive");
    return (er_baseline - er_system) / er_baseline * 100.0;
}

double lower_bound_reduction(double lb_baseline, double lb_system) {
    if (lb_baseline == 0.0)
        throw std::invalid_argument("baseline lower bound must be nonzero");
    return (lb_baseline - lb_system) / std::abs(lb_baseline) * 100.0;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("series lengths differ");
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("needs at least two points");
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("degenerate variance");
    return sxy / std::sqrt(sxx * syy);
}

std::string to_string(BoundDiagnostic d) {
    switch (d) {
        case BoundDiagnostic::Ok: return "ok";
        case BoundDiagnostic::NegativeDiscriminant: return "negative_discriminant";
        case BoundDiagnostic::ZeroSlopeHandled: return "zero_slope_handled";
    }
    return "unknown";
}

std::string to_string(TightnessRegime r) {
    switch (r) {
        case TightnessRegime::MildP0: return "mild_p0";
        case TightnessRegime::LargeP0: return "large_p0";
        case TightnessRegime::AlwaysTight: return "always_tight";
    }
    return "unknown";
}

}  // namespace ensmet
