#pragma once

#include <optional>
#include <vector>

#include "ensmet/bounds.hpp"
#include "ensmet/mti.hpp"
#include "ensmet/prediction_table.hpp"

namespace ensmet {

// Sum over models of I(O_i; Y). Always exact; no high-dimensional joint is
// involved.
double relevance(const PredictionTable& table);

// I_multi(O) - I_multi(O | Y), exact or subset-approximated per cfg.
double redundancy(const PredictionTable& table, const MtiConfig& cfg);

// H(Y | combined) - H(Y | O). Requires the combined column. The second term
// is exact or subset-approximated per cfg.
double combination_loss(const PredictionTable& table, const MtiConfig& cfg);

// Spread of subset informativeness: (max - min of I(S; Y) over size-n model
// subsets) / I(O; Y). Undefined (nullopt) when I(O; Y) is zero. Always uses
// exact mutual information.
std::optional<double> concentration(const PredictionTable& table, int n);

struct PerModelMetrics {
    double relev = 0.0;
    double redun = 0.0;
    std::optional<double> combloss;
};

struct NormalizedMetrics {
    double baseline_strength = 0.0;  // the supplied normalization factor
    double i_relev = 0.0;            // each value / baseline_strength * 100
    double i_redun = 0.0;
    std::optional<double> i_combloss;
    double ensemble_information = 0.0;
    std::optional<double> ensemble_strength;
};

struct MetricReport {
    double h_y = 0.0;
    double i_relev = 0.0;
    double i_redun = 0.0;
    std::optional<double> i_combloss;        // absent without a combined column
    double ensemble_information = 0.0;       // i_relev - i_redun
    std::optional<double> ensemble_strength; // information - i_combloss
    PerModelMetrics per_model;               // totals divided by n_models
    int n_models = 0;
    MtiConfig mode;
    std::vector<int> model_order;            // column order used for prefixes
    std::optional<double> error_rate;

    BoundConfig bound_config;
    BoundResult bound_loose_information;     // B(I); always defined
    BoundResult bound_tight_information;     // B^tight(I)
    std::optional<BoundResult> bound_tight_strength;  // B^tight(E)
    TightnessDiagnostics tightness;

    std::optional<NormalizedMetrics> normalized;
};

struct AnalyzeOptions {
    MtiConfig mti;
    BoundConfig bound;
    // When set, the report also carries values normalized by this baseline
    // ensemble strength (value / baseline * 100). Never inferred.
    std::optional<double> baseline_strength;
};

// Full report over one table: the three metrics, information and strength,
// per-model values, all three bound evaluations and the tightness
// diagnostics of the bound configuration.
MetricReport analyze(const PredictionTable& table, const AnalyzeOptions& options);

}  // namespace ensmet
