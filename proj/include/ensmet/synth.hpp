#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ensmet/combiners.hpp"
#include "ensmet/metrics.hpp"
#include "ensmet/prediction_table.hpp"

namespace ensmet {

// Parametric generator of correlated-noise ensembles. Per instance the truth
// is drawn from truth_prior; a shared-corruption event (probability
// shared_noise) draws one error budget and one wrong label applied to every
// model whose per_model_error covers the budget, otherwise each model draws
// its own budget and wrong label independently. Either way each model's
// marginal error rate stays at per_model_error. Fully deterministic from
// seed (see rng.hpp for the stream layout); prefixes of the model set are
// stable, so a wider table extends a narrower one column for column.
struct SynthConfig {
    int n_models = 1;
    int n_instances = 1;
    int ymax = 2;
    std::vector<double> per_model_error;  // one value in [0, 1) per model
    double shared_noise = 0.0;            // in [0, 1]
    std::vector<double> truth_prior;      // one probability per class
    std::uint64_t seed = 0;
};

PredictionTable synth_system(const SynthConfig& cfg);

// The four hand-built five-model binary systems. Each fixture's explicit
// rows appear verbatim; the accompanying correct-prediction patterns are
// repeated `repetitions` times as filler. B and C share the same model
// matrix and differ only in the designated combiner; D carries an alternate
// combiner restricted to the last three models.
enum class ToyVariant { A, B, C, D };

struct ToyFixture {
    PredictionTable table;
    CombinerSpec combiner;
    std::optional<CombinerSpec> alt_combiner;
};

ToyFixture toy_table(ToyVariant variant, int repetitions = 20);

struct SweepPoint {
    int n_models = 0;
    MetricReport report;
    double error_rate = 0.0;
};

// Model-count sweep over prefixes of one generated system: for each n the
// first n model columns are combined and analyzed. n_values must be
// ascending and covered by cfg.n_models. When p0 is not given it defaults to
// the observed error rate of the first (baseline) point.
std::vector<SweepPoint> scaling_sweep(const SynthConfig& cfg,
                                      const std::vector<int>& n_values,
                                      const CombinerSpec& combiner,
                                      const MtiConfig& mti,
                                      std::optional<double> p0 = std::nullopt);

}  // namespace ensmet
