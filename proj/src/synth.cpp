#include "ensmet/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ensmet/rng.hpp"

namespace ensmet {

namespace {

// rng stream channels of synth_system
constexpr std::uint64_t kTruthDraw = 0;
constexpr std::uint64_t kSharedIndicator = 1;
constexpr std::uint64_t kSharedBudget = 2;
constexpr std::uint64_t kSharedWrongLabel = 3;
constexpr std::uint64_t kModelBudget = 4;
constexpr std::uint64_t kModelWrongLabel = 5;

void check_probability_vector(const std::vector<double>& probs, const char* what) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(std::string(what) + " entries must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + " must sum to 1");
}

Label draw_from_prior(const std::vector<double>& prior, double u) {
    double cumulative = 0.0;
    for (std::size_t c = 0; c < prior.size(); ++c) {
        cumulative += prior[c];
        if (u < cumulative) return static_cast<Label>(c);
    }
    return static_cast<Label>(prior.size() - 1);
}

// raw_draw is uniform over [0, ymax-1); skipping the truth value makes the
// result uniform over the wrong labels.
Label wrong_label(Label truth, std::uint64_t raw_draw) {
    const Label w = static_cast<Label>(raw_draw);
    return w >= truth ? w + 1 : w;
}

// One toy row: five predictions plus the truth.
struct ToyRow {
    std::array<Label, 5> o;
    Label y;
};

PredictionTable build_toy(const std::vector<ToyRow>& explicit_rows,
                          const std::vector<ToyRow>& filler_patterns,
                          int repetitions) {
    std::vector<ToyRow> rows = explicit_rows;
    for (const ToyRow& pattern : filler_patterns) {
        for (int r = 0; r < repetitions; ++r) rows.push_back(pattern);
    }
    std::vector<std::vector<Label>> models(5, std::vector<Label>(rows.size()));
    std::vector<Label> truth(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        for (int i = 0; i < 5; ++i) models[i][j] = rows[j].o[i];
        truth[j] = rows[j].y;
    }
    return PredictionTable(std::move(models), std::move(truth), std::nullopt, 2);
}

}  // namespace

PredictionTable synth_system(const SynthConfig& cfg) {
    if (cfg.n_models < 1) throw std::invalid_argument("needs at least one model");
    if (cfg.n_instances < 1) throw std::invalid_argument("needs at least one instance");
    if (cfg.ymax < 2) throw std::invalid_argument("needs at least two classes");
    if (static_cast<int>(cfg.per_model_error.size()) != cfg.n_models)
        throw std::invalid_argument("one error rate per model required");
    for (double e : cfg.per_model_error) {
        if (!(e >= 0.0 && e < 1.0))
            throw std::invalid_argument("per-model error rates must lie in [0, 1)");
    }
    if (!(cfg.shared_noise >= 0.0 && cfg.shared_noise <= 1.0))
        throw std::invalid_argument("shared_noise must lie in [0, 1]");
    if (static_cast<int>(cfg.truth_prior.size()) != cfg.ymax)
        throw std::invalid_argument("one prior probability per class required");
    check_probability_vector(cfg.truth_prior, "truth_prior");

    std::vector<std::vector<Label>> models(
        cfg.n_models, std::vector<Label>(cfg.n_instances));
    std::vector<Label> truth(cfg.n_instances);

    for (int j = 0; j < cfg.n_instances; ++j) {
        const std::uint64_t inst = static_cast<std::uint64_t>(j);
        const Label y =
            draw_from_prior(cfg.truth_prior, stream_unit(cfg.seed, inst, kTruthDraw));
        truth[j] = y;

        const bool shared =
            stream_unit(cfg.seed, inst, kSharedIndicator) < cfg.shared_noise;
        const double shared_budget = stream_unit(cfg.seed, inst, kSharedBudget);
        const Label shared_wrong = wrong_label(
            y, stream_below(static_cast<std::uint64_t>(cfg.ymax) - 1, cfg.seed,
                            inst, kSharedWrongLabel));

        for (int i = 0; i < cfg.n_models; ++i) {
            const std::uint64_t model = static_cast<std::uint64_t>(i);
            bool corrupted;
            Label prediction = y;
            if (shared) {
                corrupted = shared_budget < cfg.per_model_error[i];
                if (corrupted) prediction = shared_wrong;
            } else {
                corrupted = stream_unit(cfg.seed, inst, kModelBudget, model) <
                            cfg.per_model_error[i];
                if (corrupted) {
                    prediction = wrong_label(
                        y, stream_below(static_cast<std::uint64_t>(cfg.ymax) - 1,
                                        cfg.seed, inst, kModelWrongLabel, model));
                }
            }
            models[i][j] = prediction;
        }
    }
    return PredictionTable(std::move(models), std::move(truth), std::nullopt,
                           cfg.ymax);
}

ToyFixture toy_table(ToyVariant variant, int repetitions) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be positive");

    switch (variant) {
        case ToyVariant::A: {
            // perfectly correlated models, one collective mistake
            const std::vector<ToyRow> rows = {
                {{1, 1, 1, 1, 1}, 1}, {{1, 1, 1, 1, 1}, 1}, {{1, 1, 1, 1, 1}, 1},
                {{0, 0, 0, 0, 0}, 0}, {{1, 1, 1, 1, 1}, 0}, {{0, 0, 0, 0, 0}, 0},
            };
            const std::vector<ToyRow> filler = {
                {{1, 1, 1, 1, 1}, 1}, {{0, 0, 0, 0, 0}, 0}};
            return {build_toy(rows, filler, repetitions), CombinerSpec::vote(),
                    std::nullopt};
        }
        case ToyVariant::B:
        case ToyVariant::C: {
            // varied accuracies, the first model is perfect; voting misses the
            // 01101 row that weighting towards the first model recovers
            const std::vector<ToyRow> rows = {
                {{1, 1, 1, 0, 0}, 1}, {{1, 1, 1, 1, 1}, 1}, {{1, 0, 0, 1, 1}, 1},
                {{0, 1, 1, 0, 1}, 0}, {{0, 0, 0, 0, 0}, 0}, {{0, 0, 0, 1, 1}, 0},
            };
            const std::vector<ToyRow> filler = {
                {{1, 1, 1, 0, 0}, 1}, {{1, 1, 1, 1, 1}, 1}, {{1, 0, 0, 1, 1}, 1},
                {{0, 0, 0, 0, 0}, 0}, {{0, 0, 0, 1, 1}, 0}};
            PredictionTable table = build_toy(rows, filler, repetitions);
            if (variant == ToyVariant::B)
                return {std::move(table), CombinerSpec::vote(), std::nullopt};
            return {std::move(table),
                    CombinerSpec::weighted({1.0, 0.0, 0.0, 0.0, 0.0}),
                    std::nullopt};
        }
        case ToyVariant::D: {
            // diverse models of equal accuracy; focusing on a model subset
            // cannot beat plain voting
            const std::vector<ToyRow> rows = {
                {{1, 1, 1, 0, 0}, 1}, {{1, 1, 1, 1, 1}, 1}, {{0, 0, 0, 1, 1}, 1},
                {{1, 1, 1, 0, 0}, 0}, {{0, 0, 0, 0, 0}, 0}, {{0, 0, 0, 1, 1}, 0},
            };
            // only the unanimous rows keep the five accuracies equal
            const std::vector<ToyRow> filler = {
                {{1, 1, 1, 1, 1}, 1}, {{0, 0, 0, 0, 0}, 0}};
            return {build_toy(rows, filler, repetitions), CombinerSpec::vote(),
                    CombinerSpec::weighted({0.0, 0.0, 1.0, 1.0, 1.0})};
        }
    }
    throw std::invalid_argument("unknown toy variant");
}

std::vector<SweepPoint> scaling_sweep(const SynthConfig& cfg,
                                      const std::vector<int>& n_values,
                                      const CombinerSpec& combiner,
                                      const MtiConfig& mti,
                                      std::optional<double> p0) {
    if (n_values.empty()) throw std::invalid_argument("empty sweep");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1 || n_values[i] > cfg.n_models)
            throw std::invalid_argument("sweep model count out of range");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("sweep model counts must be ascending");
    }

    const PredictionTable full = synth_system(cfg);
    std::vector<PredictionTable> combined_tables;
    combined_tables.reserve(n_values.size());
    for (int n : n_values) {
        PredictionTable t = full.prefix(n);
        std::vector<Label> yhat = apply_combiner(t, combiner);
        combined_tables.push_back(t.with_combined(std::move(yhat)));
    }

    const double p0_eff = p0.value_or(combined_tables.front().error_rate());
    std::vector<SweepPoint> series;
    series.reserve(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        AnalyzeOptions options;
        options.mti = mti;
        options.bound = {p0_eff, cfg.ymax};
        SweepPoint point;
        point.n_models = n_values[i];
        point.report = analyze(combined_tables[i], options);
        point.error_rate = combined_tables[i].error_rate();
        series.push_back(std::move(point));
    }
    return series;
}

}  // namespace ensmet
