#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ensmet/metrics.hpp"
#include "ensmet/synth.hpp"

using namespace ensmet;

namespace {

bool same_columns(const PredictionTable& a, const PredictionTable& b) {
    if (a.models() != b.models() || a.instances() != b.instances()) return false;
    for (int i = 0; i < a.models(); ++i) {
        for (int j = 0; j < a.instances(); ++j)
            if (a.model_row(i)[j] != b.model_row(i)[j]) return false;
    }
    for (int j = 0; j < a.instances(); ++j)
        if (a.truth_row()[j] != b.truth_row()[j]) return false;
    return true;
}

double column_error(const PredictionTable& table, int model) {
    int wrong = 0;
    for (int j = 0; j < table.instances(); ++j)
        if (table.model_row(model)[j] != table.truth_row()[j]) ++wrong;
    return static_cast<double>(wrong) / table.instances();
}

SynthConfig base_config() {
    SynthConfig cfg;
    cfg.n_models = 3;
    cfg.n_instances = 5000;
    cfg.ymax = 2;
    cfg.per_model_error = {0.2, 0.2, 0.2};
    cfg.shared_noise = 0.0;
    cfg.truth_prior = {0.5, 0.5};
    cfg.seed = 1;
    return cfg;
}

}  // namespace

TEST_CASE("toy fixtures reproduce the published rows verbatim") {
    const ToyFixture a = toy_table(ToyVariant::A, 1);
    // first three rows all-ones with truth 1, then the collective mistake
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 5; ++i) CHECK(a.table.model_row(i)[j] == 1);
        CHECK(a.table.truth_row()[j] == 1);
    }
    CHECK(a.table.truth_row()[4] == 0);
    for (int i = 0; i < 5; ++i) CHECK(a.table.model_row(i)[4] == 1);

    const ToyFixture b = toy_table(ToyVariant::B, 1);
    const ToyFixture c = toy_table(ToyVariant::C, 1);
    CHECK(same_columns(b.table, c.table));
    // the recoverable row: predictions 0,1,1,0,1 with truth 0
    const std::vector<Label> recoverable = {0, 1, 1, 0, 1};
    for (int i = 0; i < 5; ++i) CHECK(b.table.model_row(i)[3] == recoverable[i]);
    CHECK(b.table.truth_row()[3] == 0);
    // voting errs on it, the weighted combiner recovers it
    CHECK(apply_combiner(b.table, b.combiner)[3] == 1);
    CHECK(apply_combiner(c.table, c.combiner)[3] == 0);

    const ToyFixture d = toy_table(ToyVariant::D, 1);
    REQUIRE(d.alt_combiner.has_value());
    // equal accuracies across all five models
    const double first = column_error(d.table, 0);
    for (int i = 1; i < 5; ++i)
        CHECK(column_error(d.table, i) == doctest::Approx(first).epsilon(1e-15));
}

TEST_CASE("toy fixtures are bit-identical across calls") {
    const ToyFixture once = toy_table(ToyVariant::B, 7);
    const ToyFixture twice = toy_table(ToyVariant::B, 7);
    CHECK(same_columns(once.table, twice.table));
    CHECK_THROWS_AS(toy_table(ToyVariant::A, 0), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the seed") {
    const SynthConfig cfg = base_config();
    CHECK(same_columns(synth_system(cfg), synth_system(cfg)));
    SynthConfig other = cfg;
    other.seed = 2;
    CHECK_FALSE(same_columns(synth_system(cfg), synth_system(other)));
}

TEST_CASE("zero error budgets copy the truth") {
    SynthConfig cfg = base_config();
    cfg.per_model_error = {0.0, 0.0, 0.0};
    cfg.n_instances = 2000;
    const PredictionTable table = synth_system(cfg);
    for (int i = 0; i < 3; ++i) CHECK(column_error(table, i) == 0.0);
    const double h_y = entropy(estimate_joint(table, {Var::truth()}));
    CHECK(relevance(table) == doctest::Approx(3.0 * h_y).epsilon(1e-10));
}

TEST_CASE("full shared noise with equal budgets clones the models") {
    SynthConfig cfg = base_config();
    cfg.shared_noise = 1.0;
    cfg.n_models = 4;
    cfg.per_model_error = {0.3, 0.3, 0.3, 0.3};
    const PredictionTable table = synth_system(cfg);
    for (int i = 1; i < 4; ++i) {
        for (int j = 0; j < table.instances(); ++j)
            CHECK(table.model_row(i)[j] == table.model_row(0)[j]);
    }
    const std::optional<double> conc = concentration(table, 1);
    REQUIRE(conc.has_value());
    CHECK(*conc == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("model prefixes are stable as the model count grows") {
    SynthConfig narrow = base_config();
    SynthConfig wide = base_config();
    wide.n_models = 6;
    wide.per_model_error = {0.2, 0.2, 0.2, 0.2, 0.2, 0.2};
    CHECK(same_columns(synth_system(narrow), synth_system(wide).prefix(3)));
}

TEST_CASE("empirical error rates stay within three binomial sigmas") {
    // independent corruption
    SynthConfig cfg = base_config();
    const PredictionTable indep = synth_system(cfg);
    const double sigma = 3.0 * std::sqrt(0.2 * 0.8 / cfg.n_instances);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(column_error(indep, i) - 0.2) <= sigma);

    // shared corruption must preserve the marginals
    cfg.shared_noise = 0.6;
    cfg.per_model_error = {0.1, 0.25, 0.4};
    const PredictionTable shared = synth_system(cfg);
    for (int i = 0; i < 3; ++i) {
        const double e = cfg.per_model_error[i];
        CHECK(std::abs(column_error(shared, i) - e) <=
              3.0 * std::sqrt(e * (1 - e) / cfg.n_instances));
    }
}

TEST_CASE("truth prior is respected") {
    SynthConfig cfg = base_config();
    cfg.ymax = 3;
    cfg.truth_prior = {0.6, 0.3, 0.1};
    const PredictionTable table = synth_system(cfg);
    std::vector<int> counts(3, 0);
    for (int j = 0; j < table.instances(); ++j) ++counts[table.truth_row()[j]];
    for (int c = 0; c < 3; ++c) {
        const double p = cfg.truth_prior[c];
        CHECK(std::abs(counts[c] / 5000.0 - p) <=
              3.0 * std::sqrt(p * (1 - p) / 5000.0));
    }
}

TEST_CASE("invalid configurations are rejected") {
    SynthConfig cfg = base_config();
    cfg.per_model_error = {0.2, 0.2};
    CHECK_THROWS_AS(synth_system(cfg), std::invalid_argument);
    cfg = base_config();
    cfg.truth_prior = {0.7, 0.7};
    CHECK_THROWS_AS(synth_system(cfg), std::invalid_argument);
    cfg = base_config();
    cfg.per_model_error = {0.2, 1.0, 0.2};
    CHECK_THROWS_AS(synth_system(cfg), std::invalid_argument);
    cfg = base_config();
    cfg.shared_noise = 1.5;
    CHECK_THROWS_AS(synth_system(cfg), std::invalid_argument);
}

TEST_CASE("a single-model sweep point has no redundancy or combination loss") {
    SynthConfig cfg = base_config();
    cfg.n_models = 2;
    cfg.per_model_error = {0.2, 0.2};
    cfg.n_instances = 800;
    const std::vector<SweepPoint> series =
        scaling_sweep(cfg, {1, 2}, CombinerSpec::vote(), MtiConfig::exact());
    REQUIRE(series.size() == 2);
    CHECK(series[0].report.i_redun == 0.0);
    CHECK(*series[0].report.i_combloss == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(series[0].n_models == 1);
    CHECK(series[1].n_models == 2);
}

TEST_CASE("sweeps reject unsorted or uncovered model counts") {
    SynthConfig cfg = base_config();
    CHECK_THROWS_AS(
        scaling_sweep(cfg, {2, 1}, CombinerSpec::vote(), MtiConfig::exact()),
        std::invalid_argument);
    CHECK_THROWS_AS(
        scaling_sweep(cfg, {1, 5}, CombinerSpec::vote(), MtiConfig::exact()),
        std::invalid_argument);
}

TEST_CASE("correlated-noise sweeps show growing redundancy and combination loss") {
    SynthConfig cfg;
    cfg.n_models = 12;
    cfg.n_instances = 3000;
    cfg.ymax = 2;
    cfg.per_model_error = std::vector<double>(12, 0.3);
    cfg.shared_noise = 0.5;
    cfg.truth_prior = {0.5, 0.5};
    cfg.seed = 11;
    const std::vector<SweepPoint> series = scaling_sweep(
        cfg, {1, 2, 4, 8, 12}, CombinerSpec::vote(), MtiConfig::exact());
    for (std::size_t i = 1; i < series.size(); ++i) {
        CHECK(series[i].report.per_model.redun >=
              series[i - 1].report.per_model.redun - 1e-9);
        CHECK(*series[i].report.i_combloss >=
              *series[i - 1].report.i_combloss - 1e-9);
        // redundancy approaches relevance from below
        CHECK(series[i].report.per_model.redun <=
              series[i].report.per_model.relev + 1e-9);
    }
}
