#include "ensmet/metrics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ensmet/subset_scan.hpp"

namespace ensmet {

namespace {

std::vector<Var> model_vars(const PredictionTable& table, bool with_truth) {
    std::vector<Var> vars;
    vars.reserve(table.models() + 1);
    for (int i = 0; i < table.models(); ++i) vars.push_back(Var::model(i));
    if (with_truth) vars.push_back(Var::truth());
    return vars;
}

// H(Y | O) from the full joint.
double exact_conditional_entropy_truth(const PredictionTable& table) {
    const EmpiricalDistribution joint = estimate_joint(table, model_vars(table, true));
    std::vector<int> given(table.models());
    std::iota(given.begin(), given.end(), 0);
    return conditional_entropy(joint, {table.models()}, given);
}

double truth_entropy(const PredictionTable& table) {
    return entropy(estimate_joint(table, {Var::truth()}));
}

}  // namespace

double relevance(const PredictionTable& table) {
    double total = 0.0;
    for (int i = 0; i < table.models(); ++i) {
        const EmpiricalDistribution joint =
            estimate_joint(table, {Var::model(i), Var::truth()});
        total += mutual_information(joint, {0}, {1});
    }
    return total;
}

double redundancy(const PredictionTable& table, const MtiConfig& cfg) {
    if (table.models() == 1) return 0.0;
    if (cfg.mode == MtiConfig::Mode::Mti) {
        MtiEvaluator eval(table);
        return eval.multi_information(cfg.k) -
               eval.conditional_multi_information(cfg.k);
    }
    const EmpiricalDistribution joint = estimate_joint(table, model_vars(table, true));
    std::vector<int> models(table.models());
    std::iota(models.begin(), models.end(), 0);
    return multi_information(marginal(joint, models)) -
           conditional_multi_information(joint, models, {table.models()});
}

double combination_loss(const PredictionTable& table, const MtiConfig& cfg) {
    if (!table.has_combined())
        throw std::invalid_argument("combination loss needs a combined column");
    const EmpiricalDistribution y_given_yhat =
        estimate_joint(table, {Var::combined(), Var::truth()});
    const double h_y_yhat = conditional_entropy(y_given_yhat, {1}, {0});
    const double h_y_o = cfg.mode == MtiConfig::Mode::Mti
                             ? mti_conditional_entropy_truth(table, cfg.k)
                             : exact_conditional_entropy_truth(table);
    return h_y_yhat - h_y_o;
}

std::optional<double> concentration(const PredictionTable& table, int n) {
    if (n < 1 || n > table.models())
        throw std::invalid_argument("subset size out of range");
    std::vector<Var> vars = model_vars(table, true);
    const EmpiricalDistribution joint = estimate_joint(table, vars);
    std::vector<int> models(table.models());
    std::iota(models.begin(), models.end(), 0);
    const double info_all = mutual_information(joint, models, {table.models()});
    if (std::abs(info_all) <= 1e-12) return std::nullopt;

    const auto subsets = combinations(table.models(), n);
    const std::vector<double> values =
        map_indexed(subsets.size(), [&](std::size_t j) {
            std::vector<Var> sel;
            sel.reserve(subsets[j].size() + 1);
            for (int s : subsets[j]) sel.push_back(Var::model(s));
            sel.push_back(Var::truth());
            const EmpiricalDistribution sub = estimate_joint(table, sel);
            std::vector<int> a(subsets[j].size());
            std::iota(a.begin(), a.end(), 0);
            return mutual_information(sub, a, {static_cast<int>(subsets[j].size())});
        });
    double best = -std::numeric_limits<double>::infinity();
    double worst = std::numeric_limits<double>::infinity();
    for (double v : values) {
        best = std::max(best, v);
        worst = std::min(worst, v);
    }
    return (best - worst) / info_all;
}

MetricReport analyze(const PredictionTable& table, const AnalyzeOptions& options) {
    MetricReport report;
    report.n_models = table.models();
    report.mode = options.mti;
    report.model_order.resize(table.models());
    std::iota(report.model_order.begin(), report.model_order.end(), 0);

    report.h_y = truth_entropy(table);
    report.i_relev = relevance(table);
    report.i_redun = redundancy(table, options.mti);
    report.ensemble_information = report.i_relev - report.i_redun;
    if (table.has_combined()) {
        report.i_combloss = combination_loss(table, options.mti);
        report.ensemble_strength = report.ensemble_information - *report.i_combloss;
        report.error_rate = table.error_rate();
    }

    const double n = static_cast<double>(table.models());
    report.per_model.relev = report.i_relev / n;
    report.per_model.redun = report.i_redun / n;
    if (report.i_combloss) report.per_model.combloss = *report.i_combloss / n;

    report.bound_config = options.bound;
    report.bound_loose_information = {
        bound_loose(report.ensemble_information, report.h_y, options.bound.ymax),
        true, BoundDiagnostic::Ok};
    report.bound_tight_information =
        bound_tight(report.ensemble_information, report.h_y, options.bound);
    if (report.ensemble_strength) {
        report.bound_tight_strength =
            bound_tight(*report.ensemble_strength, report.h_y, options.bound);
    }
    report.tightness = tightness_diagnostics(options.bound);

    if (options.baseline_strength) {
        const double base = *options.baseline_strength;
        if (base == 0.0)
            throw std::invalid_argument("baseline strength must be nonzero");
        NormalizedMetrics norm;
        norm.baseline_strength = base;
        norm.i_relev = report.i_relev / base * 100.0;
        norm.i_redun = report.i_redun / base * 100.0;
        norm.ensemble_information = report.ensemble_information / base * 100.0;
        if (report.i_combloss) norm.i_combloss = *report.i_combloss / base * 100.0;
        if (report.ensemble_strength)
            norm.ensemble_strength = *report.ensemble_strength / base * 100.0;
        report.normalized = norm;
    }
    return report;
}

}  // namespace ensmet
