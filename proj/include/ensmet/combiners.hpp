#pragma once

#include <cstdint>
#include <vector>

#include "ensmet/prediction_table.hpp"

namespace ensmet {

// Per instance, the label with the highest vote count among the model
// predictions; ties broken towards the smallest label value.
std::vector<Label> majority_vote(const PredictionTable& table);

// Votes weighted per model (non-negative, not all zero); same tie rule.
std::vector<Label> weighted_vote(const PredictionTable& table,
                                 const std::vector<double>& weights);

// Deterministic balanced assignment of instances to folds: fold sizes differ
// by at most one, shuffle is a seeded Fisher-Yates over the rng streams.
struct FoldPlan {
    std::vector<int> assignments;  // instance index -> fold id
    int n_folds = 0;
    std::uint64_t seed = 0;
};

FoldPlan make_fold_plan(int instances, int folds, std::uint64_t seed);

enum class FeatureEncoding {
    RawBinary,  // one feature per model, the predicted label as 0/1
    OneHot      // ymax indicator features per model
};

// One-vs-rest logistic regression: per class c, logit l_c = w0_c + w_c . x,
// probability sigmoid(l_c), prediction argmax_c with ties towards the
// smallest class.
struct MetaEstimator {
    std::vector<double> intercepts;            // per class
    std::vector<std::vector<double>> weights;  // per class x per feature
    FeatureEncoding encoding = FeatureEncoding::RawBinary;
    double c_reg = 1.0;
    bool degenerate = false;  // single-class training data, constant predictor
};

// Minimizes, per class, the one-vs-rest logistic loss plus an L2 penalty of
// strength 1/c_reg on the non-intercept weights, by full-batch gradient
// descent with backtracking line search from zero-initialized weights, until
// the gradient norm falls below 1e-6 or 1000 iterations. Deterministic.
MetaEstimator train_logreg(const std::vector<std::vector<double>>& features,
                           const std::vector<Label>& labels, int ymax,
                           double c_reg, FeatureEncoding encoding);

Label predict_logreg(const MetaEstimator& est, const std::vector<double>& features);

struct StackingConfig {
    int meta_folds = 4;
    int inner_folds = 5;
    std::vector<double> c_grid = {1e-2, 3e-2, 1e-1, 3e-1, 1e0};
    std::uint64_t seed = 0;
};

// Leak-free stacked combination: the table's model predictions are the
// meta-features; each outer fold is predicted by an estimator whose
// regularization was grid-searched by inner cross-validation on, and which
// was trained on, the remaining folds only. RawBinary features for binary
// tables, OneHot otherwise.
std::vector<Label> stacking_combine(const PredictionTable& table,
                                    const StackingConfig& cfg);

// Per-group sum of absolute class-1 weights. Binary RawBinary estimators
// only; groups maps each model/feature index to a group id.
std::vector<double> group_weight(const MetaEstimator& est,
                                 const std::vector<int>& groups);

// Combination methods as data, so fixtures and the CLI can name them.
struct CombinerSpec {
    enum class Kind { Vote, WeightedVote, Stacking };

    Kind kind = Kind::Vote;
    std::vector<double> weights;  // WeightedVote
    StackingConfig stacking;      // Stacking

    static CombinerSpec vote() { return {Kind::Vote, {}, {}}; }
    static CombinerSpec weighted(std::vector<double> w) {
        return {Kind::WeightedVote, std::move(w), {}};
    }
    static CombinerSpec stacked(StackingConfig cfg) {
        return {Kind::Stacking, {}, std::move(cfg)};
    }
};

std::vector<Label> apply_combiner(const PredictionTable& table,
                                  const CombinerSpec& spec);

}  // namespace ensmet
