#include "ensmet/combiners.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ensmet/rng.hpp"

namespace ensmet {

namespace {

Label argmax_label(const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c) {
        if (scores[c] > scores[best]) best = c;  // ties keep the smaller label
    }
    return static_cast<Label>(best);
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// Identical feature rows collapsed with total and per-class counts; the
// ordered map fixes the summation order.
struct CompressedRows {
    std::vector<std::vector<double>> rows;
    std::vector<double> total;                   // row multiplicity
    std::vector<std::vector<double>> per_class;  // [row][class]
};

CompressedRows compress(const std::vector<std::vector<double>>& features,
                        const std::vector<Label>& labels, int ymax) {
    std::map<std::vector<double>, std::size_t> index;
    CompressedRows out;
    for (std::size_t i = 0; i < features.size(); ++i) {
        auto [it, inserted] = index.emplace(features[i], out.rows.size());
        if (inserted) {
            out.rows.push_back(features[i]);
            out.total.push_back(0.0);
            out.per_class.emplace_back(ymax, 0.0);
        }
        out.total[it->second] += 1.0;
        out.per_class[it->second][labels[i]] += 1.0;
    }
    return out;
}

struct ClassFit {
    std::vector<double> w;
    double b = 0.0;
};

// One-vs-rest fit for a single class on compressed rows. The row logits are
// kept incrementally: a gradient step shifts every logit by
// -step * (grad . x), so candidate objectives during the line search cost one
// pass over the rows instead of a matrix product.
ClassFit fit_class(const CompressedRows& data, int cls, double c_reg) {
    const std::size_t dim = data.rows[0].size();
    const std::size_t n_rows = data.rows.size();
    const double reg = 1.0 / c_reg;

    // flat row-major copy of the feature rows
    std::vector<double> x(n_rows * dim);
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t d = 0; d < dim; ++d) x[r * dim + d] = data.rows[r][d];

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::vector<double> z(n_rows, 0.0);        // logits at (w, b)
    std::vector<double> dz(n_rows);            // per-row grad . x + grad_b
    std::vector<double> grad_w(dim);
    std::vector<double> z_next(n_rows);

    const auto objective_at = [&](const std::vector<double>& zv,
                                  const std::vector<double>& wv) {
        double obj = 0.0;
        for (std::size_t r = 0; r < n_rows; ++r)
            obj += data.total[r] * softplus(zv[r]) - data.per_class[r][cls] * zv[r];
        double w_sq = 0.0;
        for (double v : wv) w_sq += v * v;
        return obj + 0.5 * reg * w_sq;
    };

    double step = 1.0;
    std::vector<double> w_next(dim);
    for (int iter = 0; iter < 1000; ++iter) {
        std::fill(grad_w.begin(), grad_w.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t r = 0; r < n_rows; ++r) {
            const double residual =
                data.total[r] * sigmoid(z[r]) - data.per_class[r][cls];
            const double* row = &x[r * dim];
            for (std::size_t d = 0; d < dim; ++d) grad_w[d] += residual * row[d];
            grad_b += residual;
        }
        for (std::size_t d = 0; d < dim; ++d) grad_w[d] += reg * w[d];

        double grad_sq = grad_b * grad_b;
        for (double g : grad_w) grad_sq += g * g;
        if (std::sqrt(grad_sq) <= 1e-6) break;

        for (std::size_t r = 0; r < n_rows; ++r) {
            const double* row = &x[r * dim];
            double dot = grad_b;
            for (std::size_t d = 0; d < dim; ++d) dot += grad_w[d] * row[d];
            dz[r] = dot;
        }

        const double current = objective_at(z, w);
        step = std::min(step * 2.0, 1.0e6);  // warm-started backtracking
        bool moved = false;
        for (int probe = 0; probe < 60; ++probe) {
            for (std::size_t r = 0; r < n_rows; ++r) z_next[r] = z[r] - step * dz[r];
            for (std::size_t d = 0; d < dim; ++d)
                w_next[d] = w[d] - step * grad_w[d];
            if (objective_at(z_next, w_next) <= current - 1e-4 * step * grad_sq) {
                z.swap(z_next);
                w.swap(w_next);
                b -= step * grad_b;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // step underflow, nothing left to gain
    }
    return {std::move(w), b};
}

std::vector<std::vector<double>> encode_features(const PredictionTable& table,
                                                 FeatureEncoding encoding) {
    const int n = table.models();
    const int m = table.instances();
    std::vector<std::vector<double>> features(m);
    for (int j = 0; j < m; ++j) {
        auto& row = features[j];
        if (encoding == FeatureEncoding::RawBinary) {
            row.resize(n);
            for (int i = 0; i < n; ++i)
                row[i] = static_cast<double>(table.model_row(i)[j]);
        } else {
            row.assign(static_cast<std::size_t>(n) * table.classes(), 0.0);
            for (int i = 0; i < n; ++i)
                row[static_cast<std::size_t>(i) * table.classes() +
                    table.model_row(i)[j]] = 1.0;
        }
    }
    return features;
}

}  // namespace

std::vector<Label> majority_vote(const PredictionTable& table) {
    std::vector<double> ones(table.models(), 1.0);
    return weighted_vote(table, ones);
}

std::vector<Label> weighted_vote(const PredictionTable& table,
                                 const std::vector<double>& weights) {
    if (static_cast<int>(weights.size()) != table.models())
        throw std::invalid_argument("one weight per model required");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("weights must be non-negative");
        sum += w;
    }
    if (sum == 0.0) throw std::invalid_argument("weights must not all be zero");

    std::vector<Label> combined(table.instances());
    std::vector<double> scores(table.classes());
    for (int j = 0; j < table.instances(); ++j) {
        std::fill(scores.begin(), scores.end(), 0.0);
        for (int i = 0; i < table.models(); ++i)
            scores[table.model_row(i)[j]] += weights[i];
        combined[j] = argmax_label(scores);
    }
    return combined;
}

FoldPlan make_fold_plan(int instances, int folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("needs at least two folds");
    if (instances < folds)
        throw std::invalid_argument("fewer instances than folds");
    std::vector<int> order(instances);
    std::iota(order.begin(), order.end(), 0);
    for (int i = instances - 1; i > 0; --i) {
        const int j = static_cast<int>(
            stream_below(static_cast<std::uint64_t>(i) + 1, seed,
                         static_cast<std::uint64_t>(i)));
        std::swap(order[i], order[j]);
    }
    FoldPlan plan;
    plan.n_folds = folds;
    plan.seed = seed;
    plan.assignments.resize(instances);
    for (int pos = 0; pos < instances; ++pos)
        plan.assignments[order[pos]] = pos % folds;
    return plan;
}

MetaEstimator train_logreg(const std::vector<std::vector<double>>& features,
                           const std::vector<Label>& labels, int ymax,
                           double c_reg, FeatureEncoding encoding) {
    if (features.empty()) throw std::invalid_argument("empty feature matrix");
    if (features.size() != labels.size())
        throw std::invalid_argument("feature rows and labels differ in length");
    if (ymax < 2) throw std::invalid_argument("ymax must be at least 2");
    if (!(c_reg > 0.0)) throw std::invalid_argument("c_reg must be positive");
    const std::size_t dim = features[0].size();
    for (const auto& row : features) {
        if (row.size() != dim)
            throw std::invalid_argument("ragged feature matrix");
    }
    for (Label y : labels) {
        if (y >= static_cast<Label>(ymax))
            throw std::invalid_argument("label out of range");
    }

    MetaEstimator est;
    est.encoding = encoding;
    est.c_reg = c_reg;
    est.degenerate =
        std::all_of(labels.begin(), labels.end(),
                    [&](Label y) { return y == labels.front(); });

    const CompressedRows data = compress(features, labels, ymax);
    est.intercepts.resize(ymax);
    est.weights.resize(ymax);
    // per-class problems are independent; fitting them concurrently cannot
    // change any result
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < ymax; ++c) {
        ClassFit fit = fit_class(data, c, c_reg);
        est.weights[c] = std::move(fit.w);
        est.intercepts[c] = fit.b;
    }
    return est;
}

Label predict_logreg(const MetaEstimator& est, const std::vector<double>& features) {
    if (est.weights.empty()) throw std::invalid_argument("untrained estimator");
    if (features.size() != est.weights[0].size())
        throw std::invalid_argument("feature dimension mismatch");
    std::vector<double> scores(est.weights.size());
    for (std::size_t c = 0; c < est.weights.size(); ++c) {
        double z = est.intercepts[c];
        for (std::size_t d = 0; d < features.size(); ++d)
            z += est.weights[c][d] * features[d];
        scores[c] = sigmoid(z);
    }
    return argmax_label(scores);
}

std::vector<Label> stacking_combine(const PredictionTable& table,
                                    const StackingConfig& cfg) {
    const int m = table.instances();
    if (cfg.meta_folds < 2) throw std::invalid_argument("needs at least two meta folds");
    if (m < cfg.meta_folds * 2)
        throw std::invalid_argument("too few instances for the fold protocol");
    if (cfg.c_grid.empty()) throw std::invalid_argument("empty regularization grid");

    const FeatureEncoding encoding = table.classes() == 2
                                         ? FeatureEncoding::RawBinary
                                         : FeatureEncoding::OneHot;
    const std::vector<std::vector<double>> features = encode_features(table, encoding);
    const std::span<const Label> truth = table.truth_row();

    const FoldPlan outer = make_fold_plan(m, cfg.meta_folds, cfg.seed);
    std::vector<Label> combined(m);

    for (int fold = 0; fold < cfg.meta_folds; ++fold) {
        std::vector<int> train_idx;
        std::vector<int> test_idx;
        for (int j = 0; j < m; ++j)
            (outer.assignments[j] == fold ? test_idx : train_idx).push_back(j);

        std::vector<std::vector<double>> train_x;
        std::vector<Label> train_y;
        train_x.reserve(train_idx.size());
        train_y.reserve(train_idx.size());
        for (int j : train_idx) {
            train_x.push_back(features[j]);
            train_y.push_back(truth[j]);
        }

        double best_c = cfg.c_grid.front();
        if (cfg.c_grid.size() > 1) {
            const int inner_folds =
                std::min<int>(cfg.inner_folds, static_cast<int>(train_idx.size()));
            if (inner_folds < 2)
                throw std::invalid_argument("too few instances for inner folds");
            // inner split seed derived from (outer seed, fold)
            const FoldPlan inner = make_fold_plan(
                static_cast<int>(train_idx.size()), inner_folds,
                stream_u64(cfg.seed, 0x17171717ULL, static_cast<std::uint64_t>(fold)));
            long best_correct = -1;
            for (const double c : cfg.c_grid) {
                long correct = 0;
                for (int g = 0; g < inner_folds; ++g) {
                    std::vector<std::vector<double>> inner_x;
                    std::vector<Label> inner_y;
                    for (std::size_t t = 0; t < train_idx.size(); ++t) {
                        if (inner.assignments[t] != g) {
                            inner_x.push_back(train_x[t]);
                            inner_y.push_back(train_y[t]);
                        }
                    }
                    const MetaEstimator est =
                        train_logreg(inner_x, inner_y, table.classes(), c, encoding);
                    for (std::size_t t = 0; t < train_idx.size(); ++t) {
                        if (inner.assignments[t] == g &&
                            predict_logreg(est, train_x[t]) == train_y[t])
                            ++correct;
                    }
                }
                if (correct > best_correct) {  // ties keep the earlier grid value
                    best_correct = correct;
                    best_c = c;
                }
            }
        }

        const MetaEstimator est =
            train_logreg(train_x, train_y, table.classes(), best_c, encoding);
        for (int j : test_idx) combined[j] = predict_logreg(est, features[j]);
    }
    return combined;
}

std::vector<double> group_weight(const MetaEstimator& est,
                                 const std::vector<int>& groups) {
    if (est.encoding != FeatureEncoding::RawBinary)
        throw std::invalid_argument("group weights need raw binary features");
    if (est.weights.size() != 2)
        throw std::invalid_argument("group weights are defined for binary tasks");
    if (groups.size() != est.weights[1].size())
        throw std::invalid_argument("one group id per model required");

    int n_groups = 0;
    for (int g : groups) {
        if (g < 0) throw std::invalid_argument("group ids must be non-negative");
        n_groups = std::max(n_groups, g + 1);
    }
    std::vector<double> sums(n_groups, 0.0);
    for (std::size_t i = 0; i < groups.size(); ++i)
        sums[groups[i]] += std::abs(est.weights[1][i]);
    return sums;
}

std::vector<Label> apply_combiner(const PredictionTable& table,
                                  const CombinerSpec& spec) {
    switch (spec.kind) {
        case CombinerSpec::Kind::Vote:
            return majority_vote(table);
        case CombinerSpec::Kind::WeightedVote:
            return weighted_vote(table, spec.weights);
        case CombinerSpec::Kind::Stacking:
            return stacking_combine(table, spec.stacking);
    }
    throw std::invalid_argument("unknown combiner");
}

}  // namespace ensmet
