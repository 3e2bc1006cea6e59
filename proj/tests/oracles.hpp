#pragma once

// Test-only oracles. Everything here recounts raw label columns with its own
// tallying code and never routes through the library's distribution or
// measure implementations, so the assertions below compare two independent
// computations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ensmet/prediction_table.hpp"
#include "ensmet/rng.hpp"

namespace oracle {

using Columns = std::vector<std::vector<int>>;

inline Columns columns_of(const ensmet::PredictionTable& table,
                          const std::vector<ensmet::Var>& vars) {
    Columns cols(vars.size(), std::vector<int>(table.instances()));
    for (std::size_t v = 0; v < vars.size(); ++v) {
        for (int j = 0; j < table.instances(); ++j)
            cols[v][j] = static_cast<int>(table.value(vars[v], j));
    }
    return cols;
}

inline std::map<std::vector<int>, long> tally(const Columns& cols,
                                              const std::vector<int>& which) {
    std::map<std::vector<int>, long> counts;
    const std::size_t m = cols.at(0).size();
    std::vector<int> key(which.size());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t v = 0; v < which.size(); ++v) key[v] = cols[which[v]][j];
        ++counts[key];
    }
    return counts;
}

inline double entropy_of(const std::map<std::vector<int>, long>& counts, long m) {
    double h = 0.0;
    for (const auto& [key, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(m);
        h -= p * std::log2(p);
    }
    return h;
}

inline double joint_entropy(const Columns& cols, const std::vector<int>& which) {
    return entropy_of(tally(cols, which), static_cast<long>(cols.at(0).size()));
}

// Direct double sum -sum_{s,t} p(s,t) log2 p(t|s).
inline double cond_entropy_double_sum(const Columns& cols,
                                      const std::vector<int>& target,
                                      const std::vector<int>& given) {
    const long m = static_cast<long>(cols.at(0).size());
    std::vector<int> both = given;
    both.insert(both.end(), target.begin(), target.end());
    const auto joint = tally(cols, both);
    const auto giv = tally(cols, given);
    double h = 0.0;
    for (const auto& [key, c_st] : joint) {
        const std::vector<int> s(key.begin(), key.begin() + given.size());
        const double p_st = static_cast<double>(c_st) / static_cast<double>(m);
        const double p_t_given_s =
            static_cast<double>(c_st) / static_cast<double>(giv.at(s));
        h -= p_st * std::log2(p_t_given_s);
    }
    return h;
}

inline double mutual_information_3h(const Columns& cols,
                                    const std::vector<int>& a,
                                    const std::vector<int>& b) {
    std::vector<int> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    return joint_entropy(cols, a) + joint_entropy(cols, b) - joint_entropy(cols, ab);
}

// Chain form sum_{i >= 2} I(S_i ; S_{1..i-1}).
inline double multi_information_chain(const Columns& cols) {
    double total = 0.0;
    std::vector<int> prefix = {0};
    for (std::size_t i = 1; i < cols.size(); ++i) {
        total += mutual_information_3h(cols, {static_cast<int>(i)}, prefix);
        prefix.push_back(static_cast<int>(i));
    }
    return total;
}

// Per-conditioning-value multi-information, averaged: for each value of the
// given columns, the multi-information of the target columns restricted to
// the matching rows (via the entropy-sum route), weighted by the value's
// probability.
inline double cond_multi_information_brute(const Columns& cols,
                                           const std::vector<int>& targets,
                                           const std::vector<int>& givens) {
    const std::size_t m = cols.at(0).size();
    std::map<std::vector<int>, std::vector<std::size_t>> rows_by_value;
    std::vector<int> key(givens.size());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t v = 0; v < givens.size(); ++v) key[v] = cols[givens[v]][j];
        rows_by_value[key].push_back(j);
    }
    double total = 0.0;
    for (const auto& [value, rows] : rows_by_value) {
        Columns sub(targets.size(), std::vector<int>(rows.size()));
        for (std::size_t v = 0; v < targets.size(); ++v) {
            for (std::size_t r = 0; r < rows.size(); ++r)
                sub[v][r] = cols[targets[v]][rows[r]];
        }
        double inner = 0.0;
        std::vector<int> all(targets.size());
        for (std::size_t v = 0; v < targets.size(); ++v) {
            all[v] = static_cast<int>(v);
            inner += joint_entropy(sub, {static_cast<int>(v)});
        }
        inner -= joint_entropy(sub, all);
        total += inner * static_cast<double>(rows.size()) / static_cast<double>(m);
    }
    return total;
}

// Exhaustive subset enumeration for the size-k approximations, recounted
// from raw columns. cols must hold the model columns followed by the truth
// column.
inline void enumerate_subsets(int n, int k, std::vector<int>& current,
                              int start,
                              const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(current.size()) == k) {
        fn(current);
        return;
    }
    for (int v = start; v < n; ++v) {
        current.push_back(v);
        enumerate_subsets(n, k, current, v + 1, fn);
        current.pop_back();
    }
}

inline double mti_multi_exhaustive(const Columns& cols, int n_models, int k) {
    double total = 0.0;
    for (int i = 1; i < n_models; ++i) {
        const int kk = std::min(k, i);
        double best = -1e300;
        std::vector<int> current;
        enumerate_subsets(i, kk, current, 0, [&](const std::vector<int>& subset) {
            best = std::max(best, mutual_information_3h(cols, {i}, subset));
        });
        total += best;
    }
    return total;
}

inline double mti_cond_multi_exhaustive(const Columns& cols, int n_models,
                                        int truth_col, int k) {
    double total = 0.0;
    for (int i = 1; i < n_models; ++i) {
        const int kk = std::min(k, i);
        double best = -1e300;
        std::vector<int> current;
        enumerate_subsets(i, kk, current, 0, [&](const std::vector<int>& subset) {
            // I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C)
            std::vector<int> ac = {i, truth_col};
            std::vector<int> bc = subset;
            bc.push_back(truth_col);
            std::vector<int> abc = {i};
            abc.insert(abc.end(), subset.begin(), subset.end());
            abc.push_back(truth_col);
            const double value = joint_entropy(cols, ac) + joint_entropy(cols, bc) -
                                 joint_entropy(cols, {truth_col}) -
                                 joint_entropy(cols, abc);
            best = std::max(best, value);
        });
        total += best;
    }
    return total;
}

inline double mti_cond_entropy_exhaustive(const Columns& cols, int n_models,
                                          int truth_col, int k) {
    double best = 1e300;
    std::vector<int> current;
    enumerate_subsets(n_models, std::min(k, n_models), current, 0,
                      [&](const std::vector<int>& subset) {
                          best = std::min(best,
                                          cond_entropy_double_sum(
                                              cols, {truth_col}, subset));
                      });
    return best;
}

// Random tables for identity and property checks: the truth is uniform, each
// model copies the truth with its own fidelity and otherwise draws a uniform
// label, so models are mutually dependent through the truth.
inline ensmet::PredictionTable random_table(std::uint64_t seed, int n_models,
                                            int instances, int ymax,
                                            bool with_combined_vote = false) {
    std::vector<ensmet::Label> truth(instances);
    std::vector<std::vector<ensmet::Label>> models(
        n_models, std::vector<ensmet::Label>(instances));
    std::vector<double> fidelity(n_models);
    for (int i = 0; i < n_models; ++i)
        fidelity[i] = 0.2 + 0.7 * ensmet::stream_unit(seed, 900, i);
    for (int j = 0; j < instances; ++j) {
        truth[j] = static_cast<ensmet::Label>(
            ensmet::stream_below(ymax, seed, j, 1));
        for (int i = 0; i < n_models; ++i) {
            if (ensmet::stream_unit(seed, j, 2, i) < fidelity[i]) {
                models[i][j] = truth[j];
            } else {
                models[i][j] = static_cast<ensmet::Label>(
                    ensmet::stream_below(ymax, seed, j, 3, i));
            }
        }
    }
    std::optional<std::vector<ensmet::Label>> combined;
    if (with_combined_vote) {
        std::vector<ensmet::Label> vote(instances);
        std::vector<int> scores(ymax);
        for (int j = 0; j < instances; ++j) {
            std::fill(scores.begin(), scores.end(), 0);
            for (int i = 0; i < n_models; ++i) ++scores[models[i][j]];
            int best = 0;
            for (int c = 1; c < ymax; ++c)
                if (scores[c] > scores[best]) best = c;
            vote[j] = static_cast<ensmet::Label>(best);
        }
        combined = std::move(vote);
    }
    return ensmet::PredictionTable(std::move(models), std::move(truth),
                                   std::move(combined), ymax);
}

}  // namespace oracle
