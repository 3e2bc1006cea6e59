#include "ensmet/mti.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ensmet/subset_scan.hpp"

namespace ensmet {

namespace {

std::uint64_t mask_of(const std::vector<int>& subset) {
    std::uint64_t mask = 0;
    for (int s : subset) mask |= std::uint64_t{1} << s;
    return mask;
}

// I(O_i ; subset)
double subset_mi(const PredictionTable& table, int i,
                 const std::vector<int>& subset) {
    std::vector<Var> vars;
    vars.reserve(subset.size() + 1);
    vars.push_back(Var::model(i));
    for (int s : subset) vars.push_back(Var::model(s));
    const EmpiricalDistribution joint = estimate_joint(table, vars);
    std::vector<int> rest(subset.size());
    std::iota(rest.begin(), rest.end(), 1);
    return mutual_information(joint, {0}, rest);
}

// I(O_i ; subset | Y) = H(O_i,Y) + H(subset,Y) - H(Y) - H(O_i,subset,Y)
double subset_cmi(const PredictionTable& table, int i,
                  const std::vector<int>& subset) {
    std::vector<Var> vars;
    vars.reserve(subset.size() + 2);
    vars.push_back(Var::model(i));
    for (int s : subset) vars.push_back(Var::model(s));
    vars.push_back(Var::truth());
    const EmpiricalDistribution joint = estimate_joint(table, vars);

    const int y = static_cast<int>(subset.size()) + 1;
    std::vector<int> subset_y(subset.size());
    std::iota(subset_y.begin(), subset_y.end(), 1);
    subset_y.push_back(y);

    return entropy(marginal(joint, {0, y})) + entropy(marginal(joint, subset_y)) -
           entropy(marginal(joint, {y})) - entropy(joint);
}

// H(Y | subset)
double subset_hy(const PredictionTable& table, const std::vector<int>& subset) {
    std::vector<Var> vars;
    vars.reserve(subset.size() + 1);
    for (int s : subset) vars.push_back(Var::model(s));
    vars.push_back(Var::truth());
    const EmpiricalDistribution joint = estimate_joint(table, vars);
    std::vector<int> given(subset.size());
    std::iota(given.begin(), given.end(), 0);
    return conditional_entropy(joint, {static_cast<int>(subset.size())}, given);
}

template <typename Cache, typename Key, typename Eval>
void fill_cache(Cache& cache, const std::vector<std::vector<int>>& subsets,
                const Key& key_of, const Eval& eval) {
    std::vector<std::size_t> missing;
    for (std::size_t j = 0; j < subsets.size(); ++j) {
        if (!cache.count(key_of(subsets[j]))) missing.push_back(j);
    }
    if (missing.empty()) return;
    const std::vector<double> values = map_indexed(
        missing.size(),
        [&](std::size_t j) { return eval(subsets[missing[j]]); });
    for (std::size_t j = 0; j < missing.size(); ++j)
        cache[key_of(subsets[missing[j]])] = values[j];
}

void check_k(const PredictionTable& table, int k) {
    if (k < 1) throw std::invalid_argument("subset size k must be at least 1");
    if (table.models() > 64)
        throw std::invalid_argument("subset approximation supports up to 64 models");
}

}  // namespace

MtiEvaluator::MtiEvaluator(const PredictionTable& table) : table_(table) {}

double MtiEvaluator::multi_information(int k) {
    check_k(table_, k);
    double total = 0.0;
    for (int i = 1; i < table_.models(); ++i) {
        const auto subsets = combinations(i, std::min(k, i));
        fill_cache(
            mi_cache_, subsets,
            [i](const std::vector<int>& s) { return std::make_pair(i, mask_of(s)); },
            [&](const std::vector<int>& s) { return subset_mi(table_, i, s); });
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& s : subsets)
            best = std::max(best, mi_cache_.at({i, mask_of(s)}));
        total += best;
    }
    return total;
}

double MtiEvaluator::conditional_multi_information(int k) {
    check_k(table_, k);
    double total = 0.0;
    for (int i = 1; i < table_.models(); ++i) {
        const auto subsets = combinations(i, std::min(k, i));
        fill_cache(
            cmi_cache_, subsets,
            [i](const std::vector<int>& s) { return std::make_pair(i, mask_of(s)); },
            [&](const std::vector<int>& s) { return subset_cmi(table_, i, s); });
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& s : subsets)
            best = std::max(best, cmi_cache_.at({i, mask_of(s)}));
        total += best;
    }
    return total;
}

double MtiEvaluator::conditional_entropy_truth(int k) {
    check_k(table_, k);
    const auto subsets = combinations(table_.models(), std::min(k, table_.models()));
    fill_cache(
        hy_cache_, subsets,
        [](const std::vector<int>& s) { return mask_of(s); },
        [&](const std::vector<int>& s) { return subset_hy(table_, s); });
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : subsets)
        best = std::min(best, hy_cache_.at(mask_of(s)));
    return best;
}

double mti_multi_information(const PredictionTable& table, int k) {
    return MtiEvaluator(table).multi_information(k);
}

double mti_conditional_multi_information(const PredictionTable& table, int k) {
    return MtiEvaluator(table).conditional_multi_information(k);
}

double mti_conditional_entropy_truth(const PredictionTable& table, int k) {
    return MtiEvaluator(table).conditional_entropy_truth(k);
}

}  // namespace ensmet
