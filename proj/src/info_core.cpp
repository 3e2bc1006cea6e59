#include "ensmet/info_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ensmet {

namespace {

void check_positions(const EmpiricalDistribution& dist,
                     const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<char> seen(dist.arity, 0);
    for (const auto* set : {&a, &b}) {
        for (int p : *set) {
            if (p < 0 || p >= dist.arity)
                throw std::invalid_argument("position out of range");
            if (seen[p])
                throw std::invalid_argument("position sets overlap");
            seen[p] = 1;
        }
    }
}

std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
    std::vector<int> u = a;
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    return u;
}

std::vector<Label> subtuple(const std::vector<Label>& tuple,
                            const std::vector<int>& positions) {
    std::vector<Label> out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        out[i] = tuple[positions[i]];
    return out;
}

}  // namespace

EmpiricalDistribution estimate_joint(const PredictionTable& table,
                                     const std::vector<Var>& vars) {
    if (vars.empty()) throw std::invalid_argument("no variables selected");
    for (const Var& v : vars) {
        if (v.kind == Var::Kind::Model &&
            (v.index < 0 || v.index >= table.models()))
            throw std::invalid_argument("model selector out of range");
        if (v.kind == Var::Kind::Combined && !table.has_combined())
            throw std::invalid_argument("combined column requested but absent");
    }

    const int m = table.instances();
    std::map<std::vector<Label>, std::int64_t> counts;
    std::vector<Label> key(vars.size());
    for (int j = 0; j < m; ++j) {
        for (std::size_t v = 0; v < vars.size(); ++v)
            key[v] = table.value(vars[v], j);
        ++counts[key];
    }

    EmpiricalDistribution dist;
    dist.arity = static_cast<int>(vars.size());
    dist.sample_count = m;
    const double inv_m = 1.0 / static_cast<double>(m);
    for (const auto& [tuple, count] : counts)
        dist.support.emplace(tuple, static_cast<double>(count) * inv_m);
    return dist;
}

EmpiricalDistribution marginal(const EmpiricalDistribution& dist,
                               const std::vector<int>& positions) {
    for (int p : positions) {
        if (p < 0 || p >= dist.arity)
            throw std::invalid_argument("position out of range");
    }
    EmpiricalDistribution out;
    out.arity = static_cast<int>(positions.size());
    out.sample_count = dist.sample_count;
    for (const auto& [tuple, prob] : dist.support)
        out.support[subtuple(tuple, positions)] += prob;
    return out;
}

double entropy(const EmpiricalDistribution& dist) {
    double h = 0.0;
    for (const auto& [tuple, prob] : dist.support) h -= prob * std::log2(prob);
    return h;
}

double conditional_entropy(const EmpiricalDistribution& joint,
                           const std::vector<int>& target_positions,
                           const std::vector<int>& given_positions) {
    check_positions(joint, target_positions, given_positions);
    const double h_joint =
        entropy(marginal(joint, sorted_union(target_positions, given_positions)));
    if (given_positions.empty()) return h_joint;
    return h_joint - entropy(marginal(joint, given_positions));
}

double mutual_information(const EmpiricalDistribution& joint,
                          const std::vector<int>& set_a,
                          const std::vector<int>& set_b) {
    check_positions(joint, set_a, set_b);
    if (set_a.empty() || set_b.empty())
        throw std::invalid_argument("mutual information needs two non-empty sets");
    const double h_a = entropy(marginal(joint, set_a));
    const double h_b = entropy(marginal(joint, set_b));
    const double h_ab = entropy(marginal(joint, sorted_union(set_a, set_b)));
    return h_a + h_b - h_ab;
}

double multi_information(const EmpiricalDistribution& joint) {
    if (joint.arity <= 1) return 0.0;
    std::vector<std::map<Label, double>> margs(joint.arity);
    for (const auto& [tuple, prob] : joint.support) {
        for (int i = 0; i < joint.arity; ++i) margs[i][tuple[i]] += prob;
    }
    double total = 0.0;
    for (const auto& [tuple, prob] : joint.support) {
        double log_prod = 0.0;
        for (int i = 0; i < joint.arity; ++i)
            log_prod += std::log2(margs[i].at(tuple[i]));
        total += prob * (std::log2(prob) - log_prod);
    }
    return total;
}

double conditional_multi_information(const EmpiricalDistribution& joint,
                                     const std::vector<int>& target_positions,
                                     const std::vector<int>& given_positions) {
    check_positions(joint, target_positions, given_positions);
    const std::size_t n_targets = target_positions.size();
    if (n_targets == 0)
        throw std::invalid_argument("needs at least one target variable");
    if (n_targets == 1) return 0.0;

    struct Group {
        double p_given = 0.0;
        std::map<std::vector<Label>, double> joint_targets;
        std::vector<std::map<Label, double>> target_margs;
    };
    std::map<std::vector<Label>, Group> groups;
    for (const auto& [tuple, prob] : joint.support) {
        Group& g = groups[subtuple(tuple, given_positions)];
        if (g.target_margs.empty()) g.target_margs.resize(n_targets);
        g.p_given += prob;
        const std::vector<Label> t = subtuple(tuple, target_positions);
        g.joint_targets[t] += prob;
        for (std::size_t i = 0; i < n_targets; ++i) g.target_margs[i][t[i]] += prob;
    }

    double total = 0.0;
    for (const auto& [given_value, g] : groups) {
        for (const auto& [t, p_gt] : g.joint_targets) {
            // log2( p(t|g) / prod_i p(t_i|g) ); the p_given factors cancel
            // except for (n_targets - 1) of them.
            double log_ratio = std::log2(p_gt);
            for (std::size_t i = 0; i < n_targets; ++i)
                log_ratio -= std::log2(g.target_margs[i].at(t[i]));
            log_ratio += (static_cast<double>(n_targets) - 1.0) * std::log2(g.p_given);
            total += p_gt * log_ratio;
        }
    }
    return total;
}

}  // namespace ensmet
