#pragma once

#include <map>
#include <vector>

#include "ensmet/prediction_table.hpp"

namespace ensmet {

// Plug-in (maximum likelihood) distribution over tuples of discrete
// variables. Zero-count tuples are absent from the support; probabilities of
// the stored tuples sum to 1. The ordered map keeps every reduction below
// deterministic, independent of construction order.
struct EmpiricalDistribution {
    std::map<std::vector<Label>, double> support;
    int arity = 0;
    std::int64_t sample_count = 0;
};

// Observed frequency distribution of the selected variables, probability =
// count / instances. Throws on an invalid model index or when Combined is
// requested from a table without a combined column.
EmpiricalDistribution estimate_joint(const PredictionTable& table,
                                     const std::vector<Var>& vars);

// Marginal over the given positions, in the order given (positions are
// 0-based indices into the joint's tuple).
EmpiricalDistribution marginal(const EmpiricalDistribution& dist,
                               const std::vector<int>& positions);

// All results in bits (log base 2).
double entropy(const EmpiricalDistribution& dist);

// H(target | given) = H(given, target) - H(given), evaluated on the single
// joint. Position sets must be disjoint.
double conditional_entropy(const EmpiricalDistribution& joint,
                           const std::vector<int>& target_positions,
                           const std::vector<int>& given_positions);

// I(A;B) = H(A) + H(B) - H(A,B); exactly symmetric in its arguments.
double mutual_information(const EmpiricalDistribution& joint,
                          const std::vector<int>& set_a,
                          const std::vector<int>& set_b);

// Total correlation sum p log2(p / prod of marginals); 0 for a single
// variable.
double multi_information(const EmpiricalDistribution& joint);

// Expectation over the given variables of the multi-information of the
// target variables under the conditional distribution; 0 for a single
// target.
double conditional_multi_information(const EmpiricalDistribution& joint,
                                     const std::vector<int>& target_positions,
                                     const std::vector<int>& given_positions);

}  // namespace ensmet
