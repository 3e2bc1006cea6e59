#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "ensmet/info_core.hpp"
#include "ensmet/prediction_table.hpp"

namespace ensmet {

// Selects exact estimation or the size-k subset approximation for the
// quantities that depend on the joint distribution of all model outputs.
struct MtiConfig {
    enum class Mode { Exact, Mti };

    Mode mode = Mode::Exact;
    int k = 0;

    static MtiConfig exact() { return {Mode::Exact, 0}; }
    static MtiConfig mti(int k) { return {Mode::Mti, k}; }
};

// Subset-search approximations of the full-joint information quantities.
//
// multi_information:             sum over i of max_{|S|=min(k,i-1)} I(O_i; S)
//                                with S drawn from the models before i in
//                                column order; lower-bounds the exact value.
// conditional_multi_information: the same sum with every term conditioned on
//                                the truth column.
// conditional_entropy_truth:     min over size-min(k,N) model subsets S of
//                                H(Y | S); upper-bounds the exact H(Y | O).
//
// Each (model, subset) information value is computed once and cached, so
// sweeps over k reuse earlier work. Subset scans run through map_indexed and
// are bitwise independent of the schedule. k below 1 throws; k larger than
// the available prefix is clamped.
class MtiEvaluator {
public:
    explicit MtiEvaluator(const PredictionTable& table);

    double multi_information(int k);
    double conditional_multi_information(int k);
    double conditional_entropy_truth(int k);

private:
    const PredictionTable& table_;
    std::map<std::pair<int, std::uint64_t>, double> mi_cache_;
    std::map<std::pair<int, std::uint64_t>, double> cmi_cache_;
    std::map<std::uint64_t, double> hy_cache_;
};

double mti_multi_information(const PredictionTable& table, int k);
double mti_conditional_multi_information(const PredictionTable& table, int k);
double mti_conditional_entropy_truth(const PredictionTable& table, int k);

}  // namespace ensmet
