#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ensmet {

// Class index, 0-based, always < classes() of the owning table.
using Label = std::uint32_t;

// Selects one discrete variable of a prediction table.
struct Var {
    enum class Kind { Model, Truth, Combined };

    Kind kind = Kind::Truth;
    int index = 0;  // model index, meaningful for Kind::Model only

    static Var model(int i) { return {Kind::Model, i}; }
    static Var truth() { return {Kind::Truth, 0}; }
    static Var combined() { return {Kind::Combined, 0}; }
};

// Predicted labels of N models on M instances, the ground-truth column and
// an optional combined (ensemble prediction) column. Immutable after
// construction; all accessors are const and thread-safe.
class PredictionTable {
public:
    PredictionTable(std::vector<std::vector<Label>> model_labels,
                    std::vector<Label> truth,
                    std::optional<std::vector<Label>> combined, int classes);

    int models() const { return static_cast<int>(models_.size()); }
    int instances() const { return static_cast<int>(truth_.size()); }
    int classes() const { return classes_; }
    bool has_combined() const { return combined_.has_value(); }

    std::span<const Label> model_row(int i) const { return models_.at(i); }
    std::span<const Label> truth_row() const { return truth_; }
    std::span<const Label> combined_row() const { return combined_.value(); }

    Label value(const Var& v, int instance) const;

    // Copy of this table with the combined column replaced.
    PredictionTable with_combined(std::vector<Label> combined) const;
    // Copy restricted to the first n model columns (truth/combined kept).
    PredictionTable prefix(int n_models) const;

    // Fraction of instances where the combined prediction differs from the
    // truth. Requires a combined column.
    double error_rate() const;

private:
    std::vector<std::vector<Label>> models_;
    std::vector<Label> truth_;
    std::optional<std::vector<Label>> combined_;
    int classes_;
};

}  // namespace ensmet
