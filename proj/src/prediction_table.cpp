#include "ensmet/prediction_table.hpp"

#include <stdexcept>
#include <string>

namespace ensmet {

namespace {

void check_labels(const std::vector<Label>& column, int classes,
                  const char* what) {
    for (Label v : column) {
        if (v >= static_cast<Label>(classes)) {
            throw std::invalid_argument(std::string(what) + " label " +
                                        std::to_string(v) +
                                        " out of range for " +
                                        std::to_string(classes) + " classes");
        }
    }
}

}  // namespace

PredictionTable::PredictionTable(std::vector<std::vector<Label>> model_labels,
                                 std::vector<Label> truth,
                                 std::optional<std::vector<Label>> combined,
                                 int classes)
    : models_(std::move(model_labels)),
      truth_(std::move(truth)),
      combined_(std::move(combined)),
      classes_(classes) {
    if (models_.empty()) throw std::invalid_argument("table needs at least one model");
    if (truth_.empty()) throw std::invalid_argument("table needs at least one instance");
    if (classes_ < 2) throw std::invalid_argument("table needs at least two classes");
    const std::size_t m = truth_.size();
    for (const auto& row : models_) {
        if (row.size() != m)
            throw std::invalid_argument("model row length differs from truth length");
        check_labels(row, classes_, "model");
    }
    check_labels(truth_, classes_, "truth");
    if (combined_) {
        if (combined_->size() != m)
            throw std::invalid_argument("combined length differs from truth length");
        check_labels(*combined_, classes_, "combined");
    }
}

Label PredictionTable::value(const Var& v, int instance) const {
    switch (v.kind) {
        case Var::Kind::Model:
            return models_.at(v.index)[instance];
        case Var::Kind::Truth:
            return truth_[instance];
        case Var::Kind::Combined:
            if (!combined_) throw std::invalid_argument("table has no combined column");
            return (*combined_)[instance];
    }
    throw std::invalid_argument("unknown variable kind");
}

PredictionTable PredictionTable::with_combined(std::vector<Label> combined) const {
    return PredictionTable(models_, truth_, std::move(combined), classes_);
}

PredictionTable PredictionTable::prefix(int n_models) const {
    if (n_models < 1 || n_models > models()) {
        throw std::invalid_argument("prefix size out of range");
    }
    std::vector<std::vector<Label>> head(models_.begin(), models_.begin() + n_models);
    return PredictionTable(std::move(head), truth_, combined_, classes_);
}

double PredictionTable::error_rate() const {
    if (!combined_) throw std::invalid_argument("table has no combined column");
    long wrong = 0;
    for (std::size_t j = 0; j < truth_.size(); ++j) {
        if ((*combined_)[j] != truth_[j]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(truth_.size());
}

}  // namespace ensmet
