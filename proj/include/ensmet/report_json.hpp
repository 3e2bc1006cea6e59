#pragma once

#include <string>

#include <json.hpp>

#include "ensmet/metrics.hpp"

namespace ensmet {

inline constexpr int kReportSchemaVersion = 1;

// Serialized analysis report ("report document"): schema version, input
// digest and shape, every MetricReport field, the three bound evaluations
// and the tightness diagnostics. null stands for absent optionals and for
// undefined bound values.
nlohmann::json report_to_json(const MetricReport& report,
                              const std::string& input_digest,
                              int instances);

// Minimal fields correlate needs back out of a report document. Throws
// data_error on schema mismatch.
struct ReportSummary {
    double error_rate = 0.0;
    bool loose_information_defined = false;
    double loose_information = 0.0;
    bool tight_information_defined = false;
    double tight_information = 0.0;
    bool tight_strength_defined = false;
    double tight_strength = 0.0;
    double ensemble_strength = 0.0;
};

ReportSummary summarize_report(const nlohmann::json& doc);

}  // namespace ensmet
