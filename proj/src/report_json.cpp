#include "ensmet/report_json.hpp"

#include "ensmet/table_io.hpp"

namespace ensmet {

namespace {

using nlohmann::json;

json bound_to_json(const BoundResult& b) {
    json out;
    out["value"] = b.defined ? json(b.value) : json(nullptr);
    out["defined"] = b.defined;
    out["diagnostic"] = to_string(b.diagnostic);
    return out;
}

json opt(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json report_to_json(const MetricReport& report, const std::string& input_digest,
                    int instances) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["input"] = {{"digest", input_digest},
                    {"models", report.n_models},
                    {"instances", instances},
                    {"classes", report.bound_config.ymax}};
    if (report.mode.mode == MtiConfig::Mode::Exact) {
        doc["mode"] = {{"kind", "exact"}};
    } else {
        doc["mode"] = {{"kind", "mti"}, {"k", report.mode.k}};
    }
    doc["model_order"] = report.model_order;
    doc["metrics"] = {
        {"h_y", report.h_y},
        {"i_relev", report.i_relev},
        {"i_redun", report.i_redun},
        {"i_combloss", opt(report.i_combloss)},
        {"ensemble_information", report.ensemble_information},
        {"ensemble_strength", opt(report.ensemble_strength)},
        {"per_model",
         {{"relev", report.per_model.relev},
          {"redun", report.per_model.redun},
          {"combloss", opt(report.per_model.combloss)}}}};
    doc["error_rate"] = opt(report.error_rate);
    doc["bound_config"] = {{"p0", report.bound_config.p0},
                           {"ymax", report.bound_config.ymax}};
    doc["bounds"] = {
        {"loose_information", bound_to_json(report.bound_loose_information)},
        {"tight_information", bound_to_json(report.bound_tight_information)},
        {"tight_strength", report.bound_tight_strength
                               ? bound_to_json(*report.bound_tight_strength)
                               : json(nullptr)}};
    json tight;
    tight["tau"] = report.tightness.tau;
    tight["delta_roots"] =
        report.tightness.delta_roots
            ? json({report.tightness.delta_roots->first,
                    report.tightness.delta_roots->second})
            : json(nullptr);
    tight["regime"] = to_string(report.tightness.regime);
    doc["tightness"] = tight;
    if (report.normalized) {
        doc["normalized"] = {
            {"baseline_strength", report.normalized->baseline_strength},
            {"i_relev", report.normalized->i_relev},
            {"i_redun", report.normalized->i_redun},
            {"i_combloss", opt(report.normalized->i_combloss)},
            {"ensemble_information", report.normalized->ensemble_information},
            {"ensemble_strength", opt(report.normalized->ensemble_strength)}};
    } else {
        doc["normalized"] = nullptr;
    }
    return doc;
}

ReportSummary summarize_report(const json& doc) {
    try {
        if (!doc.is_object() || doc.at("schema_version").get<int>() != kReportSchemaVersion)
            throw data_error("unsupported report schema");
        ReportSummary out;
        if (doc.at("error_rate").is_null())
            throw data_error("report lacks an error rate (no combined column)");
        out.error_rate = doc.at("error_rate").get<double>();
        const auto& bounds = doc.at("bounds");
        const auto load = [&](const char* key, bool& defined, double& value) {
            const auto& b = bounds.at(key);
            if (b.is_null()) {
                defined = false;
                return;
            }
            defined = b.at("defined").get<bool>();
            if (defined) value = b.at("value").get<double>();
        };
        load("loose_information", out.loose_information_defined, out.loose_information);
        load("tight_information", out.tight_information_defined, out.tight_information);
        load("tight_strength", out.tight_strength_defined, out.tight_strength);
        const auto& strength = doc.at("metrics").at("ensemble_strength");
        out.ensemble_strength = strength.is_null() ? 0.0 : strength.get<double>();
        return out;
    } catch (const json::exception& err) {
        throw data_error(std::string("malformed report: ") + err.what());
    }
}

}  // namespace ensmet
