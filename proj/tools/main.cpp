#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ensmet/bounds.hpp"
#include "ensmet/combiners.hpp"
#include "ensmet/metrics.hpp"
#include "ensmet/report_json.hpp"
#include "ensmet/synth.hpp"
#include "ensmet/table_io.hpp"

namespace {

using nlohmann::json;

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ensmet::data_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ensmet::data_error("cannot write '" + out_path + "'");
    out << text;
}

json load_report(const std::string& path) {
    try {
        return json::parse(read_file_bytes(path));
    } catch (const json::exception& err) {
        throw ensmet::data_error("malformed report '" + path + "': " + err.what());
    }
}

// Undefined tightened bounds enter reduction computations as 0, loudly.
double bound_or_zero(bool defined, double value, const std::string& what) {
    if (defined) return value;
    std::cerr << "warning: " << what
              << " is undefined (negative discriminant); using 0 in reductions\n";
    return 0.0;
}

struct AnalyzeArgs {
    std::string input;
    std::string out;
    std::optional<int> classes;
    std::string mode = "exact";
    int k = 3;
    std::optional<double> p0;
    std::string baseline;
    std::optional<double> normalize_by;
    std::vector<int> concentration_sizes;
};

int run_analyze(const AnalyzeArgs& args) {
    const std::string bytes = read_file_bytes(args.input);
    std::istringstream stream(bytes);
    const ensmet::PredictionTable table =
        ensmet::read_table_csv(stream, args.classes);

    ensmet::AnalyzeOptions options;
    options.mti = args.mode == "mti" ? ensmet::MtiConfig::mti(args.k)
                                     : ensmet::MtiConfig::exact();

    std::optional<double> baseline_error;
    std::optional<double> baseline_strength;
    if (!args.baseline.empty()) {
        const ensmet::ReportSummary base =
            ensmet::summarize_report(load_report(args.baseline));
        baseline_error = base.error_rate;
        baseline_strength = base.ensemble_strength;
    }

    double p0;
    if (args.p0) {
        p0 = *args.p0;
    } else if (baseline_error) {
        p0 = *baseline_error;
    } else if (table.has_combined()) {
        p0 = table.error_rate();
    } else {
        std::cerr << "error: no yhat column and no --baseline; --p0 is required\n";
        return 1;
    }
    if (!(p0 > 0.0 && p0 < 1.0))
        throw ensmet::data_error("resolved p0 = " + std::to_string(p0) +
                                 " lies outside (0, 1); pass --p0 explicitly");
    options.bound = {p0, table.classes()};

    if (args.normalize_by) {
        options.baseline_strength = args.normalize_by;
    } else if (baseline_strength && *baseline_strength != 0.0) {
        options.baseline_strength = baseline_strength;
    }

    const ensmet::MetricReport report = ensmet::analyze(table, options);
    json doc = ensmet::report_to_json(report, ensmet::fnv1a_hex(bytes),
                                      table.instances());

    if (!args.concentration_sizes.empty()) {
        std::vector<int> sizes = args.concentration_sizes;
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        json conc = json::array();
        for (int n : sizes) {
            const std::optional<double> value = ensmet::concentration(table, n);
            conc.push_back({{"n", n}, {"value", value ? json(*value) : json(nullptr)}});
        }
        doc["concentration"] = conc;
    } else {
        doc["concentration"] = nullptr;
    }

    emit(doc.dump(2) + "\n", args.out);
    return 0;
}

struct CombineArgs {
    std::string input;
    std::string out;
    std::optional<int> classes;
    std::string method = "vote";
    std::vector<double> weights;
    int meta_folds = 4;
    int inner_folds = 5;
    std::vector<double> c_grid = {1e-2, 3e-2, 1e-1, 3e-1, 1e0};
    std::uint64_t seed = 0;
};

ensmet::CombinerSpec combiner_from(const std::string& method,
                                   const std::vector<double>& weights,
                                   int meta_folds, int inner_folds,
                                   const std::vector<double>& c_grid,
                                   std::uint64_t seed) {
    if (method == "vote") return ensmet::CombinerSpec::vote();
    if (method == "weighted-vote") return ensmet::CombinerSpec::weighted(weights);
    ensmet::StackingConfig cfg;
    cfg.meta_folds = meta_folds;
    cfg.inner_folds = inner_folds;
    cfg.c_grid = c_grid;
    cfg.seed = seed;
    return ensmet::CombinerSpec::stacked(cfg);
}

int run_combine(const CombineArgs& args) {
    const std::string bytes = read_file_bytes(args.input);
    std::istringstream stream(bytes);
    ensmet::PredictionTable table = ensmet::read_table_csv(stream, args.classes);

    const ensmet::CombinerSpec spec =
        combiner_from(args.method, args.weights, args.meta_folds,
                      args.inner_folds, args.c_grid, args.seed);
    table = table.with_combined(ensmet::apply_combiner(table, spec));

    std::ostringstream out;
    ensmet::write_table_csv(out, table);
    emit(out.str(), args.out);
    return 0;
}

struct ToyArgs {
    std::string variant = "A";
    int repetitions = 20;
    bool alt = false;
    bool no_combine = false;
    std::string out;
};

int run_toy(const ToyArgs& args) {
    const ensmet::ToyVariant variant =
        args.variant == "A"   ? ensmet::ToyVariant::A
        : args.variant == "B" ? ensmet::ToyVariant::B
        : args.variant == "C" ? ensmet::ToyVariant::C
                              : ensmet::ToyVariant::D;
    const ensmet::ToyFixture fixture = ensmet::toy_table(variant, args.repetitions);
    ensmet::PredictionTable table = fixture.table;
    if (!args.no_combine) {
        const ensmet::CombinerSpec* spec = &fixture.combiner;
        if (args.alt) {
            if (!fixture.alt_combiner)
                throw ensmet::data_error("variant " + args.variant +
                                         " has no alternate combiner");
            spec = &*fixture.alt_combiner;
        }
        table = table.with_combined(ensmet::apply_combiner(table, *spec));
    }
    std::ostringstream out;
    ensmet::write_table_csv(out, table);
    emit(out.str(), args.out);
    return 0;
}

struct SynthArgs {
    int models = 5;
    int instances = 1000;
    int classes = 2;
    double error = 0.25;
    std::vector<double> errors;
    double shared_noise = 0.0;
    std::vector<double> prior;
    std::uint64_t seed = 0;
    std::string out;
};

ensmet::SynthConfig synth_config_from(const SynthArgs& args) {
    ensmet::SynthConfig cfg;
    cfg.n_models = args.models;
    cfg.n_instances = args.instances;
    cfg.ymax = args.classes;
    cfg.per_model_error = args.errors.empty()
                              ? std::vector<double>(args.models, args.error)
                              : args.errors;
    cfg.shared_noise = args.shared_noise;
    cfg.truth_prior = args.prior.empty()
                          ? std::vector<double>(args.classes, 1.0 / args.classes)
                          : args.prior;
    cfg.seed = args.seed;
    return cfg;
}

int run_synth(const SynthArgs& args) {
    const ensmet::PredictionTable table = ensmet::synth_system(synth_config_from(args));
    std::ostringstream out;
    ensmet::write_table_csv(out, table);
    emit(out.str(), args.out);
    return 0;
}

struct ScaleArgs {
    SynthArgs synth;
    std::vector<int> n_values = {1, 2, 5, 10, 15, 20, 30};
    std::string method = "vote";
    std::vector<double> weights;
    int meta_folds = 4;
    int inner_folds = 5;
    std::vector<double> c_grid = {1e-2, 3e-2, 1e-1, 3e-1, 1e0};
    std::string mode = "exact";
    int k = 3;
    std::optional<double> p0;
    std::string out;
};

int run_scale(const ScaleArgs& args) {
    SynthArgs synth = args.synth;
    if (synth.models < args.n_values.back()) synth.models = args.n_values.back();
    const ensmet::SynthConfig cfg = synth_config_from(synth);
    const ensmet::CombinerSpec spec =
        combiner_from(args.method, args.weights, args.meta_folds,
                      args.inner_folds, args.c_grid, synth.seed);
    const ensmet::MtiConfig mti = args.mode == "mti"
                                      ? ensmet::MtiConfig::mti(args.k)
                                      : ensmet::MtiConfig::exact();

    const std::vector<ensmet::SweepPoint> series =
        ensmet::scaling_sweep(cfg, args.n_values, spec, mti, args.p0);

    const double base_er = series.front().error_rate;
    if (base_er <= 0.0)
        throw ensmet::data_error("baseline (first sweep point) error rate is zero; "
                                 "reductions are undefined");
    const auto base_bound = [&](const char* what, const ensmet::BoundResult& b) {
        const double v = bound_or_zero(b.defined, b.value, what);
        if (v == 0.0)
            throw ensmet::data_error(std::string("baseline ") + what +
                                     " is zero; reductions are undefined");
        return v;
    };
    const ensmet::MetricReport& base = series.front().report;
    const double base_loose = base_bound("loose_information bound",
                                         base.bound_loose_information);
    const double base_tight_i = base_bound("tight_information bound",
                                           base.bound_tight_information);
    const double base_tight_e = base_bound("tight_strength bound",
                                           *base.bound_tight_strength);

    std::ostringstream out;
    out << "n,error_rate,er_reduction,lbr_loose_information,"
           "lbr_tight_information,lbr_tight_strength,pm_relev,pm_redun,"
           "pm_combloss,i_relev,i_redun,i_combloss,information,strength\n";
    out.precision(12);
    for (const ensmet::SweepPoint& point : series) {
        const ensmet::MetricReport& r = point.report;
        const double loose = bound_or_zero(r.bound_loose_information.defined,
                                           r.bound_loose_information.value,
                                           "loose_information bound");
        const double tight_i = bound_or_zero(r.bound_tight_information.defined,
                                             r.bound_tight_information.value,
                                             "tight_information bound");
        const double tight_e = bound_or_zero(r.bound_tight_strength->defined,
                                             r.bound_tight_strength->value,
                                             "tight_strength bound");
        out << point.n_models << ',' << point.error_rate << ','
            << ensmet::error_rate_reduction(base_er, point.error_rate) << ','
            << ensmet::lower_bound_reduction(base_loose, loose) << ','
            << ensmet::lower_bound_reduction(base_tight_i, tight_i) << ','
            << ensmet::lower_bound_reduction(base_tight_e, tight_e) << ','
            << r.per_model.relev << ',' << r.per_model.redun << ','
            << r.per_model.combloss.value() << ',' << r.i_relev << ','
            << r.i_redun << ',' << r.i_combloss.value() << ','
            << r.ensemble_information << ',' << r.ensemble_strength.value()
            << '\n';
    }
    emit(out.str(), args.out);
    return 0;
}

struct CorrelateArgs {
    std::vector<std::string> reports;
    std::string baseline;
    std::string out;
};

int run_correlate(const CorrelateArgs& args) {
    const ensmet::ReportSummary base =
        ensmet::summarize_report(load_report(args.baseline));
    if (base.error_rate <= 0.0)
        throw ensmet::data_error("baseline error rate must be positive");

    const double base_loose = bound_or_zero(
        base.loose_information_defined, base.loose_information,
        "baseline loose_information bound");
    const double base_tight_i = bound_or_zero(
        base.tight_information_defined, base.tight_information,
        "baseline tight_information bound");
    const double base_tight_e = bound_or_zero(
        base.tight_strength_defined, base.tight_strength,
        "baseline tight_strength bound");
    for (double v : {base_loose, base_tight_i, base_tight_e}) {
        if (v == 0.0)
            throw ensmet::data_error("baseline bound is zero; "
                                     "lower-bound reductions are undefined");
    }

    json systems = json::array();
    std::vector<double> er_reductions;
    std::vector<double> lbr_loose, lbr_tight_i, lbr_tight_e;
    for (const std::string& path : args.reports) {
        const ensmet::ReportSummary sys = ensmet::summarize_report(load_report(path));
        const double er_red = ensmet::error_rate_reduction(base.error_rate,
                                                           sys.error_rate);
        const double red_loose = ensmet::lower_bound_reduction(
            base_loose, bound_or_zero(sys.loose_information_defined,
                                      sys.loose_information,
                                      path + ": loose_information bound"));
        const double red_tight_i = ensmet::lower_bound_reduction(
            base_tight_i, bound_or_zero(sys.tight_information_defined,
                                        sys.tight_information,
                                        path + ": tight_information bound"));
        const double red_tight_e = ensmet::lower_bound_reduction(
            base_tight_e, bound_or_zero(sys.tight_strength_defined,
                                        sys.tight_strength,
                                        path + ": tight_strength bound"));
        er_reductions.push_back(er_red);
        lbr_loose.push_back(red_loose);
        lbr_tight_i.push_back(red_tight_i);
        lbr_tight_e.push_back(red_tight_e);
        systems.push_back({{"report", path},
                           {"error_rate_reduction", er_red},
                           {"lower_bound_reductions",
                            {{"loose_information", red_loose},
                             {"tight_information", red_tight_i},
                             {"tight_strength", red_tight_e}}}});
    }

    const auto safe_pearson = [&](const std::vector<double>& ys,
                                  const char* what) -> json {
        try {
            return ensmet::pearson(er_reductions, ys);
        } catch (const std::invalid_argument& err) {
            std::cerr << "warning: pearson for " << what << ": " << err.what()
                      << "\n";
            return nullptr;
        }
    };
    json doc;
    doc["baseline_report"] = args.baseline;
    doc["systems"] = systems;
    doc["pearson"] = {
        {"loose_information", safe_pearson(lbr_loose, "loose_information")},
        {"tight_information", safe_pearson(lbr_tight_i, "tight_information")},
        {"tight_strength", safe_pearson(lbr_tight_e, "tight_strength")}};
    emit(doc.dump(2) + "\n", args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-theoretic analysis of classifier ensembles: "
                 "relevance / redundancy / combination-loss metrics and "
                 "Fano-type error-rate lower bounds"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Compute metrics, bounds and diagnostics for a table");
    analyze->add_option("input", analyze_args.input, "prediction table CSV")
        ->required();
    analyze->add_option("--out", analyze_args.out, "write the report here");
    analyze->add_option("--classes", analyze_args.classes,
                        "class count override (default: inferred from y)")
        ->check(CLI::Range(2, 1 << 20));
    analyze->add_option("--mode", analyze_args.mode, "exact or mti")
        ->check(CLI::IsMember({"exact", "mti"}));
    analyze->add_option("--k", analyze_args.k, "subset size for mti mode")
        ->check(CLI::Range(1, 64));
    analyze->add_option("--p0", analyze_args.p0,
                        "anchor error rate for the tightened bound")
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--baseline", analyze_args.baseline,
                        "baseline report; supplies default p0 and the "
                        "normalization strength");
    analyze->add_option("--normalize-by", analyze_args.normalize_by,
                        "explicit baseline strength for normalized values");
    analyze->add_option("--conc", analyze_args.concentration_sizes,
                        "subset sizes for the concentration metric")
        ->delimiter(',');

    CombineArgs combine_args;
    CLI::App* combine = app.add_subcommand(
        "combine", "Add a combined prediction column to a table");
    combine->add_option("input", combine_args.input, "prediction table CSV")
        ->required();
    combine->add_option("--out", combine_args.out, "write the table here");
    combine->add_option("--classes", combine_args.classes, "class count override")
        ->check(CLI::Range(2, 1 << 20));
    combine->add_option("--method", combine_args.method,
                        "vote, weighted-vote or stacking")
        ->check(CLI::IsMember({"vote", "weighted-vote", "stacking"}));
    combine->add_option("--weights", combine_args.weights,
                        "per-model weights for weighted-vote")
        ->delimiter(',');
    combine->add_option("--meta-folds", combine_args.meta_folds,
                        "outer folds for stacking")
        ->check(CLI::Range(2, 1 << 20));
    combine->add_option("--inner-folds", combine_args.inner_folds,
                        "inner folds for the grid search")
        ->check(CLI::Range(2, 1 << 20));
    combine->add_option("--c-grid", combine_args.c_grid,
                        "regularization grid for stacking")
        ->delimiter(',');
    combine->add_option("--seed", combine_args.seed, "fold shuffle seed");

    ToyArgs toy_args;
    CLI::App* toy = app.add_subcommand("toy", "Emit a hand-built toy system");
    toy->add_option("--variant", toy_args.variant, "A, B, C or D")
        ->check(CLI::IsMember({"A", "B", "C", "D"}));
    toy->add_option("--repetitions", toy_args.repetitions,
                    "filler repetitions per correct pattern")
        ->check(CLI::Range(1, 1 << 20));
    toy->add_flag("--alt", toy_args.alt,
                  "use the alternate combiner (variant D)");
    toy->add_flag("--no-combine", toy_args.no_combine,
                  "emit the table without a yhat column");
    toy->add_option("--out", toy_args.out, "write the table here");

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic system");
    const auto add_synth_options = [](CLI::App* cmd, SynthArgs& args) {
        cmd->add_option("--models", args.models, "number of models")
            ->check(CLI::Range(1, 64));
        cmd->add_option("--instances", args.instances, "number of instances")
            ->check(CLI::Range(1, 1 << 26));
        cmd->add_option("--classes", args.classes, "number of classes")
            ->check(CLI::Range(2, 1 << 16));
        cmd->add_option("--error", args.error, "uniform per-model error rate")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--errors", args.errors, "per-model error rates")
            ->delimiter(',');
        cmd->add_option("--shared-noise", args.shared_noise,
                        "probability of a shared corruption event")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--prior", args.prior, "truth label prior")
            ->delimiter(',');
        cmd->add_option("--seed", args.seed, "generator seed");
    };
    add_synth_options(synth, synth_args);
    synth->add_option("--out", synth_args.out, "write the table here");

    ScaleArgs scale_args;
    CLI::App* scale = app.add_subcommand(
        "scale", "Sweep the model count of a synthetic system");
    add_synth_options(scale, scale_args.synth);
    scale->add_option("--n-values", scale_args.n_values,
                      "ascending model counts to evaluate")
        ->delimiter(',');
    scale->add_option("--method", scale_args.method,
                      "vote, weighted-vote or stacking")
        ->check(CLI::IsMember({"vote", "weighted-vote", "stacking"}));
    scale->add_option("--weights", scale_args.weights,
                      "per-model weights for weighted-vote")
        ->delimiter(',');
    scale->add_option("--meta-folds", scale_args.meta_folds, "stacking outer folds")
        ->check(CLI::Range(2, 1 << 20));
    scale->add_option("--inner-folds", scale_args.inner_folds,
                      "stacking inner folds")
        ->check(CLI::Range(2, 1 << 20));
    scale->add_option("--c-grid", scale_args.c_grid, "stacking regularization grid")
        ->delimiter(',');
    scale->add_option("--mode", scale_args.mode, "exact or mti")
        ->check(CLI::IsMember({"exact", "mti"}));
    scale->add_option("--k", scale_args.k, "subset size for mti mode")
        ->check(CLI::Range(1, 64));
    scale->add_option("--p0", scale_args.p0,
                      "anchor error rate (default: first point's error rate)")
        ->check(CLI::Range(0.0, 1.0));
    scale->add_option("--out", scale_args.out, "write the CSV here");

    CorrelateArgs correlate_args;
    CLI::App* correlate = app.add_subcommand(
        "correlate",
        "Reductions against a baseline and their Pearson correlations");
    correlate->add_option("reports", correlate_args.reports, "system reports")
        ->required()
        ->expected(2, -1);
    correlate->add_option("--baseline", correlate_args.baseline, "baseline report")
        ->required();
    correlate->add_option("--out", correlate_args.out, "write the JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return run_analyze(analyze_args);
        if (*combine) return run_combine(combine_args);
        if (*toy) return run_toy(toy_args);
        if (*synth) return run_synth(synth_args);
        if (*scale) return run_scale(scale_args);
        if (*correlate) return run_correlate(correlate_args);
    } catch (const ensmet::data_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 1;
}
