#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "f1opt/analytic.hpp"
#include "f1opt/case_study.hpp"
#include "f1opt/csv.hpp"
#include "f1opt/curves.hpp"
#include "f1opt/gfm.hpp"
#include "f1opt/metrics.hpp"
#include "f1opt/thresholding.hpp"
#include "f1opt/winners_curse.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitWarnings = 3;

struct Common {
    std::string out_dir;
    double empty_f1 = 1.0;
    std::vector<std::string> outputs;  // file names written, for the manifest
};

void add_common_options(CLI::App* cmd, Common& common) {
    const char* env = std::getenv("F1OPT_OUT_DIR");
    common.out_dir = env ? env : "out";
    cmd->add_option("--out", common.out_dir,
                    "Output directory (default $F1OPT_OUT_DIR or ./out)");
    cmd->add_option("--empty-f1", common.empty_f1,
                    "Score for an all-negative prediction matching an "
                    "all-negative gold: 1 (default) or 0")
        ->check(CLI::IsMember({0.0, 1.0}));
}

std::ofstream open_output(Common& common, const std::string& name) {
    fs::create_directories(common.out_dir);
    const fs::path path = fs::path(common.out_dir) / name;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    common.outputs.push_back(name);
    return out;
}

// Every run drops a manifest with the full resolved configuration next to
// its outputs so the run can be reproduced exactly.
void write_manifest(Common& common, const std::string& command, json options) {
    json manifest;
    manifest["command"] = command;
    manifest["out_dir"] = common.out_dir;
    manifest["empty_f1"] = common.empty_f1;
    manifest["options"] = std::move(options);
    manifest["outputs"] = common.outputs;
    std::ofstream out = open_output(common, "manifest.json");
    out << manifest.dump(2) << '\n';
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// ---- eval ----------------------------------------------------------------

struct EvalOpts {
    Common common;
    std::string pred_path;
    std::string gold_path;
    bool as_json = false;
};

int run_eval(EvalOpts& o) {
    const f1opt::LabelMatrix pred = f1opt::read_label_matrix_file(o.pred_path);
    const f1opt::LabelMatrix gold = f1opt::read_label_matrix_file(o.gold_path);
    const double empty = o.common.empty_f1;

    json report;
    report["micro_f1"] = f1opt::micro_f1(pred, gold, empty);
    report["macro_f1"] = f1opt::macro_f1(pred, gold, empty);
    report["instance_f1"] = f1opt::instance_f1(pred, gold, empty);
    report["accuracy"] = f1opt::multilabel_accuracy(pred, gold);
    report["jaccard"] = f1opt::jaccard(f1opt::confusion(pred, gold), empty);
    json per_label = json::array();
    for (std::size_t j = 0; j < pred.cols(); ++j) {
        const f1opt::ConfusionCounts c = f1opt::column_confusion(pred, gold, j);
        per_label.push_back({{"label", j},
                             {"tp", c.tp},
                             {"fp", c.fp},
                             {"fn", c.fn},
                             {"tn", c.tn},
                             {"f1", f1opt::f1_from_counts(c, empty)}});
    }
    report["per_label"] = per_label;

    if (o.as_json) {
        std::cout << report.dump(2) << '\n';
    } else {
        for (const char* key :
             {"micro_f1", "macro_f1", "instance_f1", "accuracy", "jaccard"}) {
            std::cout << key << ": "
                      << f1opt::format_double(report[key].get<double>()) << '\n';
        }
        std::cout << "label,tp,fp,fn,tn,f1\n";
        for (const auto& row : per_label) {
            std::cout << row["label"] << ',' << row["tp"] << ',' << row["fp"]
                      << ',' << row["fn"] << ',' << row["tn"] << ','
                      << f1opt::format_double(row["f1"].get<double>()) << '\n';
        }
    }

    {
        std::ofstream out = open_output(o.common, "metrics.json");
        out << report.dump(2) << '\n';
    }
    write_manifest(o.common, "eval",
                   {{"pred", o.pred_path}, {"gold", o.gold_path},
                    {"json", o.as_json}});
    return kExitOk;
}

// ---- tune ----------------------------------------------------------------

struct TuneOpts {
    Common common;
    std::string objective = "macro";
    std::string scores_path;
    std::string gold_path;
};

int run_tune(TuneOpts& o) {
    int exit_code = kExitOk;
    if (o.objective == "instance") {
        const f1opt::ScoreMatrix probs =
            f1opt::read_score_matrix_file(o.scores_path, true);
        const f1opt::InstanceTuneResult result =
            f1opt::tune_instance(probs, o.common.empty_f1);
        {
            std::ofstream out = open_output(o.common, "predictions.csv");
            f1opt::write_label_matrix(out, result.predictions);
        }
        {
            std::ofstream out = open_output(o.common, "expected.csv");
            out << "row,expected_f1\n";
            for (std::size_t i = 0; i < result.per_row_expected.size(); ++i) {
                out << i << ',' << f1opt::format_double(result.per_row_expected[i])
                    << '\n';
            }
        }
        std::cout << "objective: instance\nmean_expected_f1: "
                  << f1opt::format_double(result.mean_expected) << '\n';
    } else {
        if (o.gold_path.empty()) {
            throw std::runtime_error("--gold is required for macro/micro tuning");
        }
        const f1opt::ScoreMatrix scores =
            f1opt::read_score_matrix_file(o.scores_path);
        const f1opt::LabelMatrix gold = f1opt::read_label_matrix_file(o.gold_path);
        const f1opt::MultilabelThresholds tuned =
            o.objective == "macro"
                ? f1opt::tune_macro(scores, gold, o.common.empty_f1)
                : f1opt::tune_micro(scores, gold, o.common.empty_f1);
        {
            std::ofstream out = open_output(o.common, "thresholds.csv");
            out << "label,threshold\n";
            for (std::size_t j = 0; j < tuned.per_label.size(); ++j) {
                out << j << ',' << f1opt::format_double(tuned.per_label[j]) << '\n';
            }
        }
        {
            std::ofstream out = open_output(o.common, "predictions.csv");
            f1opt::write_label_matrix(out,
                                      f1opt::apply_thresholds(scores, tuned.per_label));
        }
        std::cout << "objective: " << o.objective << '\n'
                  << "achieved: " << f1opt::format_double(tuned.achieved) << '\n'
                  << "converged: " << (tuned.converged ? "true" : "false") << '\n';
        if (!tuned.converged) {
            std::cerr << "warning: coordinate ascent hit the pass limit before "
                         "stabilizing\n";
            exit_code = kExitWarnings;
        }
    }
    write_manifest(o.common, "tune",
                   {{"objective", o.objective}, {"scores", o.scores_path},
                    {"gold", o.gold_path}});
    return exit_code;
}

// ---- gfm -----------------------------------------------------------------

struct GfmOpts {
    Common common;
    std::string probs_path;
    bool oracle = false;
};

int run_gfm(GfmOpts& o) {
    const auto rows = f1opt::read_numeric_rows_file(o.probs_path);
    if (rows.empty()) {
        throw std::runtime_error("no probability rows in " + o.probs_path);
    }
    int exit_code = kExitOk;
    std::ofstream results = open_output(o.common, "gfm.csv");
    std::ofstream predictions = open_output(o.common, "predictions.csv");
    results << (o.oracle ? "row,expected_f1,oracle_expected_f1,abs_diff\n"
                         : "row,expected_f1\n");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const f1opt::ExpectedF1Result result =
            f1opt::maximize_expected_f1(rows[i], o.common.empty_f1);
        results << i << ',' << f1opt::format_double(result.expected_f1);
        if (o.oracle) {
            if (rows[i].size() > 20) {
                throw std::runtime_error(
                    "--oracle needs rows of at most 20 probabilities");
            }
            const double oracle = f1opt::brute_force_expected_f1(
                rows[i], result.h, o.common.empty_f1);
            const double diff = std::abs(oracle - result.expected_f1);
            results << ',' << f1opt::format_double(oracle) << ','
                    << f1opt::format_double(diff);
            if (diff > 1e-9) {
                std::cerr << "warning: row " << i
                          << " disagrees with the exhaustive oracle by " << diff
                          << '\n';
                exit_code = kExitWarnings;
            }
        }
        results << '\n';
        for (std::size_t j = 0; j < result.h.size(); ++j) {
            if (j) {
                predictions << ',';
            }
            predictions << static_cast<int>(result.h[j]);
        }
        predictions << '\n';
    }
    write_manifest(o.common, "gfm",
                   {{"probs", o.probs_path}, {"oracle", o.oracle}});
    return exit_code;
}

// ---- simulate --------------------------------------------------------------

struct SimulateOpts {
    Common common;
    std::vector<double> base_rates;
    std::size_t samples = 100000;
    std::size_t trials = 500;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    bool paper_scale = false;
    bool samples_set = false;
    bool trials_set = false;
};

void write_histogram(std::ostream& out, const std::vector<std::uint64_t>& counts,
                     double low, double high) {
    out << "bin_low,bin_high,count\n";
    const double width = (high - low) / static_cast<double>(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        out << f1opt::format_double(low + width * static_cast<double>(k)) << ','
            << f1opt::format_double(low + width * static_cast<double>(k + 1)) << ','
            << counts[k] << '\n';
    }
}

int run_simulate(SimulateOpts& o) {
    if (o.paper_scale) {
        if (!o.samples_set) {
            o.samples = 1000000;
        }
        if (!o.trials_set) {
            o.trials = 10000;
        }
    }
    if (o.base_rates.empty()) {
        o.base_rates = {0.5};
    }

    std::ofstream summary = open_output(o.common, "summary.csv");
    summary << "base_rate,samples,trials,curse_region,mean_fraction,"
               "share_below_half,share_above_90pct,mean_regret\n";
    for (double b : o.base_rates) {
        f1opt::CurseConfig config;
        config.base_rate = b;
        config.samples = o.samples;
        config.sigma = o.sigma;
        config.trials = o.trials;
        config.seed = o.seed;
        const f1opt::CurseResult result = f1opt::run_curse_simulation(config);

        const std::string tag = "-b" + short_number(b);
        {
            std::ofstream out = open_output(o.common, "trials" + tag + ".csv");
            out << "trial,threshold,fraction,train_f1,expected_f1,regret\n";
            for (std::size_t t = 0; t < result.trials.size(); ++t) {
                const f1opt::CurseTrial& trial = result.trials[t];
                out << t << ',' << f1opt::format_double(trial.threshold) << ','
                    << f1opt::format_double(trial.fraction) << ','
                    << f1opt::format_double(trial.train_f1) << ','
                    << f1opt::format_double(trial.expected_f1) << ','
                    << f1opt::format_double(trial.regret) << '\n';
            }
        }
        {
            std::ofstream out = open_output(o.common, "fractions" + tag + ".csv");
            write_histogram(out, result.fraction_histogram, 0.0, 1.0);
        }
        {
            std::ofstream out = open_output(o.common, "thresholds" + tag + ".csv");
            write_histogram(out, result.threshold_histogram,
                            result.threshold_bin_low, result.threshold_bin_high);
        }

        double mean_fraction = 0.0;
        double mean_regret = 0.0;
        std::size_t below_half = 0;
        std::size_t above_90 = 0;
        for (const f1opt::CurseTrial& trial : result.trials) {
            mean_fraction += trial.fraction;
            mean_regret += trial.regret;
            below_half += trial.fraction < 0.5;
            above_90 += trial.fraction >= 0.9;
        }
        const double t = static_cast<double>(result.trials.size());
        summary << f1opt::format_double(b) << ',' << o.samples << ',' << o.trials
                << ',' << (f1opt::curse_region(b, static_cast<double>(o.samples))
                               ? 1 : 0)
                << ',' << f1opt::format_double(mean_fraction / t) << ','
                << f1opt::format_double(static_cast<double>(below_half) / t) << ','
                << f1opt::format_double(static_cast<double>(above_90) / t) << ','
                << f1opt::format_double(mean_regret / t) << '\n';
        std::cout << "b=" << short_number(b)
                  << " mean_fraction=" << f1opt::format_double(mean_fraction / t)
                  << " mean_regret=" << f1opt::format_double(mean_regret / t)
                  << '\n';
    }
    write_manifest(o.common, "simulate",
                   {{"base_rates", o.base_rates}, {"samples", o.samples},
                    {"trials", o.trials}, {"sigma", o.sigma}, {"seed", o.seed},
                    {"paper_scale", o.paper_scale}});
    return kExitOk;
}

// ---- curves ----------------------------------------------------------------

struct CurvesOpts {
    Common common;
    std::string figure;
    double positives = 100.0;
    double total = 1000.0;
    std::vector<double> fixed;
    std::size_t points = 101;
    std::uint64_t seed = 0;
};

void write_curve_file(Common& common, const f1opt::CurveTable& table) {
    std::ofstream out = open_output(common, table.name + ".csv");
    f1opt::write_curve_csv(out, table);
}

int run_curves(CurvesOpts& o) {
    if (o.fixed.empty()) {
        o.fixed = {0.0, 10.0, 50.0};
    }
    const bool all = o.figure == "all";
    bool known = all;
    if (all || o.figure == "f1-vs-tp") {
        known = true;
        write_curve_file(o.common, f1opt::f1_surface(f1opt::SurfaceKind::f1_vs_tp,
                                                     o.fixed, o.positives, o.total,
                                                     o.points));
    }
    if (all || o.figure == "accuracy-vs-tp") {
        known = true;
        write_curve_file(o.common,
                         f1opt::f1_surface(f1opt::SurfaceKind::accuracy_vs_tp,
                                           o.fixed, o.positives, o.total, o.points));
    }
    if (all || o.figure == "f1-vs-tn") {
        known = true;
        write_curve_file(o.common, f1opt::f1_surface(f1opt::SurfaceKind::f1_vs_tn,
                                                     o.fixed, o.positives, o.total,
                                                     o.points));
    }
    if (all || o.figure == "uninformative") {
        known = true;
        std::vector<double> rates;
        for (int i = 1; i < 100; ++i) {
            rates.push_back(static_cast<double>(i) / 100.0);
        }
        write_curve_file(o.common, f1opt::uninformative_limit_curve(rates));
    }
    if (all || o.figure == "winners-curse") {
        known = true;
        f1opt::CurseConfig config;
        config.seed = o.seed;
        const f1opt::CurseResult result = f1opt::run_curse_simulation(config);
        f1opt::CurveTable table;
        table.name = "winners-curse-fractions";
        table.columns = {"bin_low", "bin_high", "count"};
        const double width = 1.0 / static_cast<double>(f1opt::kCurseHistogramBins);
        for (std::size_t k = 0; k < result.fraction_histogram.size(); ++k) {
            table.rows.push_back({width * static_cast<double>(k),
                                  width * static_cast<double>(k + 1),
                                  static_cast<double>(result.fraction_histogram[k])});
        }
        write_curve_file(o.common, table);
    }
    if (!known) {
        throw std::runtime_error("unknown figure selector: " + o.figure);
    }
    write_manifest(o.common, "curves",
                   {{"figure", o.figure}, {"positives", o.positives},
                    {"total", o.total}, {"fixed", o.fixed}, {"points", o.points},
                    {"seed", o.seed}});
    return kExitOk;
}

// ---- casestudy -------------------------------------------------------------

struct CaseStudyOpts {
    Common common;
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_casestudy(CaseStudyOpts& o) {
    std::ifstream in(o.config_path);
    if (!in) {
        throw std::runtime_error("cannot open " + o.config_path);
    }
    const json spec = json::parse(in);

    f1opt::CaseStudyConfig config;
    config.instances = spec.at("instances").get<std::size_t>();
    if (o.seed_set) {
        config.seed = o.seed;
    } else if (spec.contains("seed")) {
        config.seed = spec.at("seed").get<std::uint64_t>();
    } else {
        throw std::runtime_error("a seed is required: set --seed or \"seed\"");
    }
    for (const auto& label : spec.at("labels")) {
        f1opt::CaseStudyLabelSpec s;
        s.base_rate = label.at("base_rate").get<double>();
        s.theta = label.at("theta").get<double>();
        config.labels.push_back(s);
    }

    const f1opt::CaseStudyData data = f1opt::generate_case_study(config);
    const f1opt::CaseStudyReport report = f1opt::run_case_study(config);
    {
        std::ofstream out = open_output(o.common, "gold.csv");
        f1opt::write_label_matrix(out, data.gold);
    }
    {
        std::ofstream out = open_output(o.common, "scores.csv");
        f1opt::write_score_matrix(out, data.scores);
    }
    {
        std::ofstream out = open_output(o.common, "table.csv");
        out << "label,base_rate,theta,gold_positives,macro_threshold,"
               "macro_predicted,macro_f1,micro_threshold,micro_predicted,"
               "pathological\n";
        for (const f1opt::CaseStudyRow& row : report.rows) {
            out << row.label << ',' << f1opt::format_double(row.base_rate) << ','
                << f1opt::format_double(row.theta) << ',' << row.gold_positives
                << ',' << f1opt::format_double(row.macro_threshold) << ','
                << row.macro_predicted << ',' << f1opt::format_double(row.macro_f1)
                << ',' << f1opt::format_double(row.micro_threshold) << ','
                << row.micro_predicted << ',' << (row.pathological ? 1 : 0)
                << '\n';
        }
    }
    std::size_t flagged = 0;
    for (const f1opt::CaseStudyRow& row : report.rows) {
        flagged += row.pathological;
    }
    std::cout << "labels: " << report.rows.size() << '\n'
              << "pathological: " << flagged << '\n'
              << "macro_achieved: " << f1opt::format_double(report.macro_achieved)
              << '\n'
              << "micro_achieved: " << f1opt::format_double(report.micro_achieved)
              << '\n';
    write_manifest(o.common, "casestudy",
                   {{"config", o.config_path}, {"instances", config.instances},
                    {"seed", config.seed}, {"labels", config.labels.size()}});
    if (!report.micro_converged) {
        std::cerr << "warning: micro tuning hit the pass limit\n";
        return kExitWarnings;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"F1-optimal decision thresholding toolkit"};
    app.require_subcommand(1);

    EvalOpts eval_opts;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "Score a prediction matrix against gold labels");
    add_common_options(eval_cmd, eval_opts.common);
    eval_cmd->add_option("--pred", eval_opts.pred_path, "Prediction CSV (0/1)")
        ->required();
    eval_cmd->add_option("--gold", eval_opts.gold_path, "Gold CSV (0/1)")
        ->required();
    eval_cmd->add_flag("--json", eval_opts.as_json, "Print the report as JSON");

    TuneOpts tune_opts;
    CLI::App* tune_cmd =
        app.add_subcommand("tune", "Choose thresholds that maximize an F1 variant");
    add_common_options(tune_cmd, tune_opts.common);
    tune_cmd->add_option("--objective", tune_opts.objective, "Metric to tune")
        ->check(CLI::IsMember({"micro", "macro", "instance"}));
    tune_cmd->add_option("--scores", tune_opts.scores_path, "Score CSV")->required();
    tune_cmd->add_option("--gold", tune_opts.gold_path,
                         "Gold CSV (macro/micro only)");

    GfmOpts gfm_opts;
    CLI::App* gfm_cmd = app.add_subcommand(
        "gfm", "Maximize expected F1 from calibrated probabilities, row by row");
    add_common_options(gfm_cmd, gfm_opts.common);
    gfm_cmd->add_option("--probs", gfm_opts.probs_path,
                        "CSV with one probability vector per row")
        ->required();
    gfm_cmd->add_flag("--oracle", gfm_opts.oracle,
                      "Cross-check every row against exhaustive enumeration");

    SimulateOpts sim_opts;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Fit thresholds to uninformative scores, many trials");
    add_common_options(sim_cmd, sim_opts.common);
    sim_cmd->add_option("-b,--base-rate", sim_opts.base_rates,
                        "Positive-class rate (repeatable)");
    CLI::Option* samples_opt =
        sim_cmd->add_option("-n,--samples", sim_opts.samples, "Batch size per trial");
    CLI::Option* trials_opt =
        sim_cmd->add_option("--trials", sim_opts.trials, "Number of trials");
    sim_cmd->add_option("--sigma", sim_opts.sigma, "Score noise std deviation");
    sim_cmd->add_option("--seed", sim_opts.seed, "Run seed")->required();
    sim_cmd->add_flag("--paper-scale", sim_opts.paper_scale,
                      "Default to 10000 trials of 10^6 samples");

    CurvesOpts curves_opts;
    CLI::App* curves_cmd =
        app.add_subcommand("curves", "Emit figure data tables as CSV");
    add_common_options(curves_cmd, curves_opts.common);
    curves_cmd
        ->add_option("--figure", curves_opts.figure,
                     "f1-vs-tp | accuracy-vs-tp | f1-vs-tn | uninformative | "
                     "winners-curse | all")
        ->required();
    curves_cmd->add_option("--positives", curves_opts.positives,
                           "Actual positive count");
    curves_cmd->add_option("--total", curves_opts.total, "Total instance count");
    curves_cmd->add_option("--fixed", curves_opts.fixed,
                           "Fixed fp (or fn) values, repeatable");
    curves_cmd->add_option("--points", curves_opts.points, "Sweep resolution");
    curves_cmd->add_option("--seed", curves_opts.seed,
                           "Seed for the winners-curse figure");

    CaseStudyOpts case_opts;
    CLI::App* case_cmd = app.add_subcommand(
        "casestudy", "Generate a synthetic corpus and tune macro vs micro");
    add_common_options(case_cmd, case_opts.common);
    case_cmd->add_option("--config", case_opts.config_path,
                         "JSON config: instances, seed, labels[{base_rate,theta}]")
        ->required();
    CLI::Option* seed_opt =
        case_cmd->add_option("--seed", case_opts.seed, "Overrides the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return kExitInputError;
    }

    sim_opts.samples_set = samples_opt->count() > 0;
    sim_opts.trials_set = trials_opt->count() > 0;
    case_opts.seed_set = seed_opt->count() > 0;

    try {
        if (eval_cmd->parsed()) {
            return run_eval(eval_opts);
        }
        if (tune_cmd->parsed()) {
            return run_tune(tune_opts);
        }
        if (gfm_cmd->parsed()) {
            return run_gfm(gfm_opts);
        }
        if (sim_cmd->parsed()) {
            return run_simulate(sim_opts);
        }
        if (curves_cmd->parsed()) {
            return run_curves(curves_opts);
        }
        if (case_cmd->parsed()) {
            return run_casestudy(case_opts);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
