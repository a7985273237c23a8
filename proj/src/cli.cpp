#include "betasig/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "betasig/beta_model.hpp"
#include "betasig/dataset.hpp"
#include "betasig/divergence.hpp"
#include "betasig/errors.hpp"
#include "betasig/regularizer.hpp"
#include "betasig/report.hpp"
#include "betasig/signals.hpp"
#include "betasig/stability.hpp"
#include "betasig/version.hpp"

namespace betasig::io {

namespace {

using nlohmann::ordered_json;

struct FitContext {
    Dataset dataset;
    SignalPair pair;
    double prevalence;
};

FitContext fit_from_file(const std::string& path) {
    Dataset ds = load_csv(path);
    SignalPair pair = fit_signal_pair(ds.samples);
    std::size_t positives = 0;
    for (const ScoredSample& s : ds.samples) positives += s.label == 1 ? 1 : 0;
    const double prevalence =
        static_cast<double>(positives) / static_cast<double>(ds.samples.size());
    return {std::move(ds), pair, prevalence};
}

MetricKind parse_metric_kind(const std::string& name) {
    if (name == "accuracy") return MetricKind::accuracy;
    if (name == "precision") return MetricKind::precision;
    if (name == "recall") return MetricKind::recall;
    if (name == "f1") return MetricKind::f1;
    if (name == "mcc") return MetricKind::mcc;
    throw DomainError("unknown metric '" + name +
                      "' (expected accuracy|precision|recall|f1|mcc)");
}

SeparationMetric parse_separation_metric(const std::string& name) {
    if (name == "js_distance") return SeparationMetric::js_distance;
    if (name == "l1") return SeparationMetric::l1;
    throw DomainError("unknown bound metric '" + name + "' (expected js_distance|l1)");
}

void emit_sweep_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
    out << "threshold,accuracy,precision,recall,f1,mcc\n";
    for (const MetricRow& row : rows) {
        out << format_double(row.threshold) << ',' << format_optional(row.metrics.accuracy)
            << ',' << format_optional(row.metrics.precision) << ','
            << format_optional(row.metrics.recall) << ','
            << format_optional(row.metrics.f1) << ',' << format_optional(row.metrics.mcc)
            << '\n';
    }
}

void emit_curves_csv(std::ostream& out, const ClassCurves& curves) {
    out << "bin_lo,bin_hi,tr_density,fr_density\n";
    for (std::size_t i = 0; i < curves.tr.size(); ++i) {
        out << format_double(curves.tr[i].lo) << ',' << format_double(curves.tr[i].hi)
            << ',' << format_double(curves.tr[i].density) << ','
            << format_double(curves.fr[i].density) << '\n';
    }
}

void emit_history_csv(std::ostream& out, const std::vector<EpochStats>& history) {
    out << "epoch,loss,accuracy,mcc,kl_separation\n";
    for (const EpochStats& e : history) {
        out << e.epoch << ',' << format_double(e.loss) << ',' << format_double(e.accuracy)
            << ',' << format_optional(e.mcc) << ',' << format_double(e.kl_separation)
            << '\n';
    }
}

void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

struct CommandArgs {
    std::string input;
    bool as_json = false;
    double lp_order = 1.0;
    std::vector<double> grid;
    std::string metric = "accuracy";
    double threshold = 0.5;
    double step = kDefaultDerivativeStep;
    double mass = 0.95;
    double epsilon = 0.01;
    double concentration = 20.0;
    std::string bound_metric = "js_distance";
    int trials = 200;
    std::uint64_t seed = 0;
    double lambda = 0.1;
    double lr = 0.5;
    int epochs = 60;
    std::uint64_t train_seed = 42;
    int samples = 400;
    int bins = 20;
};

int cmd_fit(const CommandArgs& a, std::ostream& out) {
    const FitContext ctx = fit_from_file(a.input);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ctx.dataset, "fit");
        j["fit"] = fit_section(ctx.pair, ctx.prevalence);
        emit_json(out, j);
        return kExitOk;
    }
    out << "tr: alpha=" << format_double(ctx.pair.tr.alpha)
        << " beta=" << format_double(ctx.pair.tr.beta) << '\n';
    out << "fr: alpha=" << format_double(ctx.pair.fr.alpha)
        << " beta=" << format_double(ctx.pair.fr.beta) << '\n';
    out << "prevalence=" << format_double(ctx.prevalence) << '\n';
    return kExitOk;
}

int cmd_kl(const CommandArgs& a, std::ostream& out) {
    const FitContext ctx = fit_from_file(a.input);
    const DivergenceReport rep = divergence_report(ctx.pair.tr, ctx.pair.fr, a.lp_order);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ctx.dataset, "kl");
        j["fit"] = fit_section(ctx.pair, ctx.prevalence);
        j["divergence"] = divergence_section(rep);
        emit_json(out, j);
        return kExitOk;
    }
    out << "kl_forward=" << format_double(rep.kl_forward) << '\n';
    out << "kl_reverse=" << format_double(rep.kl_reverse) << '\n';
    out << "js=" << format_double(rep.js) << '\n';
    out << "lp_order=" << format_double(rep.lp_order) << '\n';
    out << "lp=" << format_double(rep.lp) << '\n';
    out << "overlap=" << format_double(rep.overlap) << '\n';
    return kExitOk;
}

int cmd_sweep(const CommandArgs& a, std::ostream& out) {
    std::vector<double> grid = a.grid.empty() ? default_threshold_grid() : a.grid;
    // grid values come from flags, so problems are usage errors
    double prev = -1.0;
    for (double t : grid) {
        if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
            throw DomainError("--grid values must lie in [0,1]");
        }
        if (t <= prev) {
            throw DomainError("--grid values must be strictly increasing");
        }
        prev = t;
    }
    const Dataset ds = load_csv(a.input);
    const std::vector<MetricRow> rows = sweep(ds.samples, grid);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ds, "sweep");
        j["sweep"] = sweep_section(rows);
        emit_json(out, j);
        return kExitOk;
    }
    emit_sweep_csv(out, rows);
    return kExitOk;
}

int cmd_stability(const CommandArgs& a, std::ostream& out) {
    const MetricKind kind = parse_metric_kind(a.metric);
    const FitContext ctx = fit_from_file(a.input);
    const SmoothModel model{ctx.pair.tr, ctx.pair.fr, ctx.prevalence};
    const std::optional<StabilityReport> rep =
        metric_derivatives(model, kind, a.threshold, a.step);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ctx.dataset, "stability");
        j["fit"] = fit_section(ctx.pair, ctx.prevalence);
        j["stability"] = stability_section(kind, a.threshold, a.step, rep);
        emit_json(out, j);
        return kExitOk;
    }
    out << "metric=" << metric_kind_name(kind) << '\n';
    out << "threshold=" << format_double(a.threshold) << '\n';
    out << "step=" << format_double(a.step) << '\n';
    if (rep) {
        out << "value=" << format_double(rep->value) << '\n';
        out << "first_derivative=" << format_double(rep->first_derivative) << '\n';
        out << "second_derivative=" << format_double(rep->second_derivative) << '\n';
        out << "flagged_steep=" << (rep->flagged_steep ? "true" : "false") << '\n';
    } else {
        out << "value=NA\nfirst_derivative=NA\nsecond_derivative=NA\nflagged_steep=NA\n";
    }
    return kExitOk;
}

int cmd_risk(const CommandArgs& a, std::ostream& out) {
    const FitContext ctx = fit_from_file(a.input);
    const CredibleInterval tr = credible_interval(ctx.pair.tr, a.mass);
    const CredibleInterval fr = credible_interval(ctx.pair.fr, a.mass);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ctx.dataset, "risk");
        j["fit"] = fit_section(ctx.pair, ctx.prevalence);
        j["credible_intervals"] = intervals_section(a.mass, tr, fr);
        emit_json(out, j);
        return kExitOk;
    }
    out << "mass=" << format_double(a.mass) << '\n';
    out << "tr_lo=" << format_double(tr.lo) << '\n';
    out << "tr_hi=" << format_double(tr.hi) << '\n';
    out << "fr_lo=" << format_double(fr.lo) << '\n';
    out << "fr_hi=" << format_double(fr.hi) << '\n';
    return kExitOk;
}

int cmd_overlap(const CommandArgs& a, std::ostream& out) {
    const FitContext ctx = fit_from_file(a.input);
    const double ov = overlap_area(ctx.pair.tr, ctx.pair.fr);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ctx.dataset, "overlap");
        j["fit"] = fit_section(ctx.pair, ctx.prevalence);
        j["divergence"] = {{"kl_forward", nullptr}, {"kl_reverse", nullptr},
                           {"js", nullptr},         {"lp", nullptr},
                           {"lp_order", nullptr},   {"overlap", ov}};
        emit_json(out, j);
        return kExitOk;
    }
    out << "overlap=" << format_double(ov) << '\n';
    return kExitOk;
}

int cmd_bounds_check(const CommandArgs& a, std::ostream& out) {
    const SeparationMetric metric = parse_separation_metric(a.bound_metric);
    const FitContext ctx = fit_from_file(a.input);
    const BoundsReport rep = check_separation_bounds(ctx.pair.tr, ctx.pair.fr, a.epsilon,
                                                     a.concentration, metric);
    std::optional<BoundsMcSummary> mc;
    if (a.trials > 0) {
        mc = separation_bounds_mc(a.epsilon, a.concentration, metric, a.trials, a.seed);
    }
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ctx.dataset, "bounds-check");
        j["fit"] = fit_section(ctx.pair, ctx.prevalence);
        j["bounds"] = bounds_section(a.epsilon, a.concentration, metric, rep, mc);
        emit_json(out, j);
        return kExitOk;
    }
    out << "epsilon=" << format_double(a.epsilon) << '\n';
    out << "concentration=" << format_double(a.concentration) << '\n';
    out << "metric=" << separation_metric_name(metric) << '\n';
    out << "d_RL=" << format_double(rep.d_RL) << '\n';
    out << "d_PQ=" << format_double(rep.d_PQ) << '\n';
    out << "d_LP=" << format_double(rep.d_LP) << '\n';
    out << "d_QR=" << format_double(rep.d_QR) << '\n';
    out << "upper_bound_rhs=" << format_double(rep.upper_bound_rhs) << '\n';
    out << "lower_holds=" << (rep.lower_holds ? "true" : "false") << '\n';
    out << "upper_holds=" << (rep.upper_holds ? "true" : "false") << '\n';
    if (mc) {
        out << "trials=" << mc->trials << '\n';
        out << "seed=" << mc->seed << '\n';
        out << "lower_violations=" << mc->lower_violations << '\n';
        out << "upper_violations=" << mc->upper_violations << '\n';
        out << "min_lower_margin=" << format_double(mc->min_lower_margin) << '\n';
        out << "min_upper_margin=" << format_double(mc->min_upper_margin) << '\n';
    }
    return kExitOk;
}

int cmd_train_demo(const CommandArgs& a, std::ostream& out) {
    const DemoDataset data = make_demo_dataset(a.samples, a.train_seed);
    DemoTrainConfig config;
    config.lambda = a.lambda;
    config.learning_rate = a.lr;
    config.epochs = a.epochs;
    config.seed = a.train_seed;
    const DemoTrainResult result = demo_train(data.features, data.labels, config);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(nullptr, "train-demo");
        j["history"] = history_section(result.history);
        emit_json(out, j);
        return kExitOk;
    }
    emit_history_csv(out, result.history);
    return kExitOk;
}

int cmd_curves(const CommandArgs& a, std::ostream& out) {
    const Dataset ds = load_csv(a.input);
    const ClassCurves curves = empirical_curves(ds.samples, a.bins);
    if (a.as_json) {
        ordered_json j = make_report_skeleton(&ds, "curves");
        j["curves"] = curves_section(curves);
        emit_json(out, j);
        return kExitOk;
    }
    emit_curves_csv(out, curves);
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parametric continuous-signal analysis of binary classifier scores"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    CommandArgs a;

    const auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", a.input, "input CSV with header 'score,label'")
            ->required();
    };
    const auto add_json = [&](CLI::App* sub) {
        sub->add_flag("--json", a.as_json, "emit the analysis report as JSON");
    };

    CLI::App* fit = app.add_subcommand("fit", "fit TR/FR Beta parameters");
    add_input(fit);
    add_json(fit);

    CLI::App* kl = app.add_subcommand("kl", "divergences between the fitted TR/FR pair");
    add_input(kl);
    add_json(kl);
    kl->add_option("--order", a.lp_order, "order of the Lp distance (default 1)");

    CLI::App* sw = app.add_subcommand("sweep", "threshold sweep of confusion-matrix metrics");
    add_input(sw);
    add_json(sw);
    sw->add_option("--grid", a.grid,
                   "explicit thresholds (default: 101 uniform in [0,1])");

    CLI::App* st = app.add_subcommand("stability", "metric derivatives under the smooth model");
    add_input(st);
    add_json(st);
    st->add_option("--metric", a.metric, "accuracy|precision|recall|f1|mcc");
    st->add_option("--threshold", a.threshold, "evaluation threshold")->required();
    st->add_option("--step", a.step, "finite-difference step (default 1e-4)");

    CLI::App* risk = app.add_subcommand("risk", "equal-tail credible intervals for TR/FR");
    add_input(risk);
    add_json(risk);
    risk->add_option("--mass", a.mass, "interval mass (default 0.95)");

    CLI::App* ov = app.add_subcommand("overlap", "intersection area of the TR/FR densities");
    add_input(ov);
    add_json(ov);

    CLI::App* bc = app.add_subcommand(
        "bounds-check", "extremal-separation bound report for the fitted pair");
    add_input(bc);
    add_json(bc);
    bc->add_option("--epsilon", a.epsilon, "epsilon-Beta shape ratio bound (default 0.01)");
    bc->add_option("--concentration", a.concentration,
                   "epsilon-Beta scale (default 20)");
    bc->add_option("--metric", a.bound_metric, "js_distance|l1");
    bc->add_option("--trials", a.trials, "Monte-Carlo pair count (default 200, 0 disables)");
    bc->add_option("--seed", a.seed, "Monte-Carlo seed");

    CLI::App* td = app.add_subcommand("train-demo",
                                      "logistic trainer with the KL separation term");
    add_json(td);
    td->add_option("--lambda", a.lambda, "separation weight (default 0.1)");
    td->add_option("--lr", a.lr, "learning rate (default 0.5)");
    td->add_option("--epochs", a.epochs, "full-batch epochs (default 60)");
    td->add_option("--seed", a.train_seed, "data and init seed (default 42)");
    td->add_option("--samples", a.samples, "synthetic sample count (default 400)");

    CLI::App* cv = app.add_subcommand("curves", "TR/FR histogram densities");
    add_input(cv);
    add_json(cv);
    cv->add_option("--bins", a.bins, "histogram bin count (default 20)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back(kToolName);
    for (const std::string& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        err << "run with --help for the command list\n";
        return kExitUsage;
    }

    try {
        if (fit->parsed()) return cmd_fit(a, out);
        if (kl->parsed()) return cmd_kl(a, out);
        if (sw->parsed()) return cmd_sweep(a, out);
        if (st->parsed()) return cmd_stability(a, out);
        if (risk->parsed()) return cmd_risk(a, out);
        if (ov->parsed()) return cmd_overlap(a, out);
        if (bc->parsed()) return cmd_bounds_check(a, out);
        if (td->parsed()) return cmd_train_demo(a, out);
        if (cv->parsed()) return cmd_curves(a, out);
        err << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? argc - 1 : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace betasig::io
