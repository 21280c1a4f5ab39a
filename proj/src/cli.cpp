#include "dbnb/cli.hpp"

#include "dbnb/benchmark.hpp"
#include "dbnb/boosting.hpp"
#include "dbnb/error.hpp"
#include "dbnb/evaluation.hpp"
#include "dbnb/inference.hpp"
#include "dbnb/model_io.hpp"
#include "dbnb/topology.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace dbnb {

namespace {

struct TrainArgs {
    std::string data;
    std::string schema;
    std::string bins;
    double alpha = 2.0;
    std::size_t max_rounds = 500;
    double tag_gain = 0.25;
    std::optional<double> epsilon;
    std::optional<std::size_t> train_count;
    std::optional<std::uint64_t> seed;
    std::string out = "model.json";
    bool quiet = false;
};

struct EvaluateArgs {
    std::string model;
    std::string data;
    std::string format = "text";
    std::optional<std::size_t> train_count;
    std::string part = "test";
    std::optional<std::uint64_t> seed;
};

struct PredictArgs {
    std::string model;
    std::string input = "-";
};

struct RunArgs {
    std::string spec;
    std::size_t parallel = 1;
    std::string out;
    std::string format = "text";
};

struct InspectArgs {
    std::string model;
};

Dataset pick_part(const Dataset& data, const std::optional<std::size_t>& train_count,
                  const std::optional<std::uint64_t>& seed, const std::string& part) {
    if (!train_count) return data;
    auto [train_set, test_set] = split_dataset(data, *train_count, seed);
    return part == "train" ? train_set : test_set;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot write '" + path + "'");
    f << text;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
    const auto schema = load_schema(a.schema);
    const auto data = parse_table(a.data, schema.schema, schema.options);
    const auto trainset = pick_part(data, a.train_count, a.seed, "train");

    TrainConfig config;
    config.alpha = a.alpha;
    config.max_rounds = a.max_rounds;
    config.tag_gain = a.tag_gain;
    config.epsilon_floor = a.epsilon;
    if (!a.bins.empty()) config.topology = parse_topology(a.bins);

    out << fmt::format("training on {} examples ({} rows with missing values dropped)\n", trainset.size(),
                       data.dropped_rows);
    EpochObserver observer;
    if (!a.quiet) observer = [&](std::size_t epoch, std::size_t errors) {
        out << fmt::format("epoch {} errors {}\n", epoch, errors);
    };
    Model model = train(trainset, config, observer);
    model.input_format = schema.options;

    if (model.trace.converged())
        out << fmt::format("converged after {} epochs\n", *model.trace.converged_epoch);
    else
        out << fmt::format("stopped after {} epochs without converging\n", model.trace.epochs());
    out << fmt::format("topology {}\n", to_string(model.topology()));
    out << "training accuracy " << render_text(evaluate(model, trainset));
    save_model(model, a.out);
    out << fmt::format("model written to {}\n", a.out);
    return exit_ok;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
    const Model model = load_model(a.model);
    const auto data = parse_table(a.data, model.schema(), model.input_format);
    const auto report = evaluate(model, pick_part(data, a.train_count, a.seed, a.part));
    out << (a.format == "machine" ? render_machine(report) + "\n" : render_text(report));
    return exit_ok;
}

int cmd_predict(const PredictArgs& a, std::istream& in, std::ostream& out) {
    const Model model = load_model(a.model);
    std::ifstream file;
    if (a.input != "-") {
        file.open(a.input);
        if (!file) throw ArgumentError("cannot open input '" + a.input + "'");
    }
    std::istream& src = a.input == "-" ? in : file;

    bool failed = false;
    std::string line;
    for (std::size_t line_no = 1; std::getline(src, line); ++line_no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto row = parse_row(model.schema(), model.input_format, line, line_no, false);
            if (row.missing) throw ParseError("missing value", line_no);
            const auto p = posterior(model, row.values);
            out << fmt::format("{} p=[{:.6g}]\n", model.schema().classes[p.winner], fmt::join(p.probabilities, ","));
        } catch (const Error& e) {
            out << "error " << e.what() << "\n";
            failed = true;
        }
    }
    return failed ? exit_failure : exit_ok;
}

int cmd_search(const RunArgs& a, std::ostream& out) {
    auto job = load_search_job(a.spec);
    job.spec.parallelism = a.parallel;
    out << fmt::format("searching: {} training / {} validation examples, budget {}\n", job.train.size(),
                       job.validation.size(), job.spec.budget);
    std::size_t n = 0;
    const auto result = coordinate_search(job.train, job.validation, job.spec, job.config, [&](const Trial& t) {
        out << fmt::format("trial {} {} validation {} train {} epochs {}{}\n", ++n, to_string(t.topology),
                           format_percent(t.validation_accuracy), format_percent(t.train_accuracy), t.epochs,
                           t.converged ? " converged" : "");
    });
    out << fmt::format("best {} validation {}{}\n", to_string(result.best), format_percent(result.best_accuracy),
                       result.truncated ? " (budget exhausted)" : "");
    if (!a.out.empty()) write_text(a.out, render_search_json(result));
    return exit_ok;
}

int cmd_benchmark(const RunArgs& a, std::ostream& out) {
    const auto report = run_benchmark(load_suite(a.spec), a.parallel);
    out << (a.format == "json" ? render_suite_json(report) : render_suite_text(report));
    if (!a.out.empty()) write_text(a.out, render_suite_json(report));
    return report.passed() ? exit_ok : exit_failure;
}

int cmd_inspect(const InspectArgs& a, std::ostream& out) {
    const Model model = load_model(a.model);
    const auto& schema = model.schema();
    out << fmt::format("classes {}\n", fmt::join(schema.classes, " "));
    out << fmt::format("topology {}\n", to_string(model.topology()));
    out << fmt::format("training examples {}\n", model.density.joint.n_train());
    for (std::size_t m = 0; m < schema.attribute_count(); ++m) {
        const auto& b = model.density.bins[m];
        out << fmt::format("  {:<24} {:<11} {:>3} bins over [{}, {}]\n", schema.attributes[m].name,
                           to_string(schema.attributes[m].kind), b.count, b.min, b.max);
    }
    const auto& w = model.weights.raw();
    const auto boosted = std::count_if(w.begin(), w.end(), [](double x) { return x > 1.0; });
    out << fmt::format("weights: {} cells, {} boosted, max {}\n", w.size(), boosted,
                       w.empty() ? 1.0 : *std::max_element(w.begin(), w.end()));
    out << fmt::format("alpha {} tag gain {} epsilon {}\n", model.config.alpha, model.gate.tag_gain, model.gate.epsilon);
    out << fmt::format("epochs {} {}\n", model.trace.epochs(),
                       model.trace.converged() ? "converged" : "not converged");
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discretized naive Bayes network with boosted connection weights"};
    app.name("dbnb");
    app.require_subcommand(1);

    TrainArgs ta;
    auto* train_cmd = app.add_subcommand("train", "Fit a model and write it to a file");
    train_cmd->add_option("--data", ta.data, "Labeled data file")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--schema", ta.schema, "Schema file describing the data")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--bins", ta.bins, "Bin counts, one per attribute (8,5,...) or a single uniform value");
    train_cmd->add_option("--alpha", ta.alpha, "Boosting step size")->capture_default_str();
    train_cmd->add_option("--max-rounds", ta.max_rounds, "Epoch limit")->capture_default_str();
    train_cmd->add_option("--tag-gain", ta.tag_gain, "Likelihood factor on tag violation; 1 disables gating")
        ->capture_default_str();
    train_cmd->add_option("--epsilon", ta.epsilon, "Probability of an empty cell (default 1/(10 n))");
    train_cmd->add_option("--train-count", ta.train_count, "Train on the first N examples only");
    train_cmd->add_option("--seed", ta.seed, "Shuffle before taking --train-count examples");
    train_cmd->add_option("--out", ta.out, "Model file to write")->capture_default_str();
    train_cmd->add_flag("--quiet", ta.quiet, "Omit per-epoch lines");

    EvaluateArgs ea;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a model on labeled data");
    eval_cmd->add_option("--model", ea.model, "Model file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--data", ea.data, "Labeled data file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--format", ea.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    eval_cmd->add_option("--train-count", ea.train_count, "Split the data as train does");
    eval_cmd->add_option("--part", ea.part, "Which side of the split to score")
        ->check(CLI::IsMember({"train", "test"}))
        ->capture_default_str();
    eval_cmd->add_option("--seed", ea.seed, "Shuffle seed used with --train-count");

    PredictArgs pa;
    auto* predict_cmd = app.add_subcommand("predict", "Classify rows, with or without labels");
    predict_cmd->add_option("--model", pa.model, "Model file")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--input", pa.input, "Row file, - for standard input")->capture_default_str();

    RunArgs sa;
    auto* search_cmd = app.add_subcommand("search", "Search per-attribute bin counts");
    search_cmd->add_option("--spec", sa.spec, "Search spec (JSON)")->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--parallel", sa.parallel, "Concurrent trainings")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search_cmd->add_option("--out", sa.out, "Write the trial log as JSON");

    RunArgs ba;
    auto* bench_cmd = app.add_subcommand("benchmark", "Run a suite of experiments against expected metrics");
    bench_cmd->add_option("--suite", ba.spec, "Suite file (JSON)")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--parallel", ba.parallel, "Concurrent experiments")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--out", ba.out, "Write the report as JSON");
    bench_cmd->add_option("--format", ba.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    InspectArgs ia;
    auto* inspect_cmd = app.add_subcommand("inspect", "Summarise a model file");
    inspect_cmd->add_option("--model", ia.model, "Model file")->required()->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (train_cmd->parsed()) return cmd_train(ta, out);
        if (eval_cmd->parsed()) return cmd_evaluate(ea, out);
        if (predict_cmd->parsed()) return cmd_predict(pa, in, out);
        if (search_cmd->parsed()) return cmd_search(sa, out);
        if (bench_cmd->parsed()) return cmd_benchmark(ba, out);
        if (inspect_cmd->parsed()) return cmd_inspect(ia, out);
    } catch (const std::exception& e) {
        err << "dbnb: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}

}  // namespace dbnb
