#include "dbnb/benchmark.hpp"

#include "dbnb/boosting.hpp"
#include "dbnb/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace dbnb {

using nlohmann::json;

namespace {

Topology topology_from_json(const json& j) {
    if (j.is_number_unsigned()) return Topology{{j.get<std::size_t>()}};
    if (j.is_string()) return parse_topology(j.get<std::string>());
    if (j.is_array()) return Topology{j.get<std::vector<std::size_t>>()};
    throw ParseError("\"bins\" must be a number, a string or an array");
}

MetricCheck check_from_json(const json& j) {
    MetricCheck c;
    c.metric = j.at("metric").get<std::string>();
    if (j.contains("min")) c.min = j.at("min").get<double>();
    if (j.contains("max")) c.max = j.at("max").get<double>();
    if (j.contains("reference")) c.reference = j.at("reference").get<double>();
    return c;
}

json check_to_json(const CheckResult& r) {
    json j = {{"metric", r.check.metric}, {"passed", r.passed}, {"value", nullptr}};
    if (r.value) j["value"] = *r.value;
    if (r.check.min) j["min"] = *r.check.min;
    if (r.check.max) j["max"] = *r.check.max;
    if (r.check.reference) j["reference"] = *r.check.reference;
    return j;
}

json report_to_json(const Report& r) {
    return {{"n_examples", r.n_examples},     {"n_correct", r.n_correct},
            {"accuracy", r.accuracy()},       {"per_class_correct", r.per_class_correct()},
            {"confusion", r.confusion},       {"ties", r.ties}};
}

std::string bounds(const MetricCheck& c) {
    if (c.min && c.max) return fmt::format("[{}, {}]", *c.min, *c.max);
    if (c.min) return fmt::format(">= {}", *c.min);
    if (c.max) return fmt::format("<= {}", *c.max);
    return "any";
}

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw ArgumentError(std::string("cannot open ") + what + " '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path data_dir_of(const json& doc, const std::filesystem::path& base_dir) {
    if (const char* env = std::getenv(data_dir_env); env && *env) return env;
    return base_dir / doc.value("data_dir", std::string("."));
}

void read_config(const json& c, TrainConfig& config) {
    config.alpha = c.value("alpha", config.alpha);
    config.max_rounds = c.value("max_rounds", config.max_rounds);
    config.tag_gain = c.value("tag_gain", config.tag_gain);
    if (c.contains("epsilon_floor")) config.epsilon_floor = c.at("epsilon_floor").get<double>();
}

void require_file(const std::filesystem::path& p) {
    if (!std::filesystem::exists(p))
        throw ArgumentError("data file '" + p.string() + "' not found; run tools/fetch_uci.py or set " + data_dir_env);
}

}  // namespace

Suite parse_suite(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("suite file is not valid JSON: ") + e.what());
    }
    try {
        const auto data_dir = data_dir_of(doc, base_dir);

        Suite suite;
        for (const auto& e : doc.at("experiments")) {
            Experiment x;
            x.name = e.at("name").get<std::string>();
            x.schema = base_dir / e.at("schema").get<std::string>();
            x.data = data_dir / e.at("data").get<std::string>();
            if (e.contains("test")) x.test = data_dir / e.at("test").get<std::string>();
            if (e.contains("train_count")) x.train_count = e.at("train_count").get<std::size_t>();
            if (e.contains("seed")) x.seed = e.at("seed").get<std::uint64_t>();
            if (!x.test && !x.train_count)
                throw ParseError("experiment '" + x.name + "' needs either \"test\" or \"train_count\"");
            if (e.contains("bins")) x.config.topology = topology_from_json(e.at("bins"));
            if (e.contains("config")) read_config(e.at("config"), x.config);
            x.config.validate();
            for (const auto& c : e.value("checks", json::array())) x.checks.push_back(check_from_json(c));
            suite.experiments.push_back(std::move(x));
        }
        return suite;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed suite file: ") + e.what());
    }
}

Suite load_suite(const std::filesystem::path& path) {
    return parse_suite(read_file(path, "suite file"), path.parent_path());
}

bool ExperimentResult::passed() const {
    if (!error.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

bool SuiteReport::passed() const {
    for (const auto& r : results)
        if (!r.passed()) return false;
    return true;
}

ExperimentResult run_experiment(const Experiment& x) {
    ExperimentResult r;
    r.name = x.name;
    try {
        require_file(x.data);
        if (x.test) require_file(*x.test);
        const auto schema = load_schema(x.schema);
        const auto start = std::chrono::steady_clock::now();

        Dataset train_set;
        Dataset test_set;
        auto data = parse_table(x.data, schema.schema, schema.options);
        r.metrics["dropped_rows"] = static_cast<double>(data.dropped_rows);
        if (x.test) {
            train_set = std::move(data);
            test_set = parse_table(*x.test, schema.schema, schema.options);
        } else {
            std::tie(train_set, test_set) = split_dataset(data, *x.train_count, x.seed);
        }

        const Model model = train(train_set, x.config);
        r.train_report = evaluate(model, train_set);
        r.test_report = evaluate(model, test_set);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        r.metrics["train_accuracy"] = r.train_report->accuracy();
        r.metrics["test_accuracy"] = r.test_report->accuracy();
        r.metrics["epochs"] = static_cast<double>(model.trace.epochs());
        r.metrics["converged"] = model.trace.converged() ? 1.0 : 0.0;
        r.metrics["wall_seconds"] = seconds;
        r.metrics["train_examples"] = static_cast<double>(train_set.size());
        r.metrics["test_examples"] = static_cast<double>(test_set.size());
    } catch (const std::exception& e) {
        r.error = e.what();
        return r;
    }

    for (const auto& c : x.checks) {
        CheckResult cr{c, std::nullopt, false};
        if (const auto it = r.metrics.find(c.metric); it != r.metrics.end()) {
            cr.value = it->second;
            cr.passed = (!c.min || it->second >= *c.min) && (!c.max || it->second <= *c.max);
        }
        r.checks.push_back(std::move(cr));
    }
    return r;
}

SuiteReport run_benchmark(const Suite& suite, std::size_t parallelism) {
    SuiteReport report;
    report.results.resize(suite.experiments.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < suite.experiments.size(); i = next++)
            report.results[i] = run_experiment(suite.experiments[i]);
    };
    const auto threads = std::min(std::max<std::size_t>(parallelism, 1), suite.experiments.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    return report;
}

std::string render_suite_text(const SuiteReport& report) {
    std::string out;
    std::size_t passed = 0;
    for (const auto& r : report.results) {
        out += fmt::format("[{}] {}\n", r.passed() ? "PASS" : "FAIL", r.name);
        if (!r.error.empty()) {
            out += fmt::format("    error: {}\n", r.error);
        } else {
            out += fmt::format("    train {} : {} %   test {} : {} %   epochs {}{}\n",
                               fmt::join(r.train_report->per_class_correct(), ", "),
                               format_percent(r.train_report->accuracy()),
                               fmt::join(r.test_report->per_class_correct(), ", "),
                               format_percent(r.test_report->accuracy()), r.metrics.at("epochs"),
                               r.metrics.at("converged") > 0 ? " (converged)" : "");
            for (const auto& c : r.checks) {
                const auto value = c.value ? fmt::format("{:.4g}", *c.value) : std::string("missing");
                const auto ref = c.check.reference ? fmt::format("  (reference {})", *c.check.reference) : std::string();
                out += fmt::format("    {} {} = {} expected {}{}\n", c.passed ? "ok  " : "MISS", c.check.metric, value,
                                   bounds(c.check), ref);
            }
        }
        if (r.passed()) ++passed;
    }
    out += fmt::format("{}/{} experiments passed\n", passed, report.results.size());
    return out;
}

std::string render_suite_json(const SuiteReport& report) {
    json results = json::array();
    for (const auto& r : report.results) {
        json j = {{"name", r.name}, {"passed", r.passed()}, {"metrics", r.metrics}};
        if (!r.error.empty()) j["error"] = r.error;
        if (r.train_report) j["train"] = report_to_json(*r.train_report);
        if (r.test_report) j["test"] = report_to_json(*r.test_report);
        json checks = json::array();
        for (const auto& c : r.checks) checks.push_back(check_to_json(c));
        j["checks"] = std::move(checks);
        results.push_back(std::move(j));
    }
    return json{{"passed", report.passed()}, {"results", results}}.dump(2) + "\n";
}

SearchJob parse_search_job(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("search spec is not valid JSON: ") + e.what());
    }
    try {
        const auto data_dir = data_dir_of(doc, base_dir);
        const auto schema = load_schema(base_dir / doc.at("schema").get<std::string>());
        const auto data_path = data_dir / doc.at("data").get<std::string>();
        require_file(data_path);

        SearchJob job;
        auto data = parse_table(data_path, schema.schema, schema.options);
        if (doc.contains("validation")) {
            const auto validation_path = data_dir / doc.at("validation").get<std::string>();
            require_file(validation_path);
            job.train = std::move(data);
            job.validation = parse_table(validation_path, schema.schema, schema.options);
        } else if (doc.contains("train_count")) {
            std::optional<std::uint64_t> seed;
            if (doc.contains("seed")) seed = doc.at("seed").get<std::uint64_t>();
            std::tie(job.train, job.validation) = split_dataset(data, doc.at("train_count").get<std::size_t>(), seed);
        } else {
            throw ParseError("search spec needs either \"validation\" or \"train_count\"");
        }

        std::vector<std::size_t> range{2, 10};
        if (doc.contains("range")) range = doc.at("range").get<std::vector<std::size_t>>();
        if (range.size() != 2) throw ParseError("\"range\" must be [lo, hi]");
        job.spec = make_search_spec(schema.schema, range[0], range[1]);
        const auto candidates = doc.contains("candidates") ? doc.at("candidates") : json::object();
        for (const auto& [name, counts] : candidates.items()) {
            const auto m = schema.schema.attribute_index(name);
            if (!m) throw ParseError("search spec names unknown attribute '" + name + "'");
            job.spec.candidates[*m] = counts.get<std::vector<std::size_t>>();
        }
        job.spec.budget = doc.value("budget", job.spec.budget);
        job.spec.max_passes = doc.value("max_passes", job.spec.max_passes);
        job.spec.exhaustive = doc.value("exhaustive", job.spec.exhaustive);
        if (doc.contains("config")) read_config(doc.at("config"), job.config);
        job.config.validate();
        job.spec.validate(schema.schema);
        return job;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed search spec: ") + e.what());
    }
}

SearchJob load_search_job(const std::filesystem::path& path) {
    return parse_search_job(read_file(path, "search spec"), path.parent_path());
}

std::string render_search_json(const SearchResult& result) {
    json trials = json::array();
    for (const auto& t : result.trials)
        trials.push_back({{"topology", to_string(t.topology)},
                          {"train_accuracy", t.train_accuracy},
                          {"validation_accuracy", t.validation_accuracy},
                          {"epochs", t.epochs},
                          {"converged", t.converged}});
    return json{{"best", to_string(result.best)},
                {"best_accuracy", result.best_accuracy},
                {"truncated", result.truncated},
                {"trials", trials}}
               .dump(2) +
           "\n";
}

}  // namespace dbnb
