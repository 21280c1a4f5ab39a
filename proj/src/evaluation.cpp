#include "dbnb/evaluation.hpp"

#include "dbnb/error.hpp"
#include "dbnb/inference.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

namespace dbnb {

double Report::accuracy() const {
    if (n_examples == 0) return 0.0;
    return 100.0 * static_cast<double>(n_correct) / static_cast<double>(n_examples);
}

std::vector<std::size_t> Report::per_class_correct() const {
    std::vector<std::size_t> out(confusion.size());
    for (std::size_t k = 0; k < confusion.size(); ++k) out[k] = confusion[k][k];
    return out;
}

std::vector<std::size_t> Report::per_class_total() const {
    std::vector<std::size_t> out(confusion.size(), 0);
    for (std::size_t k = 0; k < confusion.size(); ++k)
        for (auto c : confusion[k]) out[k] += c;
    return out;
}

Report evaluate(const Model& model, const Dataset& data) {
    if (data.empty()) throw ArgumentError("cannot evaluate on an empty dataset");
    if (!(data.schema == model.schema())) throw ArgumentError("dataset schema does not match the model");
    const std::size_t k_count = model.schema().class_count();

    Report r;
    r.classes = model.schema().classes;
    r.confusion.assign(k_count, std::vector<std::size_t>(k_count, 0));
    for (const auto& ex : data.examples) {
        const auto p = posterior(model, ex.values);
        ++r.confusion[ex.label][p.winner];
        ++r.n_examples;
        if (p.winner == ex.label) ++r.n_correct;
        if (p.tie) ++r.ties;
    }
    return r;
}

std::string format_percent(double value) { return fmt::format("{:.2f}", value); }

std::string render_text(const Report& report, std::string_view title) {
    std::string out;
    if (!title.empty()) out += fmt::format("{} ({})\n", title, report.n_examples);
    out += fmt::format("{} : {} %\n", fmt::join(report.per_class_correct(), ", "), format_percent(report.accuracy()));

    std::size_t width = 9;
    for (const auto& c : report.classes) width = std::max(width, c.size() + 1);
    out += fmt::format("{:>{}}", "true\\pred", width);
    for (const auto& c : report.classes) out += fmt::format("{:>{}}", c, width);
    out += '\n';
    for (std::size_t k = 0; k < report.confusion.size(); ++k) {
        out += fmt::format("{:>{}}", report.classes[k], width);
        for (auto c : report.confusion[k]) out += fmt::format("{:>{}}", c, width);
        out += '\n';
    }
    if (report.ties) out += fmt::format("ties broken by class order: {}\n", report.ties);
    return out;
}

std::string render_machine(const Report& report) {
    std::vector<std::string> rows;
    rows.reserve(report.confusion.size());
    for (const auto& row : report.confusion) rows.push_back(fmt::format("{}", fmt::join(row, ",")));
    return fmt::format("n_examples={} n_correct={} per_class_correct={} accuracy={} ties={} confusion={}",
                       report.n_examples, report.n_correct, fmt::join(report.per_class_correct(), ","),
                       format_percent(report.accuracy()), report.ties, fmt::join(rows, ";"));
}

}  // namespace dbnb
