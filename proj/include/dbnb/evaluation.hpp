#pragma once

#include "dbnb/dataset.hpp"
#include "dbnb/model.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dbnb {

/// Classification outcome over one dataset.
struct Report {
    std::vector<std::string> classes;
    std::size_t n_examples = 0;
    std::size_t n_correct = 0;
    /// Examples whose winning class was decided by the lowest-index tie-break.
    std::size_t ties = 0;
    /// confusion[true][predicted]
    std::vector<std::vector<std::size_t>> confusion;

    /// Percent, 100 * n_correct / n_examples.
    double accuracy() const;
    std::vector<std::size_t> per_class_correct() const;
    std::vector<std::size_t> per_class_total() const;
};

Report evaluate(const Model& model, const Dataset& data);

/// Two-decimal percentage, e.g. "96.99".
std::string format_percent(double value);

/// "214, 205 : 96.99 %" followed by the confusion matrix.
std::string render_text(const Report& report, std::string_view title = {});

/// Single line of space-separated key=value pairs:
/// n_examples=432 n_correct=419 per_class_correct=214,205 accuracy=96.99 ties=0 confusion=214,2;11,205
std::string render_machine(const Report& report);

}  // namespace dbnb
