#include "dbnb/inference.hpp"

#include "dbnb/error.hpp"

#include <algorithm>
#include <cmath>

namespace dbnb {

std::vector<double> ClassScores::relative() const {
    const double top = *std::max_element(log_scores.begin(), log_scores.end());
    std::vector<double> out(log_scores.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(log_scores[k] - top);
    return out;
}

std::vector<double> ClassScores::absolute() const {
    std::vector<double> out(log_scores.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(log_scores[k]);
    return out;
}

std::size_t ClassScores::winner() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < log_scores.size(); ++k)
        if (log_scores[k] > log_scores[best]) best = k;
    return best;
}

bool ClassScores::tied() const {
    const auto best = winner();
    for (std::size_t k = 0; k < log_scores.size(); ++k)
        if (k != best && log_scores[k] == log_scores[best]) return true;
    return false;
}

std::vector<double> gated_log_likelihoods(const Model& model, std::span<const double> values,
                                          std::span<const std::size_t> bins) {
    const auto& d = model.density;
    const std::size_t k_count = d.schema.class_count();
    const std::size_t m_count = d.schema.attribute_count();
    std::vector<double> out(k_count * m_count);
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t m = 0; m < m_count; ++m)
            out[k * m_count + m] = std::log(tagged_likelihood(d, values, bins, k, m, model.gate));
    return out;
}

ClassScores scores_from_logs(const Model& model, std::span<const double> gated_logs,
                             std::span<const std::size_t> bins) {
    const std::size_t k_count = model.schema().class_count();
    const std::size_t m_count = model.schema().attribute_count();
    ClassScores s;
    s.log_scores.assign(k_count, 0.0);
    for (std::size_t k = 0; k < k_count; ++k) {
        double acc = 0.0;
        for (std::size_t m = 0; m < m_count; ++m)
            acc += gated_logs[k * m_count + m] + std::log(model.weights.weight(k, m, bins[m]));
        s.log_scores[k] = acc;
    }
    return s;
}

ClassScores class_scores(const Model& model, std::span<const double> values) {
    if (!model.fitted()) throw StateError("model is not trained");
    if (values.size() != model.schema().attribute_count())
        throw ArgumentError("example has " + std::to_string(values.size()) + " attribute values, model expects " +
                            std::to_string(model.schema().attribute_count()));
    const auto bins = model.density.bin_indices(values);
    return scores_from_logs(model, gated_log_likelihoods(model, values, bins), bins);
}

Posterior normalize(const ClassScores& scores) {
    Posterior p;
    p.probabilities = scores.relative();
    double total = 0.0;
    for (double v : p.probabilities) total += v;
    for (double& v : p.probabilities) v /= total;
    p.winner = scores.winner();
    p.tie = scores.tied();
    return p;
}

Posterior posterior(const Model& model, std::span<const double> values) {
    return normalize(class_scores(model, values));
}

const std::string& predict(const Model& model, std::span<const double> values) {
    return model.schema().classes[posterior(model, values).winner];
}

}  // namespace dbnb
