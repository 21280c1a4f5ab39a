#pragma once

#include "dbnb/model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dbnb {

/// Unnormalised class scores prod_m tagged_likelihood(k, m) * W[k][m][bin_m], kept as logs.
struct ClassScores {
    std::vector<double> log_scores;

    /// exp(log - max log): the largest score is 1.
    std::vector<double> relative() const;
    /// exp(log): the literal products. May underflow to 0 for many attributes.
    std::vector<double> absolute() const;
    /// Highest score, lowest index on exact ties.
    std::size_t winner() const;
    bool tied() const;
};

struct Posterior {
    std::vector<double> probabilities;
    std::size_t winner = 0;
    bool tie = false;
};

/// log(tagged_likelihood(k, m)) for every class and attribute, k-major (K x M).
/// Depends only on the frozen density, so training caches it per example.
std::vector<double> gated_log_likelihoods(const Model& model, std::span<const double> values,
                                          std::span<const std::size_t> bins);

/// Adds log weights to cached gated log-likelihoods.
ClassScores scores_from_logs(const Model& model, std::span<const double> gated_logs,
                             std::span<const std::size_t> bins);

ClassScores class_scores(const Model& model, std::span<const double> values);
Posterior normalize(const ClassScores& scores);
Posterior posterior(const Model& model, std::span<const double> values);
const std::string& predict(const Model& model, std::span<const double> values);

}  // namespace dbnb
